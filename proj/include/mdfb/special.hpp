#pragma once

namespace mdfb {

inline constexpr double kLog2E = 1.4426950408889634074;
inline constexpr double kPi = 3.14159265358979323846;

// Binary entropy in bits, with the 0*log(0) = 0 convention at both ends.
double binary_entropy(double p);

double normal_pdf(double x);
double normal_cdf(double x);
// Upper tail P(Z > x) for standard normal Z.
double normal_sf(double x);

// Scaled complementary error function exp(x^2) erfc(x).
double erfcx(double x);

// E[X | X > xi] for X ~ N(0, sigma^2). Stable for thresholds deep in the tail.
double truncated_upper_mean(double sigma, double xi);

double to_db(double x);

inline double clamp_nonneg(double x) { return x > 0.0 ? x : 0.0; }

}  // namespace mdfb

#pragma once

#include <string>

namespace mdfb {

// All rates are in bits.
struct RatePoint {
    double rate_bits = 0.0;
    double distortion = 0.0;
    int K = 1;
    int round = 0;
    std::string label;
};

struct SlopeCheck {
    double measured = 0.0;
    double expected = 0.0;
};

// Rate-distortion function of a Gaussian source, clamped at zero.
double gaussian_rdf(double sigma2, double D);
// Distortion-rate function of a Gaussian source.
double gaussian_drf(double sigma2, double R);

// Unconditional signal-to-distortion ratio sigma2/D - 1.
double usdr(double sigma2, double D);

// Rate loss of splitting a budget of K*R bits into K independent descriptions
// of R bits each, in the worst case over sources; tends to 1 as R -> 0.
double worst_case_efficiency(double R, int K);

// Rate-distortion function of the one-sided exponential source under the
// one-sided error measure, and its inverse.
double exp_rdf(double lambda, double D);
double exp_drf(double lambda, double R);

// Shannon lower bound for a generalized Gaussian source with scale alpha and
// shape p under the q-th power error measure, clamped at zero.
double gg_slb(double alpha, double D, double p, double q);

double efficiency(double reference_rate, double sum_rate);

}  // namespace mdfb

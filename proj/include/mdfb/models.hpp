#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "mdfb/parallel.hpp"

namespace mdfb {

enum class SourceKind { Gaussian, OneSidedExp, GeneralizedGaussian, GaussianMixture };

struct SourceModel {
    SourceKind kind = SourceKind::Gaussian;
    double sigma2 = 1.0;                      // Gaussian
    double lambda = 1.0;                      // OneSidedExp
    double alpha = 1.0, p = 2.0;              // GeneralizedGaussian
    double p0 = 0.5, var0 = 1.0, p1 = 0.5, var1 = 1.0;  // GaussianMixture

    static SourceModel gaussian(double sigma2);
    static SourceModel one_sided_exp(double lambda);
    static SourceModel generalized_gaussian(double alpha, double p);
    static SourceModel gaussian_mixture(double p0, double var0, double p1, double var1);

    double mean() const;
    double variance() const;
};

enum class DistortionKind { MSE, OneSided, PthPower, Absolute };

struct DistortionMeasure {
    DistortionKind kind = DistortionKind::MSE;
    double p = 2.0;

    static DistortionMeasure mse() { return {DistortionKind::MSE, 2.0}; }
    static DistortionMeasure one_sided() { return {DistortionKind::OneSided, 1.0}; }
    static DistortionMeasure pth_power(double p);
    static DistortionMeasure absolute() { return {DistortionKind::Absolute, 1.0}; }
};

// One-sided distortion is infinite whenever the reconstruction overshoots the
// source; the sentinel propagates through averages instead of throwing, so a
// caller can count violations.
inline constexpr double kDistortionViolation = std::numeric_limits<double>::infinity();

double distortion(const DistortionMeasure& m, double x, double y);

struct DistortionStats {
    double mean = 0.0;
    std::size_t violations = 0;
};
DistortionStats average_distortion(const DistortionMeasure& m,
                                   const std::vector<double>& x,
                                   const std::vector<double>& y);

std::vector<double> sample(const SourceModel& model, std::size_t n, std::uint64_t seed,
                           ExecMode mode = ExecMode::Parallel);

// Mixture sampling with the component indicator exposed.
std::vector<double> sample_mixture(const SourceModel& model, std::size_t n,
                                   std::uint64_t seed, std::vector<std::uint8_t>& component,
                                   ExecMode mode = ExecMode::Parallel);

// Density of the generalized Gaussian with scale alpha and shape p.
double gg_density(double x, double alpha, double p);

// Normalizing constant c(p) with density c(p)/alpha * exp(-|x/alpha|^p / 2).
double gg_norm_const(double p);

// Inverse CDF of the generalized Gaussian, u in (0,1).
double gg_quantile(double alpha, double p, double u);

}  // namespace mdfb

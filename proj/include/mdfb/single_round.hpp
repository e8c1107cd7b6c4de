#pragma once

#include <cstdint>
#include <vector>

#include "mdfb/parallel.hpp"
#include "mdfb/rdf.hpp"

namespace mdfb {

// One coding round for the one-sided exponential source: K descriptions
// Y_i = max(0, X - E_i) with E_i ~ Exp(delta), delta = 1/D - lambda.
struct ExpChannelSpec {
    double lambda = 1.0;
    double D = 0.5;
    int K = 1;

    double delta() const { return 1.0 / D - lambda; }
    static ExpChannelSpec make(double lambda, double D, int K);
};

// One coding round for the generalized Gaussian source under the p-th power
// error measure; each description is zero with probability w(x) and otherwise
// centers a fresh generalized Gaussian of scale D at the source value.
struct GGChannelSpec {
    double alpha = 1.0;
    double p = 1.0;
    double D = 0.5;
    int K = 1;

    static GGChannelSpec make(double alpha, double p, double D, int K);
};

// Decoder rule: keep the largest received description.
double selectmax_estimate(const std::vector<double>& ys);

// Expected one-sided error of the select-max decoder, and the parameter of
// the residual's exponential law; the two are exact reciprocals.
double selectmax_distortion(const ExpChannelSpec& spec);
double selectmax_error_param(const ExpChannelSpec& spec);

// Distortion after combining K descriptions, parameterized by the per-round
// erasure exponent eps with D = (1 - eps)/lambda.
double exp_odrf(double lambda, double eps, int K);

struct ExpRoundResult {
    double dbar = 0.0;        // empirical mean of X - max_i Y_i
    double lambda_fit = 0.0;  // exponential parameter fitted to the residual
    double corr = 0.0;        // correlation between residual and estimate
    std::size_t trials = 0;
    std::size_t chunk = 0;    // chunk size used for the reduction
};

ExpRoundResult simulate_exp_round(const ExpChannelSpec& spec, std::size_t trials,
                                  std::uint64_t seed, ExecMode mode = ExecMode::Parallel,
                                  std::vector<double>* residual_out = nullptr);

// Kolmogorov-Smirnov statistic of samples against Exp(lambda).
double ks_statistic_exponential(std::vector<double> samples, double lambda);

// P(Y_i = 0 | X = x) for one description.
double gg_zero_prob_given_x(const GGChannelSpec& spec, double x);

// P(all K descriptions are zero).
double gg_prob_all_zero(const GGChannelSpec& spec);

// Expected p-th power error of the select-nonzero decoder. Exact for a single
// description; for K > 1 the all-zero term factorizes the per-description
// zero events, which slightly overestimates the true error.
double gg_joint_distortion(const GGChannelSpec& spec);

// Ratio of the joint distortion to the p-th power law D^K alpha^(1-K) scaled
// by the source's conditional error; equals 1 at D = alpha.
double gg_distortion_redundancy(const GGChannelSpec& spec);

// Finite-difference slope of the operational sum-rate-vs-distortion curve at
// zero rate (D near alpha) against the closed-form limit -1/(2 alpha^p), in
// nats per unit distortion.
SlopeCheck gg_slope_check(double alpha, double p, int K);

}  // namespace mdfb

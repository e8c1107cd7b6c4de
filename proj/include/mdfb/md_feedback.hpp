#pragma once

#include <cstdint>
#include <vector>

#include "mdfb/parallel.hpp"

namespace mdfb {

// Symmetric two-receiver rate for K Gaussian descriptions: per-description
// rate achieving single-description distortion D and all-K distortion D_all.
double md_symmetric_rate(double sigma2, double D, double D_all, int K);

// D_all at which the per-description rate equals the marginal optimum
// (mutually independent description noises).
double md_independent_point(double sigma2, double D, int K);

struct MdEfficiency {
    double eta_single = 0.0;  // ideal marginal rate over actual per-description rate
    double eta_all = 0.0;     // ideal joint rate over actual sum rate
};

// Efficiency pair for a marginal distortion pinned near the maximum,
// D = sigma2 - eps.
MdEfficiency md_efficiency(double sigma2, double eps, double D_all, int K);

// Combined distortion of K statistically identical additive-noise
// descriptions, and the noise variance needed for a target combination.
double uncond_combined_distortion(double sigma2, double sigmaN2, int K);
double uncond_noise_for_combined(double sigma2, double D_all, int K);

// Minimum sum rate over the free marginal-distortion knob.
double md_min_sum_rate(double sigma2, double D_all, int K);

struct UncondVsMd {
    double D_all = 0.0;
    double eta_uncond = 0.0;
    double eta_md = 0.0;
};
UncondVsMd uncond_vs_md(double sigma2, double D_all, int K);

enum class TraceKind { IidBernoulli, Explicit };

struct ErasureTrace {
    TraceKind kind = TraceKind::IidBernoulli;
    double p_loss = 0.0;
    std::uint64_t seed = 0;
    std::vector<int> received;  // per-round counts, Explicit only

    static ErasureTrace iid_bernoulli(double p_loss, std::uint64_t seed);
    static ErasureTrace explicit_counts(std::vector<int> received);
};

struct FeedbackRound {
    int received = 0;
    double distortion = 0.0;
    double cum_rate = 0.0;  // counts all transmitted descriptions
};

struct FeedbackRunRecord {
    std::vector<FeedbackRound> rounds;
    double final_distortion = 0.0;
    double total_rate = 0.0;
    int K = 0;
};

// Analytic recursion: each round transmits K descriptions of rate r; the k
// received ones shrink the distortion by 1 + k(2^{2r} - 1). Rounds with no
// receptions still consume their transmitted rate.
FeedbackRunRecord run_feedback_simulation(double sigma2, int K, long long M, double r,
                                          const ErasureTrace& trace);

struct FeedbackSampleCheck {
    double analytic = 0.0;
    double empirical = 0.0;
};

// Sample-level validation of the recursion: descriptions are realized as
// additive Gaussian measurements of the running error and combined by the
// exact posterior mean.
std::vector<FeedbackSampleCheck> feedback_sample_validation(
    double sigma2, int K, long long M, double r, const ErasureTrace& trace,
    std::size_t n, std::uint64_t seed, ExecMode mode = ExecMode::Parallel);

}  // namespace mdfb

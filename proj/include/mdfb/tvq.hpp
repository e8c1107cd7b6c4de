#pragma once

#include <cstdint>
#include <vector>

#include "mdfb/parallel.hpp"
#include "mdfb/rdf.hpp"

namespace mdfb {

enum class TvqSign { Upper, Lower };

// One description: a single bit per vector marking whether the chosen axis
// exceeds the threshold (Upper: x > xi, Lower: x < -xi); a set bit decodes to
// the conditional mean on that axis.
struct TvqCodebook {
    int n = 1;
    double xi = 0.0;
    int axis = 0;
    double zhat = 0.0;  // signed reconstruction value
    double sigma = 1.0;
    TvqSign sign = TvqSign::Upper;
};

TvqCodebook make_tvq_codebook(int n, double xi, int axis, double sigma, TvqSign sign);

// Conditional mean E[X | X > xi] for X ~ N(0, sigma^2).
double tvq_centroid(double sigma, double xi);

// Entropy of one description in bits, and per dimension of the block.
double tvq_axis_rate(double sigma, double xi);
double tvq_rate(double sigma, double xi, int n);

// Squared error on a coded axis, and the block total when `received` of the
// n per-axis descriptions arrive; the total is affine in the received count.
double tvq_axis_distortion(double sigma, double xi);
double tvq_distortion(double sigma, double xi, int n, int received);

// Rate-distortion slope of the threshold family against the zero-rate limit
// -log2(e) / (2 sigma^2), in bits per unit of squared error.
SlopeCheck tvq_slope_check(double sigma, double xi);

// data is an n-by-L matrix, column-major; one bit vector of length L per
// codebook. Codebooks must use distinct axes.
std::vector<std::vector<std::uint8_t>> tvq_encode(const std::vector<double>& data, int n,
                                                  const std::vector<TvqCodebook>& books);

// Sum of the received codewords; codeword supports are disjoint by the
// distinct-axis requirement.
std::vector<double> tvq_reconstruct(const std::vector<std::vector<std::uint8_t>>& bits,
                                    const std::vector<TvqCodebook>& books, int n,
                                    std::size_t L);

struct TvqRound {
    double threshold = 0.0;
    double rate = 0.0;      // bits per dimension this round
    double cum_rate = 0.0;
    double distortion = 0.0;
    double eta = 0.0;       // ideal rate for the reached distortion over cum_rate
};

struct TvqMultiRound {
    std::vector<TvqRound> rounds;
    double cum_rate = 0.0;
    double final_distortion = 0.0;
    double rate_loss = 0.0;
    double avg_eta = 0.0;
};

// Gaussian staircase with a fixed absolute threshold: each round codes the
// residual, modeled as a fresh Gaussian at the current distortion.
TvqMultiRound tvq_multiround_gaussian(double sigma2, double xi, int M);

// Empirical Laplacian staircase under absolute error: per-round threshold
// magnitudes, odd rounds capture above +xi, even rounds below -xi; centroids
// are trained on an independent chain of the same size.
TvqMultiRound tvq_multiround_laplacian(const std::vector<double>& thresholds, int d,
                                       std::size_t L, std::uint64_t seed,
                                       ExecMode mode = ExecMode::Parallel);

}  // namespace mdfb

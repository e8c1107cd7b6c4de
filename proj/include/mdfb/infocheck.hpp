#pragma once

#include <cstdint>
#include <vector>

#include "mdfb/rdf.hpp"

namespace mdfb {

// Scalar source laws used by the additive-noise identities. This is wider
// than SourceModel on purpose: the checks need discrete and bounded laws
// that the sampling pipeline never produces.
struct ChannelSource {
    enum class Kind { Gaussian, Binary, Uniform, Laplacian, Mixture };
    Kind kind = Kind::Gaussian;
    double sigma2 = 1.0;      // Gaussian variance
    double half_width = 0.0;  // Uniform support [-a, a]
    double scale_b = 0.0;     // Laplacian scale
    double p0 = 0.0, v0 = 0.0, p1 = 0.0, v1 = 0.0;  // mixture weights and variances

    static ChannelSource gaussian(double sigma2);
    static ChannelSource binary();
    static ChannelSource uniform(double half_width);
    static ChannelSource laplacian(double scale_b);
    static ChannelSource mixture(double p0, double v0, double p1, double v1);

    double variance() const;
    // Differential entropy in bits; defined for Gaussian, Uniform, Laplacian.
    double entropy_bits() const;
};

// Y_i = sqrt(gamma) X + N_i with unit-variance Gaussian noise per branch.
struct AwgnChannel {
    ChannelSource source;
    int K = 1;
    double gamma = 0.0;
    static AwgnChannel make(ChannelSource source, int K, double gamma);
};

// Output density, posterior mean, mutual information (bits) and MMSE of the
// single-branch channel. Closed forms where they exist, quadrature otherwise.
double awgn_output_density(const ChannelSource& s, double gamma, double y);
double awgn_posterior_mean(const ChannelSource& s, double gamma, double y);
double awgn_mi(const ChannelSource& s, double gamma);
double awgn_mmse(const ChannelSource& s, double gamma);

// K-branch mutual information evaluated without the sufficient-statistic
// shortcut (tensor quadrature). Gaussian and Binary only, K <= 4.
double awgn_mi_direct(const ChannelSource& s, int K, double gamma);

// | I(X; Y_0..Y_{K-1}) - I(X; X + N/sqrt(K)) |, the first side computed
// directly, the second through the reduced single-branch channel.
double oversampling_identity(const AwgnChannel& ch);

struct ImmseRow {
    double gamma;
    double derivative_fd;
    double mmse_side;
    double rel_err;
};
// Central-difference dI/dgamma against (log2 e / 2) K mmse(K gamma).
std::vector<ImmseRow> immse_check(const ChannelSource& s, int K,
                                  const std::vector<double>& gammas,
                                  double step_scale = 1e-3);

// Finite joint with Y and Z conditionally independent given X.
struct DiscreteJoint {
    std::vector<double> px;
    std::vector<std::vector<double>> py_given_x;
    std::vector<std::vector<double>> pz_given_x;
    static DiscreteJoint make(std::vector<double> px,
                              std::vector<std::vector<double>> py_given_x,
                              std::vector<std::vector<double>> pz_given_x);
};

enum class MiPair { XY, XZ, YZ, X_YZ };
double mi_discrete(const DiscreteJoint& joint, MiPair pair);

// Perturbation family P(y|x) = P_Y(y) (1 + eps psi(y|x)) with psi doubly
// centered, plus an independent second channel to Z for cascade decay.
struct VncFamily {
    std::vector<double> px, py, pz;
    std::vector<std::vector<double>> psi_y;  // nx by ny
    std::vector<std::vector<double>> psi_z;  // nx by nz
};
VncFamily make_vnc_family(int nx, int ny, int nz, std::uint64_t seed);
DiscreteJoint vnc_joint(const VncFamily& fam, double eps);

struct VncReport {
    double eps;
    double ixy;
    double iyz;
    double ixyz;
    double ixy_over_eps2;
    double predicted;  // limit of I(X;Y)/eps^2
};
std::vector<VncReport> vnc_scaling(const VncFamily& fam, const std::vector<double>& eps_grid);

// Gaussian input, two binary channels whose active symbol has probability
// eps(1 + a tanh(x/w)); w differs per channel so Y and Z are not copies.
struct Eps1Report {
    double eps;
    double ixy;
    double ixz;
    double iyz;
    double ixyz;
    double ratio;  // I(X;Y,Z) / (I(X;Y) + I(X;Z)), 1 at eps = 0
};
Eps1Report eps1_ratio(double eps);

struct CondImmse {
    double exact;
    double expansion;
    double residual;
};
// I(X;Y|Z) for jointly Gaussian (X,Z) with correlation rho against the
// two-term small-gamma expansion in var(X|Z).
CondImmse conditional_immse_gaussian(double rho, double sigma2, double gamma);

struct LinearityCheck {
    double mean_of_square;  // E[ var(X|Z)^2 ]
    double square_of_mean;  // ( E[ var(X|Z) ] )^2
    bool linear;
};
LinearityCheck mmse_linearity_gaussian(double rho, double sigma2);
LinearityCheck mmse_linearity_mixture(double p0, double v0, double p1, double v1);
LinearityCheck mmse_linearity_constant(double sigma2);

struct AdditiveRdfPoint {
    double theta;  // additive noise variance
    double rate_bits;
    double distortion;
};
AdditiveRdfPoint additive_rdf(const ChannelSource& s, double theta);
// Secant slope of the parametric (rate, distortion) curve at large theta
// against the universal limit -log2(e) / (2 var).
SlopeCheck additive_rdf_slope(const ChannelSource& s);

// Rate-distortion function of the two-component mixture conditioned on the
// component indicator; the mixture has P1 = 1/(2 sigma1^2) and unit variance.
double mixture_conditional_rdf(double sigma1_sq, double D);

struct MixtureRateLoss {
    double sigma1_sq;
    double sigma0_sq;
    double p1;
    double gamma;
    double distortion;
    double rate_additive;
    double rate_conditional;
    double ratio;
    SlopeCheck cond_slope;
};
MixtureRateLoss mixture_rate_loss(double sigma1_sq);

struct WorstCaseBound {
    double gauss_excess;  // schedule sum rate minus the log distortion drop
    double slack_d1;      // h(X + N_{D1}) - h(X)
    double slack_d2;
    double margin;        // excess-rate slack; identically 0 for Gaussian
};
WorstCaseBound gaussian_worst_bound(const ChannelSource& s, double D1, double D2, int K, int M);

}  // namespace mdfb

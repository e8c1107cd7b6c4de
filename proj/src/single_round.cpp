#include "mdfb/single_round.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mdfb {

ExpChannelSpec ExpChannelSpec::make(double lambda, double D, int K) {
    if (lambda <= 0.0)
        throw std::invalid_argument("single_round.exp_channel: lambda must be positive");
    if (D <= 0.0 || D > 1.0 / lambda)
        throw std::invalid_argument("single_round.exp_channel: D must lie in (0, 1/lambda]");
    if (K < 1) throw std::invalid_argument("single_round.exp_channel: K must be at least 1");
    return {lambda, D, K};
}

GGChannelSpec GGChannelSpec::make(double alpha, double p, double D, int K) {
    if (alpha <= 0.0 || p <= 0.0)
        throw std::invalid_argument("single_round.gg_channel: alpha and p must be positive");
    if (D <= 0.0 || D > alpha)
        throw std::invalid_argument("single_round.gg_channel: D must lie in (0, alpha]");
    if (K < 1) throw std::invalid_argument("single_round.gg_channel: K must be at least 1");
    return {alpha, p, D, K};
}

double selectmax_estimate(const std::vector<double>& ys) {
    if (ys.empty())
        throw std::invalid_argument("single_round.selectmax_estimate: no descriptions");
    return *std::max_element(ys.begin(), ys.end());
}

double selectmax_distortion(const ExpChannelSpec& spec) {
    return 1.0 / (spec.lambda + spec.K * spec.delta());
}

double selectmax_error_param(const ExpChannelSpec& spec) {
    return spec.lambda + spec.K * spec.delta();
}

double exp_odrf(double lambda, double eps, int K) {
    if (lambda <= 0.0)
        throw std::invalid_argument("single_round.exp_odrf: lambda must be positive");
    if (eps < 0.0 || eps >= 1.0)
        throw std::invalid_argument("single_round.exp_odrf: eps must lie in [0, 1)");
    if (K < 1) throw std::invalid_argument("single_round.exp_odrf: K must be at least 1");
    return (1.0 - eps) / (lambda * (1.0 + (K - 1) * eps));
}

namespace {

struct ExpAcc {
    double sum_z = 0.0, sum_z2 = 0.0;
    double sum_y = 0.0, sum_y2 = 0.0;
    double sum_zy = 0.0;
    bool violation = false;
};

}  // namespace

ExpRoundResult simulate_exp_round(const ExpChannelSpec& spec, std::size_t trials,
                                  std::uint64_t seed, ExecMode mode,
                                  std::vector<double>* residual_out) {
    if (trials < 10000)
        throw std::invalid_argument("single_round.simulate_exp_round: needs at least 1e4 trials");
    const double lambda = spec.lambda;
    const double delta = spec.delta();
    const int K = spec.K;
    if (residual_out) residual_out->assign(trials, 0.0);

    ExpAcc total = chunked_reduce<ExpAcc>(
        trials, mode, ExpAcc{},
        [&](std::uint64_t chunk, std::size_t b, std::size_t e) {
            std::mt19937_64 gen = substream(seed, chunk);
            ExpAcc acc;
            for (std::size_t i = b; i < e; ++i) {
                double x = -std::log(uniform_open(gen)) / lambda;
                double yhat = 0.0;
                for (int k = 0; k < K; ++k) {
                    double err = -std::log(uniform_open(gen)) / delta;
                    double y = x - err;
                    if (y < 0.0) y = 0.0;
                    if (y > x) acc.violation = true;
                    if (y > yhat) yhat = y;
                }
                double z = x - yhat;
                acc.sum_z += z;
                acc.sum_z2 += z * z;
                acc.sum_y += yhat;
                acc.sum_y2 += yhat * yhat;
                acc.sum_zy += z * yhat;
                if (residual_out) (*residual_out)[i] = z;
            }
            return acc;
        },
        [](ExpAcc a, const ExpAcc& b) {
            a.sum_z += b.sum_z;
            a.sum_z2 += b.sum_z2;
            a.sum_y += b.sum_y;
            a.sum_y2 += b.sum_y2;
            a.sum_zy += b.sum_zy;
            a.violation = a.violation || b.violation;
            return a;
        });

    if (total.violation)
        throw std::runtime_error("single_round.simulate_exp_round: description exceeded the source");

    const double n = double(trials);
    ExpRoundResult res;
    res.trials = trials;
    res.chunk = kChunk;
    res.dbar = total.sum_z / n;
    res.lambda_fit = n / total.sum_z;
    double var_z = total.sum_z2 / n - res.dbar * res.dbar;
    double mean_y = total.sum_y / n;
    double var_y = total.sum_y2 / n - mean_y * mean_y;
    double cov = total.sum_zy / n - res.dbar * mean_y;
    res.corr = (var_z > 0.0 && var_y > 0.0) ? cov / std::sqrt(var_z * var_y) : 0.0;
    return res;
}

double ks_statistic_exponential(std::vector<double> samples, double lambda) {
    if (samples.empty())
        throw std::invalid_argument("single_round.ks_statistic_exponential: empty sample");
    std::sort(samples.begin(), samples.end());
    const double n = double(samples.size());
    double dmax = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        double F = 1.0 - std::exp(-lambda * samples[i]);
        double lo = std::fabs(F - double(i) / n);
        double hi = std::fabs(double(i + 1) / n - F);
        dmax = std::max(dmax, std::max(lo, hi));
    }
    return dmax;
}

double gg_zero_prob_given_x(const GGChannelSpec& spec, double x) {
    double r = std::pow(spec.D / spec.alpha, spec.p);
    double rate = std::pow(spec.D, -spec.p) - std::pow(spec.alpha, -spec.p);
    return r * std::exp(-0.5 * std::pow(std::fabs(x), spec.p) * rate);
}

double gg_prob_all_zero(const GGChannelSpec& spec) {
    const double a = spec.alpha, p = spec.p, D = spec.D;
    const int K = spec.K;
    double ap = std::pow(a, p), Dp = std::pow(D, p);
    double denom = Dp + K * ap - K * Dp;
    return std::pow(D / a, p * K) * D * std::pow(denom, -1.0 / p);
}

double gg_joint_distortion(const GGChannelSpec& spec) {
    const double a = spec.alpha, p = spec.p, D = spec.D;
    const int K = spec.K;
    double ap = std::pow(a, p), Dp = std::pow(D, p);
    double denom = Dp + K * ap - K * Dp;
    double p0 = gg_prob_all_zero(spec);
    return p0 * (2.0 / p) * ap * Dp / denom + (1.0 - p0) * (2.0 / p) * Dp;
}

double gg_distortion_redundancy(const GGChannelSpec& spec) {
    const double a = spec.alpha, p = spec.p, D = spec.D;
    const int K = spec.K;
    double law = (2.0 / p) * std::pow(std::pow(D, double(K)) * std::pow(a, 1.0 - K), p);
    return gg_joint_distortion(spec) / law;
}

SlopeCheck gg_slope_check(double alpha, double p, int K) {
    if (alpha <= 0.0 || p <= 0.0 || K < 1)
        throw std::invalid_argument("single_round.gg_slope_check: bad parameters");
    auto point = [&](double D) {
        GGChannelSpec spec = GGChannelSpec::make(alpha, p, D, K);
        return std::pair{double(K) * std::log(alpha / D), gg_joint_distortion(spec)};
    };
    const double D0 = alpha * (1.0 - 1e-4);
    auto [r_lo, d_lo] = point(D0 * (1.0 - 1e-6));
    auto [r_hi, d_hi] = point(D0 * (1.0 + 1e-6));
    SlopeCheck check;
    check.measured = (r_lo - r_hi) / (d_lo - d_hi);
    check.expected = -1.0 / (2.0 * std::pow(alpha, p));
    return check;
}

}  // namespace mdfb

#include "mdfb/models.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <stdexcept>

namespace mdfb {

SourceModel SourceModel::gaussian(double sigma2) {
    if (sigma2 <= 0.0)
        throw std::invalid_argument("models.gaussian: variance must be positive");
    SourceModel m;
    m.kind = SourceKind::Gaussian;
    m.sigma2 = sigma2;
    return m;
}

SourceModel SourceModel::one_sided_exp(double lambda) {
    if (lambda <= 0.0)
        throw std::invalid_argument("models.one_sided_exp: lambda must be positive");
    SourceModel m;
    m.kind = SourceKind::OneSidedExp;
    m.lambda = lambda;
    return m;
}

SourceModel SourceModel::generalized_gaussian(double alpha, double p) {
    if (alpha <= 0.0 || p <= 0.0)
        throw std::invalid_argument("models.generalized_gaussian: alpha and p must be positive");
    SourceModel m;
    m.kind = SourceKind::GeneralizedGaussian;
    m.alpha = alpha;
    m.p = p;
    return m;
}

SourceModel SourceModel::gaussian_mixture(double p0, double var0, double p1, double var1) {
    if (p0 < 0.0 || p1 < 0.0 || std::fabs(p0 + p1 - 1.0) > 1e-12)
        throw std::invalid_argument("models.gaussian_mixture: weights must be a distribution");
    if (var0 <= 0.0 || var1 <= 0.0)
        throw std::invalid_argument("models.gaussian_mixture: variances must be positive");
    SourceModel m;
    m.kind = SourceKind::GaussianMixture;
    m.p0 = p0;
    m.var0 = var0;
    m.p1 = p1;
    m.var1 = var1;
    return m;
}

double SourceModel::mean() const {
    switch (kind) {
        case SourceKind::OneSidedExp: return 1.0 / lambda;
        default: return 0.0;
    }
}

double SourceModel::variance() const {
    switch (kind) {
        case SourceKind::Gaussian: return sigma2;
        case SourceKind::OneSidedExp: return 1.0 / (lambda * lambda);
        case SourceKind::GeneralizedGaussian: {
            double g1 = std::tgamma(1.0 / p);
            double g3 = std::tgamma(3.0 / p);
            return std::pow(2.0, 2.0 / p) * alpha * alpha * g3 / g1;
        }
        case SourceKind::GaussianMixture: return p0 * var0 + p1 * var1;
    }
    return 0.0;
}

DistortionMeasure DistortionMeasure::pth_power(double p) {
    if (p <= 0.0)
        throw std::invalid_argument("models.pth_power: exponent must be positive");
    return {DistortionKind::PthPower, p};
}

double distortion(const DistortionMeasure& m, double x, double y) {
    switch (m.kind) {
        case DistortionKind::MSE: {
            double d = x - y;
            return d * d;
        }
        case DistortionKind::OneSided:
            return x >= y ? x - y : kDistortionViolation;
        case DistortionKind::PthPower:
            return std::pow(std::fabs(x - y), m.p);
        case DistortionKind::Absolute:
            return std::fabs(x - y);
    }
    return 0.0;
}

DistortionStats average_distortion(const DistortionMeasure& m,
                                   const std::vector<double>& x,
                                   const std::vector<double>& y) {
    if (x.size() != y.size() || x.empty())
        throw std::invalid_argument("models.average_distortion: size mismatch or empty input");
    double sum = 0.0;
    std::size_t violations = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double d = distortion(m, x[i], y[i]);
        if (d == kDistortionViolation) {
            ++violations;
        } else {
            sum += d;
        }
    }
    DistortionStats stats;
    stats.violations = violations;
    stats.mean = violations > 0 ? kDistortionViolation : sum / double(x.size());
    return stats;
}

double gg_norm_const(double p) {
    return p / (std::pow(2.0, (p + 1.0) / p) * std::tgamma(1.0 / p));
}

double gg_density(double x, double alpha, double p) {
    return gg_norm_const(p) / alpha * std::exp(-0.5 * std::pow(std::fabs(x / alpha), p));
}

double gg_quantile(double alpha, double p, double u) {
    if (u <= 0.0 || u >= 1.0)
        throw std::invalid_argument("models.gg_quantile: u must lie in (0,1)");
    double s = 2.0 * u - 1.0;
    if (s == 0.0) return 0.0;
    double g = boost::math::gamma_p_inv(1.0 / p, std::fabs(s));
    double x = alpha * std::pow(2.0 * g, 1.0 / p);
    return s > 0.0 ? x : -x;
}

namespace {

double draw_one(const SourceModel& model, std::mt19937_64& gen) {
    switch (model.kind) {
        case SourceKind::Gaussian:
            return std::sqrt(model.sigma2) * box_muller(gen);
        case SourceKind::OneSidedExp:
            return -std::log(uniform_open(gen)) / model.lambda;
        case SourceKind::GeneralizedGaussian:
            return gg_quantile(model.alpha, model.p, uniform_open(gen));
        case SourceKind::GaussianMixture: {
            double u = uniform01(gen);
            double z = box_muller(gen);
            return u < model.p0 ? std::sqrt(model.var0) * z : std::sqrt(model.var1) * z;
        }
    }
    return 0.0;
}

}  // namespace

std::vector<double> sample(const SourceModel& model, std::size_t n, std::uint64_t seed,
                           ExecMode mode) {
    if (n == 0) throw std::invalid_argument("models.sample: n must be positive");
    std::vector<double> out(n);
    chunked_for(n, mode, [&](std::uint64_t chunk, std::size_t b, std::size_t e) {
        std::mt19937_64 gen = substream(seed, chunk);
        for (std::size_t i = b; i < e; ++i) out[i] = draw_one(model, gen);
    });
    return out;
}

std::vector<double> sample_mixture(const SourceModel& model, std::size_t n,
                                   std::uint64_t seed, std::vector<std::uint8_t>& component,
                                   ExecMode mode) {
    if (model.kind != SourceKind::GaussianMixture)
        throw std::invalid_argument("models.sample_mixture: model is not a mixture");
    if (n == 0) throw std::invalid_argument("models.sample_mixture: n must be positive");
    std::vector<double> out(n);
    component.assign(n, 0);
    chunked_for(n, mode, [&](std::uint64_t chunk, std::size_t b, std::size_t e) {
        std::mt19937_64 gen = substream(seed, chunk);
        for (std::size_t i = b; i < e; ++i) {
            double u = uniform01(gen);
            double z = box_muller(gen);
            if (u < model.p0) {
                component[i] = 0;
                out[i] = std::sqrt(model.var0) * z;
            } else {
                component[i] = 1;
                out[i] = std::sqrt(model.var1) * z;
            }
        }
    });
    return out;
}

}  // namespace mdfb

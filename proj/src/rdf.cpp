#include "mdfb/rdf.hpp"

#include <cmath>
#include <stdexcept>

#include "mdfb/models.hpp"
#include "mdfb/special.hpp"

namespace mdfb {

double gaussian_rdf(double sigma2, double D) {
    if (sigma2 <= 0.0 || D <= 0.0)
        throw std::invalid_argument("rdf.gaussian_rdf: sigma2 and D must be positive");
    return clamp_nonneg(0.5 * std::log2(sigma2 / D));
}

double gaussian_drf(double sigma2, double R) {
    if (sigma2 <= 0.0 || R < 0.0)
        throw std::invalid_argument("rdf.gaussian_drf: sigma2 must be positive and R nonnegative");
    return sigma2 * std::exp2(-2.0 * R);
}

double usdr(double sigma2, double D) {
    if (sigma2 <= 0.0 || D <= 0.0)
        throw std::invalid_argument("rdf.usdr: sigma2 and D must be positive");
    if (D > sigma2)
        throw std::invalid_argument("rdf.usdr: D exceeds the source variance");
    return sigma2 / D - 1.0;
}

double worst_case_efficiency(double R, int K) {
    if (K < 1) throw std::invalid_argument("rdf.worst_case_efficiency: K must be at least 1");
    if (R < 0.0) throw std::invalid_argument("rdf.worst_case_efficiency: R must be nonnegative");
    if (R < 1e-12) return 1.0;
    return std::log2(1.0 + K * (std::exp2(2.0 * R) - 1.0)) / (2.0 * K * R);
}

double exp_rdf(double lambda, double D) {
    if (lambda <= 0.0 || D <= 0.0)
        throw std::invalid_argument("rdf.exp_rdf: lambda and D must be positive");
    return clamp_nonneg(-std::log2(lambda * D));
}

double exp_drf(double lambda, double R) {
    if (lambda <= 0.0 || R < 0.0)
        throw std::invalid_argument("rdf.exp_drf: lambda must be positive and R nonnegative");
    return std::exp2(-R) / lambda;
}

double gg_slb(double alpha, double D, double p, double q) {
    if (alpha <= 0.0 || D <= 0.0 || p <= 0.0 || q <= 0.0)
        throw std::invalid_argument("rdf.gg_slb: all arguments must be positive");
    if (p == q) return clamp_nonneg(std::log2(alpha / D));
    double cp = gg_norm_const(p);
    double cq = gg_norm_const(q);
    double r = std::log2(alpha / D) + std::log2(cq / cp) + (1.0 / p - 1.0 / q) * kLog2E;
    return clamp_nonneg(r);
}

double efficiency(double reference_rate, double sum_rate) {
    if (sum_rate <= 0.0)
        throw std::invalid_argument("rdf.efficiency: sum rate must be positive");
    if (reference_rate < 0.0)
        throw std::invalid_argument("rdf.efficiency: reference rate must be nonnegative");
    return reference_rate / sum_rate;
}

}  // namespace mdfb

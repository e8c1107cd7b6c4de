#include "mdfb/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mdfb {

double binary_entropy(double p) {
    if (p < 0.0 || p > 1.0)
        throw std::invalid_argument("special.binary_entropy: p outside [0,1]");
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double normal_pdf(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * kPi);
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double normal_sf(double x) {
    return 0.5 * std::erfc(x / std::sqrt(2.0));
}

double erfcx(double x) {
    if (x < 0.0) {
        // erfcx(-x) = 2 exp(x^2) - erfcx(x); the first term overflows fast.
        if (x < -26.0) return std::numeric_limits<double>::infinity();
        return 2.0 * std::exp(x * x) - erfcx(-x);
    }
    if (x < 25.0) return std::exp(x * x) * std::erfc(x);
    // Asymptotic series; at x = 25 the truncation error is below 1e-10 relative.
    double inv2 = 1.0 / (x * x);
    double series = 1.0 + inv2 * (-0.5 + inv2 * (0.75 + inv2 * (-1.875 + inv2 * 6.5625)));
    return series / (x * std::sqrt(kPi));
}

double truncated_upper_mean(double sigma, double xi) {
    if (sigma <= 0.0)
        throw std::invalid_argument("special.truncated_upper_mean: sigma must be positive");
    return sigma * std::sqrt(2.0 / kPi) / erfcx(xi / (sigma * std::sqrt(2.0)));
}

double to_db(double x) {
    if (x <= 0.0)
        throw std::invalid_argument("special.to_db: argument must be positive");
    return 10.0 * std::log10(x);
}

}  // namespace mdfb

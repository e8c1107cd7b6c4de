#pragma once

#include <functional>
#include <vector>

namespace mdfb {

struct QuadratureOptions {
    double abs_tol = 1e-10;
    int max_depth = 60;
};

// Adaptive Gauss-Kronrod 15(7) on a finite interval.
double integrate(const std::function<double(double)>& f, double a, double b,
                 QuadratureOptions opt = {});

// Integral over (-inf, inf) via the substitution x = t / (1 - t^2).
double integrate_real_line(const std::function<double(double)>& f,
                           QuadratureOptions opt = {});

// Integral over (a, inf) via the substitution x = a + t / (1 - t).
double integrate_half_line(const std::function<double(double)>& f, double a,
                           QuadratureOptions opt = {});

// Nodes and weights for the n-point Gauss-Hermite rule (weight exp(-x^2)).
struct GaussHermiteRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussHermiteRule gauss_hermite(int n);

}  // namespace mdfb

#include "mdfb/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace mdfb {
namespace {

// 15-point Kronrod nodes on [-1,1] (positive half) and the matching weights,
// together with the embedded 7-point Gauss weights.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct GkResult {
    double kronrod;
    double err;
};

GkResult gk15(const std::function<double(double)>& f, double a, double b) {
    double c = 0.5 * (a + b);
    double h = 0.5 * (b - a);
    double fc = f(c);
    double res_g = fc * kWg[3];
    double res_k = fc * kWgk[7];
    for (int j = 0; j < 7; ++j) {
        double x = h * kXgk[j];
        double f1 = f(c - x);
        double f2 = f(c + x);
        res_k += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) res_g += kWg[j / 2] * (f1 + f2);
    }
    res_k *= h;
    res_g *= h;
    return {res_k, std::fabs(res_k - res_g)};
}

double adapt(const std::function<double(double)>& f, double a, double b,
             double tol, int depth, int max_depth) {
    GkResult r = gk15(f, a, b);
    if (r.err <= tol || r.err <= 1e-16 * std::fabs(r.kronrod)) return r.kronrod;
    if (depth >= max_depth)
        throw std::runtime_error("quadrature.integrate: interval subdivision limit reached");
    double c = 0.5 * (a + b);
    return adapt(f, a, c, 0.5 * tol, depth + 1, max_depth) +
           adapt(f, c, b, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 QuadratureOptions opt) {
    if (!(a < b)) throw std::invalid_argument("quadrature.integrate: requires a < b");
    return adapt(f, a, b, opt.abs_tol, 0, opt.max_depth);
}

double integrate_real_line(const std::function<double(double)>& f,
                           QuadratureOptions opt) {
    auto g = [&f](double t) {
        double s = 1.0 - t * t;
        double x = t / s;
        double y = f(x);
        if (y == 0.0) return 0.0;
        return y * (1.0 + t * t) / (s * s);
    };
    return adapt(g, -1.0, 1.0, opt.abs_tol, 0, opt.max_depth);
}

double integrate_half_line(const std::function<double(double)>& f, double a,
                           QuadratureOptions opt) {
    auto g = [&f, a](double t) {
        double s = 1.0 - t;
        double x = a + t / s;
        double y = f(x);
        if (y == 0.0) return 0.0;
        return y / (s * s);
    };
    return adapt(g, 0.0, 1.0, opt.abs_tol, 0, opt.max_depth);
}

GaussHermiteRule gauss_hermite(int n) {
    if (n < 1) throw std::invalid_argument("quadrature.gauss_hermite: n must be positive");
    GaussHermiteRule rule;
    rule.nodes.assign(n, 0.0);
    rule.weights.assign(n, 0.0);
    const double eps = 3e-14;
    const int m = (n + 1) / 2;
    double z = 0.0, pp = 0.0;
    for (int i = 0; i < m; ++i) {
        if (i == 0) {
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        } else if (i == 1) {
            z -= 1.14 * std::pow(n, 0.426) / z;
        } else if (i == 2) {
            z = 1.86 * z - 0.86 * rule.nodes[0];
        } else if (i == 3) {
            z = 1.91 * z - 0.91 * rule.nodes[1];
        } else {
            z = 2.0 * z - rule.nodes[i - 2];
        }
        for (int iter = 0; iter < 100; ++iter) {
            // Orthonormal Hermite recurrence keeps the magnitudes bounded.
            double p1 = 0.7511255444649425;  // pi^(-1/4)
            double p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / (j + 1.0)) * p2 - std::sqrt(double(j) / (j + 1.0)) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            double z1 = z;
            z = z1 - p1 / pp;
            if (std::fabs(z - z1) <= eps) break;
        }
        rule.nodes[i] = z;
        rule.nodes[n - 1 - i] = -z;
        rule.weights[i] = 2.0 / (pp * pp);
        rule.weights[n - 1 - i] = rule.weights[i];
    }
    return rule;
}

}  // namespace mdfb

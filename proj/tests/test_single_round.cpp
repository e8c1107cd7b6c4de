#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "mdfb/models.hpp"
#include "mdfb/quadrature.hpp"
#include "mdfb/rdf.hpp"
#include "mdfb/single_round.hpp"

using namespace mdfb;

TEST_CASE("channel spec validation") {
    CHECK_THROWS_AS(ExpChannelSpec::make(0.0, 0.5, 1), std::invalid_argument);
    CHECK_THROWS_AS(ExpChannelSpec::make(0.2, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(ExpChannelSpec::make(0.2, 6.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(ExpChannelSpec::make(0.2, 4.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(GGChannelSpec::make(1.0, 1.0, 1.5, 1), std::invalid_argument);
    CHECK_THROWS_AS(GGChannelSpec::make(1.0, 0.0, 0.5, 1), std::invalid_argument);

    ExpChannelSpec s = ExpChannelSpec::make(0.2, 4.0, 5);
    CHECK(s.delta() == doctest::Approx(0.05).epsilon(1e-14));
}

TEST_CASE("select-max closed forms") {
    CHECK(selectmax_estimate({0.0, 1.5, 0.7}) == doctest::Approx(1.5));
    CHECK_THROWS_AS(selectmax_estimate({}), std::invalid_argument);

    ExpChannelSpec s = ExpChannelSpec::make(0.2, 4.0, 5);
    CHECK(selectmax_distortion(s) == doctest::Approx(2.2222222222222222).epsilon(1e-13));
    CHECK(selectmax_error_param(s) == doctest::Approx(0.45).epsilon(1e-13));

    // the residual is exponential; its mean and parameter are reciprocals
    for (int K : {1, 2, 5}) {
        for (double D : {0.5, 2.0, 4.9}) {
            ExpChannelSpec spec = ExpChannelSpec::make(0.2, D, K);
            CHECK(selectmax_distortion(spec) * selectmax_error_param(spec) ==
                  doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("operational distortion-rate curve") {
    const double lambda = 0.2;

    // zero rate leaves the prior mean error; a single description is ideal
    CHECK(exp_odrf(lambda, 0.0, 3) == doctest::Approx(1.0 / lambda).epsilon(1e-13));
    for (double eps : {0.05, 0.3, 0.9}) {
        CHECK(exp_odrf(lambda, eps, 1) == doctest::Approx((1.0 - eps) / lambda).epsilon(1e-13));
        CHECK(exp_odrf(lambda, eps, 1) ==
              doctest::Approx(exp_drf(lambda, -std::log2(1.0 - eps))).epsilon(1e-13));
    }

    for (double eps : {0.05, 0.3, 0.9}) {
        // more descriptions at the same per-description rate reduce distortion
        double prev = exp_odrf(lambda, eps, 1);
        for (int K : {2, 3, 8}) {
            double d = exp_odrf(lambda, eps, K);
            CHECK(d < prev);
            prev = d;
        }
        // but never beat the ideal curve at the matched sum rate
        for (int K : {2, 3, 8}) {
            double ideal = exp_drf(lambda, -double(K) * std::log2(1.0 - eps));
            CHECK(exp_odrf(lambda, eps, K) >= ideal - 1e-13);
        }
    }

    CHECK_THROWS_AS(exp_odrf(lambda, 1.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(exp_odrf(lambda, -0.1, 2), std::invalid_argument);
}

TEST_CASE("simulated round matches the closed forms") {
    ExpChannelSpec spec = ExpChannelSpec::make(0.2, 4.0, 5);
    ExpRoundResult r = simulate_exp_round(spec, 1000000, 2024);
    CHECK(r.dbar == doctest::Approx(selectmax_distortion(spec)).epsilon(0.01));
    CHECK(r.lambda_fit == doctest::Approx(selectmax_error_param(spec)).epsilon(0.01));
    CHECK(std::fabs(r.corr) < 0.005);
    CHECK(r.trials == 1000000);

    CHECK_THROWS_AS(simulate_exp_round(spec, 100, 1), std::invalid_argument);
}

TEST_CASE("residual law is exponential with the combined parameter") {
    ExpChannelSpec spec = ExpChannelSpec::make(0.2, 4.0, 5);
    std::vector<double> residual;
    simulate_exp_round(spec, 100000, 515, ExecMode::Parallel, &residual);
    REQUIRE(residual.size() == 100000);
    double ks = ks_statistic_exponential(residual, selectmax_error_param(spec));
    CHECK(ks < 1.6276 / std::sqrt(100000.0));  // 1% critical value

    // a 10% wrong parameter is far outside the band
    CHECK(ks_statistic_exponential(residual, 1.1 * selectmax_error_param(spec)) >
          5.0 * 1.6276 / std::sqrt(100000.0));
}

TEST_CASE("simulation is seed-deterministic and mode independent") {
    ExpChannelSpec spec = ExpChannelSpec::make(0.2, 2.0, 3);
    ExpRoundResult a = simulate_exp_round(spec, 150000, 7, ExecMode::Serial);
    ExpRoundResult b = simulate_exp_round(spec, 150000, 7, ExecMode::Parallel);
    CHECK(a.dbar == b.dbar);
    CHECK(a.lambda_fit == b.lambda_fit);
    CHECK(a.corr == b.corr);
    ExpRoundResult c = simulate_exp_round(spec, 150000, 8, ExecMode::Parallel);
    CHECK(c.dbar != a.dbar);
}

TEST_CASE("zero probabilities against quadrature") {
    for (double p : {1.0, 2.0}) {
        for (int K : {1, 2, 3}) {
            GGChannelSpec spec = GGChannelSpec::make(1.0, p, 0.5, K);
            double byquad = integrate_real_line([&](double x) {
                double w = gg_zero_prob_given_x(spec, x);
                return std::pow(w, double(K)) * gg_density(x, 1.0, p);
            });
            CHECK(gg_prob_all_zero(spec) == doctest::Approx(byquad).epsilon(1e-10));
        }
    }

    // a description at full scale is always zero
    GGChannelSpec full = GGChannelSpec::make(1.0, 1.0, 1.0, 1);
    CHECK(gg_zero_prob_given_x(full, 0.7) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(gg_prob_all_zero(full) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("joint distortion is exact for a single description") {
    for (double p : {1.0, 1.5, 2.0}) {
        for (double D : {0.3, 0.6, 0.9}) {
            GGChannelSpec spec = GGChannelSpec::make(1.0, p, D, 1);
            double zero_term = integrate_real_line([&](double x) {
                return gg_zero_prob_given_x(spec, x) * std::pow(std::fabs(x), p) *
                       gg_density(x, 1.0, p);
            });
            double p_zero = gg_prob_all_zero(spec);
            double exact = zero_term + (1.0 - p_zero) * (2.0 / p) * std::pow(D, p);
            CHECK(gg_joint_distortion(spec) == doctest::Approx(exact).epsilon(1e-9));
        }
    }
}

TEST_CASE("joint distortion decomposes over the all-zero event") {
    // The closed form keeps the factorized structure for several
    // descriptions: the all-zero term integrates w(x)^K against the source,
    // the rest contributes the per-description error mean. Both pieces must
    // match their quadrature restatements.
    for (double p : {1.0, 1.5}) {
        for (int K : {2, 3}) {
            GGChannelSpec spec = GGChannelSpec::make(1.0, p, 0.7, K);
            double zero_term = integrate_real_line([&](double x) {
                return std::pow(gg_zero_prob_given_x(spec, x), double(K)) *
                       std::pow(std::fabs(x), p) * gg_density(x, 1.0, p);
            });
            double p_zero = gg_prob_all_zero(spec);
            double expected = zero_term + (1.0 - p_zero) * (2.0 / p) * std::pow(0.7, p);
            CHECK(gg_joint_distortion(spec) == doctest::Approx(expected).epsilon(1e-9));
        }
    }
}

TEST_CASE("redundancy normalization and slope") {
    for (double p : {1.0, 2.0}) {
        for (int K : {1, 2}) {
            GGChannelSpec at_alpha = GGChannelSpec::make(1.3, p, 1.3, K);
            CHECK(gg_distortion_redundancy(at_alpha) == doctest::Approx(1.0).epsilon(1e-12));
        }
    }

    for (auto [alpha, p, K] : {std::tuple{1.0, 1.0, 1}, {2.0, 2.0, 1}, {1.0, 2.0, 3}}) {
        SlopeCheck sc = gg_slope_check(alpha, p, K);
        CHECK(sc.expected == doctest::Approx(-1.0 / (2.0 * std::pow(alpha, p))).epsilon(1e-13));
        CHECK(sc.measured == doctest::Approx(sc.expected).epsilon(0.01));
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "mdfb/rdf.hpp"
#include "mdfb/special.hpp"

using namespace mdfb;

TEST_CASE("gaussian rate-distortion pair") {
    CHECK(gaussian_rdf(1.0, 0.25) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(gaussian_rdf(1.0, 0.1) == doctest::Approx(1.6609640474436812).epsilon(1e-14));
    CHECK(gaussian_rdf(1.0, 1.0) == 0.0);
    CHECK(gaussian_rdf(1.0, 2.0) == 0.0);  // clamped above the variance

    for (double R : {0.0, 0.3, 1.0, 4.5}) {
        double D = gaussian_drf(2.0, R);
        CHECK(gaussian_rdf(2.0, D) == doctest::Approx(R).epsilon(1e-13));
    }

    CHECK(usdr(1.0, 0.1) == doctest::Approx(9.0).epsilon(1e-13));
    CHECK_THROWS_AS(gaussian_rdf(0.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(usdr(1.0, 1.5), std::invalid_argument);
}

TEST_CASE("worst-case split efficiency") {
    // a single description loses nothing
    for (double R : {0.01, 0.5, 2.0}) CHECK(worst_case_efficiency(R, 1) == doctest::Approx(1.0));

    CHECK(worst_case_efficiency(0.5, 2) == doctest::Approx(0.79248125036057809).epsilon(1e-13));
    CHECK(worst_case_efficiency(1.0, 2) ==
          doctest::Approx(std::log2(7.0) / 4.0).epsilon(1e-13));

    // the zero-rate limit is lossless
    CHECK(worst_case_efficiency(0.0, 5) == 1.0);
    CHECK(worst_case_efficiency(1e-9, 5) == doctest::Approx(1.0).epsilon(1e-6));

    // more descriptions or more rate can only hurt
    double prev = 1.0;
    for (int K : {2, 3, 5, 10}) {
        double e = worst_case_efficiency(0.5, K);
        CHECK(e < prev);
        prev = e;
    }
    prev = 1.0;
    for (double R : {0.1, 0.5, 1.0, 2.0}) {
        double e = worst_case_efficiency(R, 3);
        CHECK(e < prev);
        prev = e;
    }
}

TEST_CASE("one-sided exponential rate-distortion pair") {
    CHECK(exp_rdf(0.2, 2.5) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(exp_rdf(0.2, 5.0) == 0.0);
    CHECK(exp_rdf(0.2, 6.0) == 0.0);
    for (double R : {0.0, 0.3, 2.0}) {
        double D = exp_drf(0.4, R);
        CHECK(exp_rdf(0.4, D) == doctest::Approx(R).epsilon(1e-13));
    }
}

TEST_CASE("generalized-gaussian Shannon lower bound") {
    // matched exponents collapse to a pure scale ratio
    CHECK(gg_slb(1.0, 0.25, 1.0, 1.0) == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(gg_slb(1.0, 0.25, 2.0, 2.0) == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(gg_slb(1.0, 1.0, 1.5, 1.5) == 0.0);

    // Gaussian source, absolute error: h(X) - h(Laplace of the same scale class)
    double alpha = 1.3, D = 0.05;
    double hx = 0.5 * std::log2(2.0 * kPi * std::exp(1.0) * alpha * alpha);
    double hv = std::log2(2.0 * std::exp(1.0) * 2.0 * D);  // noise scale D is Laplace(2D)
    CHECK(gg_slb(alpha, D, 2.0, 1.0) == doctest::Approx(hx - hv).epsilon(1e-12));

    CHECK_THROWS_AS(gg_slb(1.0, 0.0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("efficiency ratio") {
    CHECK(efficiency(1.0, 2.0) == doctest::Approx(0.5));
    CHECK(efficiency(0.0, 2.0) == 0.0);
    CHECK_THROWS_AS(efficiency(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(efficiency(-1.0, 1.0), std::invalid_argument);
}

TEST_CASE("special function values") {
    CHECK(binary_entropy(0.5) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(binary_entropy(0.11) == doctest::Approx(0.49992).epsilon(1e-4));

    CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(normal_sf(1.0) == doctest::Approx(0.15865525393145705).epsilon(1e-12));
    CHECK(normal_pdf(0.0) == doctest::Approx(0.3989422804014327).epsilon(1e-14));

    // erfcx stays finite deep into both tails and matches erfc where safe
    CHECK(erfcx(0.0) == doctest::Approx(1.0));
    CHECK(erfcx(1.0) == doctest::Approx(std::exp(1.0) * std::erfc(1.0)).epsilon(1e-12));
    CHECK(std::isfinite(erfcx(40.0)));
    CHECK(erfcx(40.0) == doctest::Approx(1.0 / (40.0 * std::sqrt(kPi))).epsilon(1e-3));

    // truncated mean: exact at 0, asymptotic to xi for large xi
    CHECK(truncated_upper_mean(1.0, 0.0) == doctest::Approx(std::sqrt(2.0 / kPi)).epsilon(1e-13));
    CHECK(truncated_upper_mean(1.0, 1.0) == doctest::Approx(1.5251352761609812).epsilon(1e-12));
    CHECK(truncated_upper_mean(2.0, 3.0) ==
          doctest::Approx(2.0 * truncated_upper_mean(1.0, 1.5)).epsilon(1e-12));
    CHECK(truncated_upper_mean(1.0, 30.0) > 30.0);
    CHECK(truncated_upper_mean(1.0, 30.0) < 30.04);

    CHECK(to_db(0.1) == doctest::Approx(-10.0).epsilon(1e-12));
}

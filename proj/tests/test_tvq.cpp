#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "mdfb/models.hpp"
#include "mdfb/rdf.hpp"
#include "mdfb/special.hpp"
#include "mdfb/tvq.hpp"

using namespace mdfb;

TEST_CASE("codebook construction and validation") {
    TvqCodebook up = make_tvq_codebook(10, 2.0, 3, 1.0, TvqSign::Upper);
    CHECK(up.n == 10);
    CHECK(up.axis == 3);
    CHECK(up.zhat == doctest::Approx(2.373215533).epsilon(1e-8));
    TvqCodebook down = make_tvq_codebook(10, 2.0, 3, 1.0, TvqSign::Lower);
    CHECK(down.zhat == doctest::Approx(-up.zhat).epsilon(1e-15));
    CHECK(tvq_centroid(1.0, 2.0) == doctest::Approx(2.373215533).epsilon(1e-8));

    CHECK_THROWS_AS(make_tvq_codebook(0, 1.0, 0, 1.0, TvqSign::Upper), std::invalid_argument);
    CHECK_THROWS_AS(make_tvq_codebook(10, 1.0, 10, 1.0, TvqSign::Upper), std::invalid_argument);
    CHECK_THROWS_AS(make_tvq_codebook(10, 1.0, 3, 0.0, TvqSign::Upper), std::invalid_argument);
    CHECK_THROWS_AS(make_tvq_codebook(10, -1.0, 3, 1.0, TvqSign::Upper), std::invalid_argument);
}

TEST_CASE("single-axis rate and distortion at pinned thresholds") {
    CHECK(tvq_axis_rate(1.0, 1.0) == doctest::Approx(0.6310827674).epsilon(1e-9));
    CHECK(tvq_axis_rate(1.0, 2.0) == doctest::Approx(0.1566150861).epsilon(1e-9));
    CHECK(tvq_axis_rate(1.0, 3.0) == doctest::Approx(0.01481466479).epsilon(1e-9));
    CHECK(tvq_axis_distortion(1.0, 1.0) == doctest::Approx(0.6309619122).epsilon(1e-9));
    CHECK(tvq_axis_distortion(1.0, 2.0) == doctest::Approx(0.8718677996).epsilon(1e-9));
    CHECK(tvq_axis_distortion(1.0, 3.0) == doctest::Approx(0.9854498044).epsilon(1e-9));
    // a zero threshold keeps the sign bit of every sample
    CHECK(tvq_axis_rate(1.0, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(tvq_axis_distortion(1.0, 0.0) ==
          doctest::Approx(1.0 - 1.0 / kPi).epsilon(1e-12));

    CHECK(to_db(tvq_axis_distortion(1.0, 1.0)) == doctest::Approx(-1.9999686).epsilon(1e-6));
    CHECK(to_db(tvq_axis_distortion(1.0, 2.0)) == doctest::Approx(-0.59549362).epsilon(1e-6));

    // scale invariance: rate depends on xi/sigma, distortion on sigma^2
    CHECK(tvq_axis_rate(2.0, 4.0) == doctest::Approx(tvq_axis_rate(1.0, 2.0)).epsilon(1e-14));
    CHECK(tvq_axis_distortion(2.0, 4.0) ==
          doctest::Approx(4.0 * tvq_axis_distortion(1.0, 2.0)).epsilon(1e-14));

    CHECK(tvq_rate(1.0, 1.0, 10) == doctest::Approx(0.06310827674).epsilon(1e-9));
    CHECK_THROWS_AS(tvq_axis_rate(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(tvq_rate(1.0, 1.0, 0), std::invalid_argument);
}

TEST_CASE("block distortion is affine in the number of received bits") {
    const double sigma = 1.0;
    const double xi = 1.0;
    const int n = 10;
    for (int i = 0; i <= n; ++i) {
        CHECK(tvq_distortion(sigma, xi, n, i) ==
              i * tvq_axis_distortion(sigma, xi) + double(n - i) * sigma * sigma);
    }
    CHECK(tvq_distortion(sigma, xi, n, 0) == double(n) * sigma * sigma);
    CHECK_THROWS_AS(tvq_distortion(sigma, xi, n, n + 1), std::invalid_argument);
    CHECK_THROWS_AS(tvq_distortion(sigma, xi, n, -1), std::invalid_argument);
}

TEST_CASE("rate-distortion slope approaches the low-rate limit from above") {
    SlopeCheck five = tvq_slope_check(1.0, 5.0);
    CHECK(five.expected == doctest::Approx(-0.721347520444).epsilon(1e-9));

    // convergence in xi is slow, so only the trend and a loose bound are
    // meaningful; beyond xi ~ 8 the finite difference loses precision
    double prev_ratio = 1e9;
    for (double xi : {2.0, 3.0, 5.0}) {
        SlopeCheck c = tvq_slope_check(1.0, xi);
        double ratio = c.measured / c.expected;
        CHECK(ratio > 1.0);
        CHECK(ratio < prev_ratio);
        prev_ratio = ratio;
    }
    CHECK(prev_ratio < 1.25);

    SlopeCheck scaled = tvq_slope_check(3.0, 15.0);
    CHECK(scaled.expected == doctest::Approx(-0.721347520444 / 9.0).epsilon(1e-9));
    CHECK_THROWS_AS(tvq_slope_check(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("encoding captures the right tail and reconstructs its centroid") {
    const int n = 10;
    const std::size_t L = 20000;
    std::vector<double> data = sample(SourceModel::gaussian(1.0), n * L, 424242, ExecMode::Parallel);

    std::vector<TvqCodebook> books;
    for (int axis = 0; axis < n; ++axis)
        books.push_back(make_tvq_codebook(n, 1.0, axis, 1.0, TvqSign::Upper));
    std::vector<std::vector<std::uint8_t>> bits = tvq_encode(data, n, books);
    REQUIRE(bits.size() == books.size());

    for (std::size_t b = 0; b < bits.size(); ++b) {
        REQUIRE(bits[b].size() == L);
        std::size_t ones = 0;
        for (std::uint8_t v : bits[b]) ones += v;
        // capture fraction per axis is the upper-tail mass at xi = 1
        CHECK(std::abs(double(ones) / double(L) - normal_sf(1.0)) < 0.01);
    }

    std::vector<double> rec = tvq_reconstruct(bits, books, n, L);
    REQUIRE(rec.size() == data.size());
    double sq = 0.0;
    for (std::size_t i = 0; i < rec.size(); ++i) {
        double e = data[i] - rec[i];
        sq += e * e;
    }
    double per_dim = sq / double(data.size());
    CHECK(std::abs(per_dim - tvq_axis_distortion(1.0, 1.0)) <
          0.025 * tvq_axis_distortion(1.0, 1.0));

    // lower-sign codebooks capture the mirrored tail
    std::vector<TvqCodebook> low = {make_tvq_codebook(n, 1.0, 0, 1.0, TvqSign::Lower)};
    std::vector<std::vector<std::uint8_t>> low_bits = tvq_encode(data, n, low);
    std::size_t low_ones = 0;
    for (std::uint8_t v : low_bits[0]) low_ones += v;
    CHECK(std::abs(double(low_ones) / double(L) - normal_sf(1.0)) < 0.01);

    CHECK_THROWS_AS(tvq_encode(data, 7, books), std::invalid_argument);
    std::vector<TvqCodebook> dup = {books[0], books[0]};
    CHECK_THROWS_AS(tvq_encode(data, n, dup), std::invalid_argument);
    CHECK_THROWS_AS(tvq_reconstruct(bits, books, n, L - 1), std::invalid_argument);
}

TEST_CASE("multiround refinement staircase on a unit-variance source") {
    TvqMultiRound run = tvq_multiround_gaussian(1.0, 2.0, 5);
    REQUIRE(run.rounds.size() == 5);
    const double want[5][4] = {
        {0.156615086125, 0.156615086125, 0.871867799639, 0.631544196885},
        {0.118941884280, 0.275556970406, 0.784172758750, 0.636450185229},
        {0.093501626735, 0.369058597141, 0.720592228744, 0.640474176059},
        {0.075678729822, 0.444737326963, 0.672363816141, 0.643847472909},
        {0.062747813290, 0.507485140253, 0.634455683111, 0.646727015087},
    };
    for (int m = 0; m < 5; ++m) {
        const TvqRound& round = run.rounds[std::size_t(m)];
        CHECK(round.threshold == 2.0);
        CHECK(round.rate == doctest::Approx(want[m][0]).epsilon(1e-9));
        CHECK(round.cum_rate == doctest::Approx(want[m][1]).epsilon(1e-9));
        CHECK(round.distortion == doctest::Approx(want[m][2]).epsilon(1e-9));
        CHECK(round.eta == doctest::Approx(want[m][3]).epsilon(1e-9));
    }
    CHECK(run.final_distortion == doctest::Approx(0.634455683111).epsilon(1e-9));
    CHECK(to_db(run.final_distortion) == doctest::Approx(-1.975987).epsilon(1e-5));
    CHECK(run.avg_eta == doctest::Approx(0.6398086092).epsilon(1e-8));
    CHECK(run.rate_loss ==
          doctest::Approx(run.cum_rate - gaussian_rdf(1.0, run.final_distortion))
              .epsilon(1e-12));

    // a higher threshold run stays efficient over many rounds
    TvqMultiRound tall = tvq_multiround_gaussian(1.0, 3.0, 100);
    CHECK(tall.rounds.front().eta == doctest::Approx(0.7137).epsilon(2e-4));
    CHECK(tall.rounds.back().eta == doctest::Approx(0.7399).epsilon(2e-4));
    CHECK(tall.avg_eta == doctest::Approx(0.7313).epsilon(2e-4));

    CHECK_THROWS_AS(tvq_multiround_gaussian(0.0, 2.0, 5), std::invalid_argument);
    CHECK_THROWS_AS(tvq_multiround_gaussian(1.0, 2.0, 0), std::invalid_argument);
}

TEST_CASE("trained thresholding of a Laplacian source under absolute error") {
    TvqMultiRound one = tvq_multiround_laplacian({0.5265}, 20, 200000, 19, ExecMode::Parallel);
    REQUIRE(one.rounds.size() == 1);
    CHECK(one.rounds[0].threshold == 0.5265);
    CHECK(std::abs(one.final_distortion - 0.5377111627) < 0.01 * 0.5377111627);
    CHECK(one.rate_loss ==
          doctest::Approx(one.cum_rate -
                          clamp_nonneg(std::log2(1.0 / std::sqrt(2.0) / one.final_distortion)))
              .epsilon(1e-12));

    // alternating rounds work the two tails in turn
    TvqMultiRound two = tvq_multiround_laplacian({1.525, 2.0}, 10, 100000, 19, ExecMode::Parallel);
    REQUIRE(two.rounds.size() == 2);
    CHECK(two.rounds[0].threshold == 1.525);
    CHECK(two.rounds[1].threshold == -2.0);
    CHECK(two.rounds[1].cum_rate ==
          doctest::Approx(two.rounds[0].rate + two.rounds[1].rate).epsilon(1e-12));

    // splitting the budget across rounds reduces the rate loss
    TvqMultiRound base = tvq_multiround_laplacian({0.5265}, 10, 100000, 19, ExecMode::Parallel);
    CHECK(two.rate_loss < base.rate_loss - 0.1);

    TvqMultiRound serial =
        tvq_multiround_laplacian({1.525, 2.0}, 10, 100000, 19, ExecMode::Serial);
    REQUIRE(serial.rounds.size() == two.rounds.size());
    for (std::size_t m = 0; m < two.rounds.size(); ++m) {
        CHECK(serial.rounds[m].rate == two.rounds[m].rate);
        CHECK(serial.rounds[m].distortion == two.rounds[m].distortion);
    }

    CHECK_THROWS_AS(tvq_multiround_laplacian({}, 10, 100000, 19), std::invalid_argument);
    CHECK_THROWS_AS(tvq_multiround_laplacian({1.0}, 0, 100000, 19), std::invalid_argument);
    CHECK_THROWS_AS(tvq_multiround_laplacian({1.0}, 10, 100, 19), std::invalid_argument);
}

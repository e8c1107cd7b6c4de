#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <vector>

#include "mdfb/parallel.hpp"

using namespace mdfb;

static_assert(kChunk == 65536, "chunk size is part of the reproducibility contract");

TEST_CASE("worker count honours the environment cap once") {
    setenv("MDFB_THREADS", "3", 1);
    CHECK(worker_count() == 3);
    // the value is cached on first use; later changes do not apply
    setenv("MDFB_THREADS", "5", 1);
    CHECK(worker_count() == 3);
    unsetenv("MDFB_THREADS");
    CHECK(worker_count() >= 1);
}

TEST_CASE("seed mixing separates streams and stays reproducible") {
    CHECK(mix_seed(1, 2) != mix_seed(1, 3));
    CHECK(mix_seed(1, 2) != mix_seed(2, 2));
    CHECK(mix_seed(7, 0) == mix_seed(7, 0));

    std::mt19937_64 a = substream(9, 4);
    std::mt19937_64 b = substream(9, 4);
    for (int i = 0; i < 32; ++i) CHECK(a() == b());
    std::mt19937_64 c = substream(9, 5);
    CHECK(c() != substream(9, 4)());
}

TEST_CASE("uniform draws respect their half-open and open ranges") {
    std::mt19937_64 g = substream(123, 0);
    double sum = 0.0;
    int violations = 0;
    for (int i = 0; i < 200000; ++i) {
        double u = uniform01(g);
        double v = uniform_open(g);
        if (!(u >= 0.0 && u < 1.0)) ++violations;
        if (!(v > 0.0 && v < 1.0)) ++violations;
        sum += u;
    }
    CHECK(violations == 0);
    CHECK(std::abs(sum / 200000.0 - 0.5) < 0.005);
}

TEST_CASE("normal draws have the right first two moments") {
    std::mt19937_64 g = substream(321, 0);
    double sum = 0.0, sq = 0.0;
    const int n = 400000;
    for (int i = 0; i < n; ++i) {
        double x = box_muller(g);
        sum += x;
        sq += x * x;
    }
    CHECK(std::abs(sum / n) < 0.01);
    CHECK(std::abs(sq / n - 1.0) < 0.02);
}

TEST_CASE("chunked reduction folds identically in both modes") {
    const std::size_t n = 3 * kChunk + 12345;
    auto run = [&](ExecMode mode) {
        return chunked_reduce<double>(
            n, mode, 0.0,
            [&](std::uint64_t chunk, std::size_t b, std::size_t e) {
                std::mt19937_64 g = substream(888, chunk);
                double acc = 0.0;
                for (std::size_t i = b; i < e; ++i) acc += uniform01(g) + 0.25 * box_muller(g);
                return acc;
            },
            [](double a, double b) { return a + b; });
    };
    double serial = run(ExecMode::Serial);
    double parallel = run(ExecMode::Parallel);
    CHECK(serial == parallel);
    CHECK(serial > 0.0);
}

TEST_CASE("chunked loops touch every index exactly once") {
    const std::size_t n = 2 * kChunk + 777;
    std::vector<int> hits(n, 0);
    chunked_for(n, ExecMode::Parallel, [&](std::uint64_t, std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) ++hits[i];
    });
    std::size_t misses = 0;
    for (int h : hits)
        if (h != 1) ++misses;
    CHECK(misses == 0);

    std::vector<double> buf_s(n), buf_p(n);
    auto fill = [&](std::vector<double>& buf, ExecMode mode) {
        chunked_for(n, mode, [&](std::uint64_t chunk, std::size_t b, std::size_t e) {
            std::mt19937_64 g = substream(4321, chunk);
            for (std::size_t i = b; i < e; ++i) buf[i] = box_muller(g);
        });
    };
    fill(buf_s, ExecMode::Serial);
    fill(buf_p, ExecMode::Parallel);
    CHECK(buf_s == buf_p);
}

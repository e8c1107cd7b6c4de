#include "mdfb/tvq.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include "mdfb/special.hpp"

namespace mdfb {

TvqCodebook make_tvq_codebook(int n, double xi, int axis, double sigma, TvqSign sign) {
    if (n < 1) throw std::invalid_argument("tvq.make_tvq_codebook: n must be at least 1");
    if (axis < 0 || axis >= n)
        throw std::invalid_argument("tvq.make_tvq_codebook: axis outside [0, n)");
    if (sigma <= 0.0) throw std::invalid_argument("tvq.make_tvq_codebook: sigma must be positive");
    if (xi < 0.0) throw std::invalid_argument("tvq.make_tvq_codebook: xi must be nonnegative");
    TvqCodebook cb;
    cb.n = n;
    cb.xi = xi;
    cb.axis = axis;
    cb.sigma = sigma;
    cb.sign = sign;
    double z = tvq_centroid(sigma, xi);
    cb.zhat = sign == TvqSign::Upper ? z : -z;
    return cb;
}

double tvq_centroid(double sigma, double xi) {
    return truncated_upper_mean(sigma, xi);
}

double tvq_axis_rate(double sigma, double xi) {
    if (sigma <= 0.0) throw std::invalid_argument("tvq.tvq_axis_rate: sigma must be positive");
    return binary_entropy(normal_sf(xi / sigma));
}

double tvq_rate(double sigma, double xi, int n) {
    if (n < 1) throw std::invalid_argument("tvq.tvq_rate: n must be at least 1");
    return tvq_axis_rate(sigma, xi) / double(n);
}

double tvq_axis_distortion(double sigma, double xi) {
    if (sigma <= 0.0) throw std::invalid_argument("tvq.tvq_axis_distortion: sigma must be positive");
    double q = normal_sf(xi / sigma);
    double z = tvq_centroid(sigma, xi);
    return sigma * sigma - q * z * z;
}

double tvq_distortion(double sigma, double xi, int n, int received) {
    if (n < 1 || received < 0 || received > n)
        throw std::invalid_argument("tvq.tvq_distortion: received must lie in [0, n]");
    return received * tvq_axis_distortion(sigma, xi) +
           double(n - received) * sigma * sigma;
}

SlopeCheck tvq_slope_check(double sigma, double xi) {
    if (sigma <= 0.0 || xi <= 0.0)
        throw std::invalid_argument("tvq.tvq_slope_check: sigma and xi must be positive");
    const double h = 1e-4 * xi;
    double r_hi = tvq_axis_rate(sigma, xi + h);
    double r_lo = tvq_axis_rate(sigma, xi - h);
    double d_hi = tvq_axis_distortion(sigma, xi + h);
    double d_lo = tvq_axis_distortion(sigma, xi - h);
    SlopeCheck check;
    check.measured = (r_hi - r_lo) / (d_hi - d_lo);
    check.expected = -kLog2E / (2.0 * sigma * sigma);
    return check;
}

namespace {

void require_distinct_axes(const std::vector<TvqCodebook>& books, int n, const char* where) {
    std::set<int> seen;
    for (const auto& cb : books) {
        if (cb.axis < 0 || cb.axis >= n)
            throw std::invalid_argument(std::string(where) + ": axis outside the block");
        if (!seen.insert(cb.axis).second)
            throw std::invalid_argument(std::string(where) + ": duplicate axis");
    }
}

}  // namespace

std::vector<std::vector<std::uint8_t>> tvq_encode(const std::vector<double>& data, int n,
                                                  const std::vector<TvqCodebook>& books) {
    if (n < 1 || data.size() % std::size_t(n) != 0)
        throw std::invalid_argument("tvq.tvq_encode: data size must be a multiple of n");
    require_distinct_axes(books, n, "tvq.tvq_encode");
    const std::size_t L = data.size() / std::size_t(n);
    std::vector<std::vector<std::uint8_t>> bits(books.size());
    for (std::size_t b = 0; b < books.size(); ++b) {
        const TvqCodebook& cb = books[b];
        bits[b].resize(L);
        for (std::size_t l = 0; l < L; ++l) {
            double v = data[l * std::size_t(n) + std::size_t(cb.axis)];
            bits[b][l] = cb.sign == TvqSign::Upper ? (v > cb.xi ? 1 : 0)
                                                   : (v < -cb.xi ? 1 : 0);
        }
    }
    return bits;
}

std::vector<double> tvq_reconstruct(const std::vector<std::vector<std::uint8_t>>& bits,
                                    const std::vector<TvqCodebook>& books, int n,
                                    std::size_t L) {
    if (bits.size() != books.size())
        throw std::invalid_argument("tvq.tvq_reconstruct: one bit vector per codebook required");
    require_distinct_axes(books, n, "tvq.tvq_reconstruct");
    std::vector<double> out(std::size_t(n) * L, 0.0);
    for (std::size_t b = 0; b < books.size(); ++b) {
        if (bits[b].size() != L)
            throw std::invalid_argument("tvq.tvq_reconstruct: bit vector length mismatch");
        const TvqCodebook& cb = books[b];
        for (std::size_t l = 0; l < L; ++l)
            if (bits[b][l]) out[l * std::size_t(n) + std::size_t(cb.axis)] += cb.zhat;
    }
    return out;
}

TvqMultiRound tvq_multiround_gaussian(double sigma2, double xi, int M) {
    if (sigma2 <= 0.0 || xi < 0.0 || M < 1)
        throw std::invalid_argument("tvq.tvq_multiround_gaussian: bad parameters");
    TvqMultiRound out;
    double var = sigma2;
    double cum = 0.0;
    double eta_sum = 0.0;
    for (int m = 1; m <= M; ++m) {
        double s = std::sqrt(var);
        double rate = tvq_axis_rate(s, xi);
        double D = tvq_axis_distortion(s, xi);
        cum += rate;
        double eta = gaussian_rdf(sigma2, D) / cum;
        out.rounds.push_back({xi, rate, cum, D, eta});
        eta_sum += eta;
        var = D;
    }
    out.cum_rate = cum;
    out.final_distortion = var;
    out.rate_loss = cum - gaussian_rdf(sigma2, var);
    out.avg_eta = eta_sum / double(M);
    return out;
}

namespace {

struct CaptureAcc {
    double sum = 0.0;
    std::size_t count = 0;
};

void fill_laplace(std::vector<double>& buf, std::uint64_t seed, ExecMode mode) {
    chunked_for(buf.size(), mode, [&](std::uint64_t chunk, std::size_t b, std::size_t e) {
        std::mt19937_64 gen = substream(seed, chunk);
        for (std::size_t i = b; i < e; ++i) {
            double u1 = uniform_open(gen);
            double u2 = uniform_open(gen);
            buf[i] = std::log(u1 / u2) / std::sqrt(2.0);
        }
    });
}

}  // namespace

TvqMultiRound tvq_multiround_laplacian(const std::vector<double>& thresholds, int d,
                                       std::size_t L, std::uint64_t seed, ExecMode mode) {
    if (thresholds.empty())
        throw std::invalid_argument("tvq.tvq_multiround_laplacian: needs at least one round");
    if (d < 1 || L < 1000)
        throw std::invalid_argument("tvq.tvq_multiround_laplacian: needs d >= 1 and L >= 1000");
    const std::size_t total = std::size_t(d) * L;
    std::vector<double> train(total), test(total);
    fill_laplace(train, mix_seed(seed, 0x7261696eULL), mode);
    fill_laplace(test, mix_seed(seed, 0x74657374ULL), mode);

    const double b_scale = 1.0 / std::sqrt(2.0);  // unit variance Laplacian
    TvqMultiRound out;
    double cum = 0.0;
    double eta_sum = 0.0;
    double D = 0.0;
    for (std::size_t m = 1; m <= thresholds.size(); ++m) {
        double xi = std::fabs(thresholds[m - 1]);
        bool upper = (m % 2 == 1);

        auto captured = [&](double v) { return upper ? v > xi : v < -xi; };

        CaptureAcc tr = chunked_reduce<CaptureAcc>(
            total, mode, CaptureAcc{},
            [&](std::uint64_t, std::size_t lo, std::size_t hi) {
                CaptureAcc acc;
                for (std::size_t i = lo; i < hi; ++i)
                    if (captured(train[i])) {
                        acc.sum += train[i];
                        ++acc.count;
                    }
                return acc;
            },
            [](CaptureAcc a, const CaptureAcc& c) {
                a.sum += c.sum;
                a.count += c.count;
                return a;
            });
        if (tr.count == 0)
            throw std::runtime_error("tvq.tvq_multiround_laplacian: threshold captured no "
                                     "training samples");
        double z = tr.sum / double(tr.count);

        struct TestAcc {
            std::size_t captured = 0;
            double abs_sum = 0.0;
        };
        TestAcc te = chunked_reduce<TestAcc>(
            total, mode, TestAcc{},
            [&](std::uint64_t, std::size_t lo, std::size_t hi) {
                TestAcc acc;
                for (std::size_t i = lo; i < hi; ++i) {
                    if (captured(train[i])) train[i] -= z;
                    if (captured(test[i])) {
                        test[i] -= z;
                        ++acc.captured;
                    }
                    acc.abs_sum += std::fabs(test[i]);
                }
                return acc;
            },
            [](TestAcc a, const TestAcc& c) {
                a.captured += c.captured;
                a.abs_sum += c.abs_sum;
                return a;
            });

        double pp = double(te.captured) / double(total);
        double rate = binary_entropy(pp);
        cum += rate;
        D = te.abs_sum / double(total);
        double slb = clamp_nonneg(std::log2(b_scale / D));
        double eta = cum > 0.0 ? slb / cum : 0.0;
        out.rounds.push_back({upper ? xi : -xi, rate, cum, D, eta});
        eta_sum += eta;
    }
    out.cum_rate = cum;
    out.final_distortion = D;
    out.rate_loss = cum - clamp_nonneg(std::log2(b_scale / D));
    out.avg_eta = eta_sum / double(thresholds.size());
    return out;
}

}  // namespace mdfb

#include "mdfb/md_feedback.hpp"

#include <cmath>
#include <stdexcept>

#include "mdfb/rdf.hpp"

namespace mdfb {

double md_symmetric_rate(double sigma2, double D, double D_all, int K) {
    if (K < 2) throw std::invalid_argument("md_feedback.md_symmetric_rate: K must be at least 2");
    if (!(0.0 < D_all && D_all < D && D < sigma2))
        throw std::invalid_argument("md_feedback.md_symmetric_rate: requires 0 < D_all < D < sigma2");
    double term1 = 0.5 * std::log2((K - 1) * (sigma2 - D_all) / (double(K) * (D - D_all)));
    double term2 = 0.5 / K * std::log2(sigma2 * (D - D_all) /
                                       ((K - 1) * D_all * (sigma2 - D)));
    return term1 + term2;
}

double md_independent_point(double sigma2, double D, int K) {
    if (K < 1) throw std::invalid_argument("md_feedback.md_independent_point: K must be at least 1");
    if (!(0.0 < D && D < sigma2))
        throw std::invalid_argument("md_feedback.md_independent_point: requires 0 < D < sigma2");
    return D * sigma2 / (K * sigma2 - (K - 1) * D);
}

MdEfficiency md_efficiency(double sigma2, double eps, double D_all, int K) {
    if (eps <= 0.0 || eps >= sigma2)
        throw std::invalid_argument("md_feedback.md_efficiency: eps must lie in (0, sigma2)");
    double D = sigma2 - eps;
    if (!(0.0 < D_all && D_all < D))
        throw std::invalid_argument("md_feedback.md_efficiency: requires 0 < D_all < sigma2 - eps");
    double per_desc = md_symmetric_rate(sigma2, D, D_all, K);
    MdEfficiency eff;
    eff.eta_single = gaussian_rdf(sigma2, D) / per_desc;
    eff.eta_all = gaussian_rdf(sigma2, D_all) / (double(K) * per_desc);
    return eff;
}

double uncond_combined_distortion(double sigma2, double sigmaN2, int K) {
    if (sigma2 <= 0.0 || sigmaN2 <= 0.0 || K < 1)
        throw std::invalid_argument("md_feedback.uncond_combined_distortion: bad parameters");
    return sigma2 * sigmaN2 / (sigmaN2 + K * sigma2);
}

double uncond_noise_for_combined(double sigma2, double D_all, int K) {
    if (!(0.0 < D_all && D_all < sigma2) || K < 1)
        throw std::invalid_argument("md_feedback.uncond_noise_for_combined: D_all must lie in "
                                    "(0, sigma2)");
    return double(K) * sigma2 * D_all / (sigma2 - D_all);
}

double md_min_sum_rate(double sigma2, double D_all, int K) {
    if (K < 2) throw std::invalid_argument("md_feedback.md_min_sum_rate: K must be at least 2");
    if (!(0.0 < D_all && D_all < sigma2))
        throw std::invalid_argument("md_feedback.md_min_sum_rate: requires 0 < D_all < sigma2");
    // Golden-section search on log D between the open endpoints; the rate
    // blows up at both, so the minimum is interior.
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double lo = std::log(D_all * (1.0 + 1e-12));
    double hi = std::log(sigma2 * (1.0 - 1e-12));
    auto rate_at = [&](double logD) {
        return md_symmetric_rate(sigma2, std::exp(logD), D_all, K);
    };
    double x1 = hi - gr * (hi - lo);
    double x2 = lo + gr * (hi - lo);
    double f1 = rate_at(x1);
    double f2 = rate_at(x2);
    for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = rate_at(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = rate_at(x2);
        }
    }
    return double(K) * std::min(f1, f2);
}

UncondVsMd uncond_vs_md(double sigma2, double D_all, int K) {
    UncondVsMd row;
    row.D_all = D_all;
    double rdf_all = gaussian_rdf(sigma2, D_all);
    double sigmaN2 = uncond_noise_for_combined(sigma2, D_all, K);
    double D1 = sigma2 * sigmaN2 / (sigmaN2 + sigma2);
    row.eta_uncond = rdf_all / (double(K) * gaussian_rdf(sigma2, D1));
    row.eta_md = rdf_all / md_min_sum_rate(sigma2, D_all, K);
    return row;
}

ErasureTrace ErasureTrace::iid_bernoulli(double p_loss, std::uint64_t seed) {
    if (p_loss < 0.0 || p_loss > 1.0)
        throw std::invalid_argument("md_feedback.erasure_trace: p_loss must lie in [0,1]");
    ErasureTrace t;
    t.kind = TraceKind::IidBernoulli;
    t.p_loss = p_loss;
    t.seed = seed;
    return t;
}

ErasureTrace ErasureTrace::explicit_counts(std::vector<int> received) {
    ErasureTrace t;
    t.kind = TraceKind::Explicit;
    t.received = std::move(received);
    return t;
}

namespace {

std::vector<int> realize_counts(const ErasureTrace& trace, int K, long long M) {
    std::vector<int> counts;
    counts.reserve(std::size_t(M));
    if (trace.kind == TraceKind::Explicit) {
        if ((long long)trace.received.size() != M)
            throw std::invalid_argument("md_feedback.erasure_trace: explicit trace length "
                                        "must equal M");
        for (int k : trace.received) {
            if (k < 0 || k > K)
                throw std::invalid_argument("md_feedback.erasure_trace: received count outside "
                                            "[0, K]");
            counts.push_back(k);
        }
        return counts;
    }
    for (long long m = 0; m < M; ++m) {
        std::mt19937_64 gen = substream(trace.seed, std::uint64_t(m));
        int k = 0;
        for (int i = 0; i < K; ++i)
            if (uniform01(gen) >= trace.p_loss) ++k;
        counts.push_back(k);
    }
    return counts;
}

}  // namespace

FeedbackRunRecord run_feedback_simulation(double sigma2, int K, long long M, double r,
                                          const ErasureTrace& trace) {
    if (sigma2 <= 0.0 || r <= 0.0)
        throw std::invalid_argument("md_feedback.run_feedback_simulation: sigma2 and r must be "
                                    "positive");
    if (K < 1 || M < 1)
        throw std::invalid_argument("md_feedback.run_feedback_simulation: K and M must be at "
                                    "least 1");
    std::vector<int> counts = realize_counts(trace, K, M);
    const double c = std::exp2(2.0 * r) - 1.0;
    FeedbackRunRecord rec;
    rec.K = K;
    rec.rounds.reserve(counts.size());
    double D = sigma2;
    double cum = 0.0;
    for (int k : counts) {
        D = D / (1.0 + k * c);
        cum += double(K) * r;
        rec.rounds.push_back({k, D, cum});
    }
    rec.final_distortion = D;
    rec.total_rate = cum;
    return rec;
}

std::vector<FeedbackSampleCheck> feedback_sample_validation(
    double sigma2, int K, long long M, double r, const ErasureTrace& trace,
    std::size_t n, std::uint64_t seed, ExecMode mode) {
    if (n < 1000)
        throw std::invalid_argument("md_feedback.feedback_sample_validation: needs at least "
                                    "1e3 samples");
    FeedbackRunRecord analytic = run_feedback_simulation(sigma2, K, M, r, trace);
    const double c = std::exp2(2.0 * r) - 1.0;

    // Per-round measurement noise, designed from the analytic distortion the
    // encoder tracks via feedback.
    std::vector<double> noise_var(static_cast<std::size_t>(M));
    {
        double D_prev = sigma2;
        for (long long m = 0; m < M; ++m) {
            noise_var[std::size_t(m)] = D_prev / c;
            D_prev = analytic.rounds[std::size_t(m)].distortion;
        }
    }

    std::vector<double> sum_sq = chunked_reduce<std::vector<double>>(
        n, mode, std::vector<double>(std::size_t(M), 0.0),
        [&](std::uint64_t chunk, std::size_t b, std::size_t e) {
            std::mt19937_64 gen = substream(seed, chunk);
            std::vector<double> acc(std::size_t(M), 0.0);
            for (std::size_t i = b; i < e; ++i) {
                double err = std::sqrt(sigma2) * box_muller(gen);
                double D_prev = sigma2;
                for (long long m = 0; m < M; ++m) {
                    int k = analytic.rounds[std::size_t(m)].received;
                    double nv = noise_var[std::size_t(m)];
                    double sum_y = 0.0;
                    for (int j = 0; j < K; ++j) {
                        double y = err + std::sqrt(nv) * box_muller(gen);
                        if (j < k) sum_y += y;
                    }
                    if (k > 0) {
                        double D_post = 1.0 / (1.0 / D_prev + double(k) / nv);
                        err -= D_post * sum_y / nv;
                        D_prev = D_post;
                    }
                    acc[std::size_t(m)] += err * err;
                }
            }
            return acc;
        },
        [](std::vector<double> a, const std::vector<double>& b) {
            for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
            return a;
        });

    std::vector<FeedbackSampleCheck> out(static_cast<std::size_t>(M));
    for (long long m = 0; m < M; ++m) {
        out[std::size_t(m)].analytic = analytic.rounds[std::size_t(m)].distortion;
        out[std::size_t(m)].empirical = sum_sq[std::size_t(m)] / double(n);
    }
    return out;
}

}  // namespace mdfb

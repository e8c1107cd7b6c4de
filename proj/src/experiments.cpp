#include "mdfb/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "json.hpp"
#include "mdfb/infocheck.hpp"
#include "mdfb/md_feedback.hpp"
#include "mdfb/multi_round.hpp"
#include "mdfb/single_round.hpp"
#include "mdfb/special.hpp"
#include "mdfb/tvq.hpp"

namespace mdfb {

std::string fmt_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fmt_f4(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.4f", x);
    return buf;
}

void write_csv_with_sidecar(const std::string& path, const CsvTable& table,
                            const std::string& experiment,
                            const std::vector<std::pair<std::string, std::string>>& meta) {
    std::ofstream csv(path, std::ios::trunc);
    if (!csv) throw std::invalid_argument("experiments.write_csv: cannot open " + path);
    csv << "rate_bits,distortion,K,round,label";
    for (const auto& col : table.extra_columns) csv << ',' << col;
    csv << '\n';
    for (const auto& row : table.rows) {
        csv << fmt_g17(row.point.rate_bits) << ',' << fmt_g17(row.point.distortion) << ','
            << row.point.K << ',' << row.point.round << ',' << row.point.label;
        if (row.extras.size() != table.extra_columns.size())
            throw std::invalid_argument("experiments.write_csv: row width mismatch");
        for (const auto& v : row.extras) csv << ',' << v;
        csv << '\n';
    }
    if (!csv) throw std::runtime_error("experiments.write_csv: short write to " + path);

    nlohmann::json j;
    j["experiment"] = experiment;
    j["chunk"] = std::uint64_t(kChunk);
    j["compiler"] = __VERSION__;
    for (const auto& [k, v] : meta) j[k] = v;
    std::ofstream side(path + ".meta.jsonl", std::ios::trunc);
    if (!side) throw std::invalid_argument("experiments.write_csv: cannot open sidecar for " + path);
    side << j.dump() << '\n';
}

namespace {

CsvTable efficiency_rows(const std::vector<std::pair<int, long long>>& cases) {
    CsvTable t;
    t.extra_columns = {"per_round_rate", "eta", "eta_rounded"};
    for (const auto& row : efficiency_table(1.0, 0.1, cases)) {
        char label[48];
        std::snprintf(label, sizeof label, "dbuniform_K%d_M%lld", row.K, row.M);
        CsvTable::Row out;
        out.point = {row.sum_rate, 0.1, row.K, int(row.M), label};
        out.extras = {fmt_g17(row.per_round_rate), fmt_g17(row.eta), fmt_f4(row.eta)};
        t.rows.push_back(std::move(out));
    }
    return t;
}

}  // namespace

CsvTable run_table1() {
    return efficiency_rows({{2, 2}, {5, 2}, {2, 10}, {5, 10}});
}

CsvTable run_fig3() {
    std::vector<std::pair<int, long long>> cases;
    for (int K : {2, 5})
        for (long long M = 1; M <= 12; ++M) cases.push_back({K, M});
    return efficiency_rows(cases);
}

CsvTable run_fig2(double lambda, int K, bool mc, std::size_t trials, std::uint64_t seed,
                  ExecMode mode) {
    if (!(lambda > 0.0))
        throw std::invalid_argument("experiments.run_fig2: lambda must be positive");
    CsvTable t;
    t.extra_columns = {"eps", "drf"};
    if (mc) {
        t.extra_columns.push_back("dbar_mc");
        t.extra_columns.push_back("lambda_fit");
        t.extra_columns.push_back("corr");
    }
    for (int i = 1; i <= 19; ++i) {
        double eps = 0.05 * i;
        double rate = -std::log2(1.0 - eps);
        double drf = (1.0 - eps) / lambda;
        CsvTable::Row row;
        row.point = {rate, exp_odrf(lambda, eps, K), K, 1, "fig2"};
        row.extras = {fmt_g17(eps), fmt_g17(drf)};
        if (mc) {
            ExpChannelSpec spec = ExpChannelSpec::make(lambda, drf, K);
            ExpRoundResult sim =
                simulate_exp_round(spec, trials, mix_seed(seed, 0x66326d63ULL + i), mode);
            row.extras.push_back(fmt_g17(sim.dbar));
            row.extras.push_back(fmt_g17(sim.lambda_fit));
            row.extras.push_back(fmt_g17(sim.corr));
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

CsvTable run_fig5(double eps, int grid_points) {
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("experiments.run_fig5: eps must lie in (0, 1)");
    if (grid_points < 2)
        throw std::invalid_argument("experiments.run_fig5: need at least 2 grid points");
    const double sigma2 = 1.0;
    const double D = sigma2 - eps;
    CsvTable t;
    t.extra_columns = {"eta_single", "eta_all"};
    for (int K : {2, 4, 6, 8, 10}) {
        double d_star = md_independent_point(sigma2, D, K);
        char label[32];
        std::snprintf(label, sizeof label, "fig5_K%d", K);
        for (int j = 0; j < grid_points; ++j) {
            // two decades of D_all ending exactly at the independent point
            double frac = double(j) / double(grid_points - 1);
            double d_all = d_star * std::pow(10.0, -2.0 * (1.0 - frac));
            MdEfficiency eff = md_efficiency(sigma2, eps, d_all, K);
            CsvTable::Row row;
            row.point = {md_symmetric_rate(sigma2, D, d_all, K), d_all, K, 1, label};
            row.extras = {fmt_g17(eff.eta_single), fmt_g17(eff.eta_all)};
            t.rows.push_back(std::move(row));
        }
    }
    return t;
}

CsvTable run_fig6(int K, int grid_points) {
    if (K < 2) throw std::invalid_argument("experiments.run_fig6: K must be at least 2");
    if (grid_points < 2)
        throw std::invalid_argument("experiments.run_fig6: need at least 2 grid points");
    const double sigma2 = 1.0;
    CsvTable t;
    t.extra_columns = {"eta_uncond", "eta_md", "sigmaN2"};
    char label[32];
    std::snprintf(label, sizeof label, "fig6_K%d", K);
    for (int j = 0; j < grid_points; ++j) {
        double d_all = sigma2 * double(j + 1) / double(grid_points + 1);
        UncondVsMd row_vals = uncond_vs_md(sigma2, d_all, K);
        CsvTable::Row row;
        row.point = {md_min_sum_rate(sigma2, d_all, K), d_all, K, 1, label};
        row.extras = {fmt_g17(row_vals.eta_uncond), fmt_g17(row_vals.eta_md),
                      fmt_g17(uncond_noise_for_combined(sigma2, d_all, K))};
        t.rows.push_back(std::move(row));
    }
    return t;
}

CsvTable run_fig7(double xi, int rounds) {
    TvqMultiRound mr = tvq_multiround_gaussian(1.0, xi, rounds);
    CsvTable t;
    t.extra_columns = {"round_rate", "eta", "distortion_db"};
    for (std::size_t m = 0; m < mr.rounds.size(); ++m) {
        const TvqRound& r = mr.rounds[m];
        CsvTable::Row row;
        row.point = {r.cum_rate, r.distortion, 1, int(m + 1), "fig7"};
        row.extras = {fmt_g17(r.rate), fmt_g17(r.eta), fmt_g17(to_db(r.distortion))};
        t.rows.push_back(std::move(row));
    }
    return t;
}

CsvTable run_fig8(const std::vector<double>& thresholds, int d, std::size_t L,
                  std::uint64_t seed, ExecMode mode) {
    TvqMultiRound mr = tvq_multiround_laplacian(thresholds, d, L, seed, mode);
    const double b = 1.0 / std::sqrt(2.0);
    CsvTable t;
    t.extra_columns = {"round_rate", "eta", "distortion_db", "rate_loss"};
    for (std::size_t m = 0; m < mr.rounds.size(); ++m) {
        const TvqRound& r = mr.rounds[m];
        double slb = clamp_nonneg(std::log2(b / r.distortion));
        CsvTable::Row row;
        row.point = {r.cum_rate, r.distortion, 1, int(m + 1), "fig8"};
        row.extras = {fmt_g17(r.rate), fmt_g17(r.eta), fmt_g17(to_db(r.distortion)),
                      fmt_g17(r.cum_rate - slb)};
        t.rows.push_back(std::move(row));
    }
    return t;
}

namespace {

struct Verifier {
    std::ostream& out;
    int failures = 0;

    void check(bool ok, const std::string& name, const std::string& detail) {
        out << (ok ? "ok   " : "FAIL ") << name << ": " << detail << '\n';
        if (!ok) ++failures;
    }
};

}  // namespace

int run_verify(std::ostream& out) {
    Verifier v{out};

    auto immse_case = [&](const char* name, const ChannelSource& s) {
        double worst = 0.0;
        for (const ImmseRow& row : immse_check(s, 1, {0.1, 0.5, 1.0}))
            worst = std::max(worst, row.rel_err);
        v.check(worst < 1e-4, name, "max relative derivative error " + fmt_g17(worst));
    };
    immse_case("immse_gaussian", ChannelSource::gaussian(1.0));
    immse_case("immse_binary", ChannelSource::binary());
    {
        ChannelSource bin = ChannelSource::binary();
        auto residual = [&](double g) {
            double expansion =
                kLog2E * (2.0 * g / 2.0 - 4.0 * g * g / 4.0);  // K = 2, unit variance
            return std::fabs(awgn_mi(bin, 2.0 * g) - expansion) / (g * g);
        };
        double r2 = residual(1e-2), r3 = residual(1e-3);
        v.check(r3 < 0.5 * r2, "lowsnr_expansion",
                "residual/gamma^2 " + fmt_g17(r2) + " -> " + fmt_g17(r3));
    }
    auto oversampling_case = [&](const char* name, const ChannelSource& s, double gamma) {
        double worst = 0.0;
        for (int K : {1, 2, 3})
            worst = std::max(worst, oversampling_identity(AwgnChannel::make(s, K, gamma)));
        v.check(worst < 1e-6, name, "max residual over K in {1,2,3} " + fmt_g17(worst));
    };
    oversampling_case("oversampling_gaussian", ChannelSource::gaussian(1.0), 1.0);
    oversampling_case("oversampling_binary", ChannelSource::binary(), 0.5);
    {
        DiscreteJoint ident = DiscreteJoint::make({0.5, 0.5}, {{1.0, 0.0}, {0.0, 1.0}}, {});
        DiscreteJoint indep = DiscreteJoint::make({0.5, 0.5}, {{0.3, 0.7}, {0.3, 0.7}}, {});
        double i1 = mi_discrete(ident, MiPair::XY);
        double i0 = mi_discrete(indep, MiPair::XY);
        VncFamily fam = make_vnc_family(3, 3, 3, 20240801ULL);
        DiscreteJoint markov = vnc_joint(fam, 0.3);
        double chain = std::fabs(mi_discrete(markov, MiPair::X_YZ) -
                                 (mi_discrete(markov, MiPair::XY) +
                                  mi_discrete(markov, MiPair::XZ) -
                                  mi_discrete(markov, MiPair::YZ)));
        v.check(std::fabs(i1 - 1.0) < 1e-12 && std::fabs(i0) < 1e-9 && chain < 1e-12,
                "mi_discrete", "identity " + fmt_g17(i1) + ", chain residual " + fmt_g17(chain));
    }
    {
        VncFamily fam = make_vnc_family(3, 3, 3, 20240801ULL);
        auto rows = vnc_scaling(fam, {1e-2, 1e-4});
        const VncReport& coarse = rows.front();
        const VncReport& fine = rows.back();
        bool conv = std::fabs(fine.ixy_over_eps2 - fine.predicted) < 1e-3 * fine.predicted;
        bool cascade = coarse.iyz / coarse.ixy < 1e-2 && fine.iyz / fine.ixy < 1e-6;
        v.check(conv && cascade, "vnc_scaling",
                "I(X;Y)/eps^2 " + fmt_g17(fine.ixy_over_eps2) + " vs " + fmt_g17(fine.predicted) +
                    ", cascade ratio " + fmt_g17(fine.iyz / fine.ixy));
    }
    {
        Eps1Report coarse = eps1_ratio(0.1);
        Eps1Report fine = eps1_ratio(1e-4);
        double chain = std::fabs(fine.ixyz - (fine.ixy + fine.ixz - fine.iyz));
        v.check(coarse.ratio > 0.9 && coarse.ratio < 1.0 && std::fabs(fine.ratio - 1.0) < 1e-2 &&
                    chain < 1e-9,
                "eps1_ratio", "ratio " + fmt_g17(coarse.ratio) + " -> " + fmt_g17(fine.ratio));
    }
    {
        CondImmse full = conditional_immse_gaussian(1.0, 1.0, 0.01);
        double prev = 1e300;
        bool shrinking = true;
        for (double g : {0.1, 0.01, 0.001}) {
            CondImmse c = conditional_immse_gaussian(0.5, 1.0, g);
            double scaled = c.residual / (g * g);
            shrinking = shrinking && scaled < prev;
            prev = scaled;
        }
        v.check(full.exact == 0.0 && shrinking, "conditional_immse",
                "full side info " + fmt_g17(full.exact) + ", residual/gamma^2 shrinking");
    }
    {
        LinearityCheck g = mmse_linearity_gaussian(0.5, 1.0);
        LinearityCheck m = mmse_linearity_mixture(0.5, 0.5, 0.5, 2.0);
        LinearityCheck c = mmse_linearity_constant(1.5);
        v.check(g.linear && !m.linear && m.mean_of_square > m.square_of_mean && c.linear,
                "mmse_linearity",
                "mixture gap " + fmt_g17(m.mean_of_square - m.square_of_mean));
    }
    {
        bool ok = true;
        std::string detail;
        for (const ChannelSource& s :
             {ChannelSource::binary(), ChannelSource::uniform(std::sqrt(3.0)),
              ChannelSource::laplacian(1.0 / std::sqrt(2.0))}) {
            SlopeCheck sc = additive_rdf_slope(s);
            ok = ok && std::fabs(sc.measured - sc.expected) < 0.01 * std::fabs(sc.expected);
            detail += fmt_g17(sc.measured) + " ";
        }
        v.check(ok, "additive_rdf_slope", detail + "vs " + fmt_g17(-0.5 * kLog2E));
    }
    {
        double prev = 0.0;
        bool increasing = true;
        bool slope_ok = true;
        double base = mixture_rate_loss(1.0).ratio;
        for (double s1 : {10.0, 100.0, 1000.0}) {
            MixtureRateLoss r = mixture_rate_loss(s1);
            increasing = increasing && r.ratio > prev;
            prev = r.ratio;
            slope_ok = slope_ok && std::fabs(r.cond_slope.measured - r.cond_slope.expected) <
                                       0.01 * std::fabs(r.cond_slope.expected);
        }
        v.check(std::fabs(base - 1.0) < 0.02 && increasing && slope_ok, "mixture_rate_loss",
                "ratio at 1 is " + fmt_g17(base) + ", growing to " + fmt_g17(prev));
    }
    {
        WorstCaseBound g = gaussian_worst_bound(ChannelSource::gaussian(1.0), 0.1, 0.025, 2, 4);
        bool lap_ok = true;
        double prev = 1e300;
        for (double d1 : {1e-1, 1e-2, 1e-3}) {
            WorstCaseBound b = gaussian_worst_bound(
                ChannelSource::laplacian(1.0 / std::sqrt(2.0)), d1, d1 / 4.0, 2, 4);
            lap_ok = lap_ok && b.margin >= 0.0 && b.margin < prev;
            prev = b.margin;
        }
        WorstCaseBound u =
            gaussian_worst_bound(ChannelSource::uniform(std::sqrt(3.0)), 1e-2, 2.5e-3, 2, 4);
        v.check(g.margin == 0.0 && lap_ok && u.margin >= 0.0, "gaussian_worst_bound",
                "gaussian margin " + fmt_g17(g.margin) + ", laplacian slack down to " +
                    fmt_g17(prev));
    }

    out << (v.failures == 0 ? "all checks passed" : "checks failed") << '\n';
    return v.failures;
}

}  // namespace mdfb

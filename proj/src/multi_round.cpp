#include "mdfb/multi_round.hpp"

#include <cmath>
#include <stdexcept>

#include "mdfb/rdf.hpp"

namespace mdfb {

RoundPlan RoundPlan::make(int K, long long M, ScheduleKind schedule, double sigma2,
                          double target) {
    if (K < 1) throw std::invalid_argument("multi_round.round_plan: K must be at least 1");
    if (M < 1) throw std::invalid_argument("multi_round.round_plan: M must be at least 1");
    if (sigma2 <= 0.0)
        throw std::invalid_argument("multi_round.round_plan: sigma2 must be positive");
    if (target <= 0.0 || target >= sigma2)
        throw std::invalid_argument("multi_round.round_plan: target must lie in (0, sigma2)");
    return {K, M, schedule, sigma2, target};
}

double gaussian_round(double d, double D_prev, int K) {
    if (D_prev <= 0.0 || d <= 0.0 || d > D_prev)
        throw std::invalid_argument("multi_round.gaussian_round: requires 0 < d <= D_prev");
    if (K < 1) throw std::invalid_argument("multi_round.gaussian_round: K must be at least 1");
    return d / (K - (K - 1) * d / D_prev);
}

double gaussian_round_inverse(double D, double D_prev, int K) {
    if (D_prev <= 0.0 || D <= 0.0 || D >= D_prev)
        throw std::invalid_argument("multi_round.gaussian_round_inverse: requires 0 < D < D_prev");
    if (K < 1) throw std::invalid_argument("multi_round.gaussian_round_inverse: K must be at least 1");
    return double(K) * D * D_prev / (D_prev + (K - 1) * D);
}

TrajectoryRecord run_gaussian_trajectory(const RoundPlan& plan) {
    if (plan.M > 2000000)
        throw std::invalid_argument("multi_round.run_gaussian_trajectory: M too large to record; "
                                    "use the closed forms");
    TrajectoryRecord rec;
    rec.K = plan.K;
    rec.schedule = plan.schedule;
    rec.rounds.reserve(std::size_t(plan.M));
    double D_prev = plan.sigma2;
    double cum = 0.0;
    if (plan.schedule == ScheduleKind::DbUniform) {
        double rho = std::pow(plan.target / plan.sigma2, 1.0 / double(plan.M));
        for (long long m = 1; m <= plan.M; ++m) {
            double D = plan.sigma2 * std::pow(rho, double(m));
            double d = gaussian_round_inverse(D, D_prev, plan.K);
            double r = 0.5 * std::log2(D_prev / d);
            cum += plan.K * r;
            rec.rounds.push_back({d, D, r, cum});
            D_prev = D;
        }
    } else {
        double u = std::pow(plan.target / plan.sigma2, 1.0 / double(plan.M));
        double r = 0.5 * std::log2(plan.sigma2 / plan.target) / double(plan.M);
        for (long long m = 1; m <= plan.M; ++m) {
            double d = D_prev * u;
            double D = gaussian_round(d, D_prev, plan.K);
            cum += plan.K * r;
            rec.rounds.push_back({d, D, r, cum});
            D_prev = D;
        }
    }
    rec.total_rate = cum;
    rec.final_distortion = D_prev;
    return rec;
}

double gaussian_asymptotic_gap(double sigma2, double d, int K, long long M) {
    if (sigma2 <= 0.0 || d <= 0.0 || d >= sigma2)
        throw std::invalid_argument("multi_round.gaussian_asymptotic_gap: requires 0 < d < sigma2");
    if (K < 1 || M < 1)
        throw std::invalid_argument("multi_round.gaussian_asymptotic_gap: K and M must be at least 1");
    double t = std::log(d / sigma2) / double(M);  // log of the per-round ratio u
    double one_minus_u = -std::expm1(t);
    return double(M) / (2.0 * std::log(2.0)) *
           ((K - 1) * t + std::log1p((K - 1) * one_minus_u));
}

double gaussian_equal_rate_final(double sigma2, double d, int K, long long M) {
    if (sigma2 <= 0.0 || d <= 0.0 || d >= sigma2)
        throw std::invalid_argument("multi_round.gaussian_equal_rate_final: requires 0 < d < sigma2");
    if (K < 1 || M < 1)
        throw std::invalid_argument("multi_round.gaussian_equal_rate_final: K and M must be at least 1");
    double t = std::log(d / sigma2) / double(M);
    double one_minus_u = -std::expm1(t);
    double log_ratio = t - std::log1p((K - 1) * one_minus_u);
    return sigma2 * std::exp(double(M) * log_ratio);
}

ExpTrajectory run_exponential_trajectory(double lambda1, int K, double R_total,
                                         long long M) {
    if (lambda1 <= 0.0 || R_total <= 0.0)
        throw std::invalid_argument("multi_round.run_exponential_trajectory: lambda1 and R_total "
                                    "must be positive");
    if (K < 1 || M < 1)
        throw std::invalid_argument("multi_round.run_exponential_trajectory: K and M must be at "
                                    "least 1");
    const double r = R_total / (double(K) * double(M));
    const double growth = 1.0 + K * std::expm1(r * std::log(2.0));
    ExpTrajectory traj;
    const long long record_cap = 1000000;
    double lambda = lambda1;
    for (long long m = 1; m <= M; ++m) {
        double next = lambda * growth;
        if (M <= record_cap)
            traj.rounds.push_back({lambda, 1.0 / next, double(m) * K * r});
        lambda = next;
    }
    traj.final_lambda = exponential_final_lambda(lambda1, K, R_total, M);
    traj.final_dbar = 1.0 / traj.final_lambda;
    return traj;
}

double exponential_final_lambda(double lambda1, int K, double R_total, long long M) {
    if (lambda1 <= 0.0 || R_total <= 0.0)
        throw std::invalid_argument("multi_round.exponential_final_lambda: lambda1 and R_total "
                                    "must be positive");
    if (K < 1 || M < 1)
        throw std::invalid_argument("multi_round.exponential_final_lambda: K and M must be at "
                                    "least 1");
    const double r = R_total / (double(K) * double(M));
    double log_growth = std::log1p(K * std::expm1(r * std::log(2.0)));
    return lambda1 * std::exp(double(M) * log_growth);
}

std::vector<EfficiencyRow> efficiency_table(double sigma2, double D_final,
                                            const std::vector<std::pair<int, long long>>& cases) {
    std::vector<EfficiencyRow> rows;
    rows.reserve(cases.size());
    const double rdf = gaussian_rdf(sigma2, D_final);
    for (auto [K, M] : cases) {
        RoundPlan plan = RoundPlan::make(K, M, ScheduleKind::DbUniform, sigma2, D_final);
        TrajectoryRecord rec = run_gaussian_trajectory(plan);
        EfficiencyRow row;
        row.K = K;
        row.M = M;
        row.per_round_rate = rec.rounds.front().rate;
        row.sum_rate = rec.total_rate;
        row.eta = efficiency(rdf, rec.total_rate);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace mdfb

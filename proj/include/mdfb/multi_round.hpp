#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace mdfb {

enum class ScheduleKind {
    DbUniform,  // distortion decreases by a fixed factor per round; target is D_final
    EqualRate,  // equal per-round rate; target is the single-chain distortion d
};

struct RoundPlan {
    int K = 1;
    long long M = 1;
    ScheduleKind schedule = ScheduleKind::DbUniform;
    double sigma2 = 1.0;
    double target = 0.1;

    static RoundPlan make(int K, long long M, ScheduleKind schedule, double sigma2,
                          double target);
};

struct RoundRecord {
    double d = 0.0;         // per-description distortion of the round
    double D = 0.0;         // distortion after combining the K descriptions
    double rate = 0.0;      // per-description rate of the round, bits
    double cum_rate = 0.0;  // cumulative sum rate over all descriptions, bits
};

struct TrajectoryRecord {
    std::vector<RoundRecord> rounds;
    double total_rate = 0.0;  // sum rate, bits
    double final_distortion = 0.0;
    int K = 1;
    ScheduleKind schedule = ScheduleKind::DbUniform;
};

// Distortion after combining K descriptions each of distortion d, when the
// previous combined distortion was D_prev, and the inverse map.
double gaussian_round(double d, double D_prev, int K);
double gaussian_round_inverse(double D, double D_prev, int K);

TrajectoryRecord run_gaussian_trajectory(const RoundPlan& plan);

// R(D^(M)) - sum rate for the equal-rate schedule, in bits (nonpositive);
// stable for M up to 1e9.
double gaussian_asymptotic_gap(double sigma2, double d, int K, long long M);

// Final combined distortion of the equal-rate schedule, stable for large M.
double gaussian_equal_rate_final(double sigma2, double d, int K, long long M);

struct ExpRoundRecord {
    double lambda = 0.0;  // source parameter entering the round
    double dbar = 0.0;    // combined distortion after the round
    double cum_rate = 0.0;
};

struct ExpTrajectory {
    std::vector<ExpRoundRecord> rounds;
    double final_lambda = 0.0;
    double final_dbar = 0.0;
};

// M rounds of K descriptions for the one-sided exponential source, with the
// total rate budget split evenly: each description gets R_total/(K*M) bits.
ExpTrajectory run_exponential_trajectory(double lambda1, int K, double R_total,
                                         long long M);

// Closed form for the final parameter, stable for large M.
double exponential_final_lambda(double lambda1, int K, double R_total, long long M);

struct EfficiencyRow {
    int K = 1;
    long long M = 1;
    double per_round_rate = 0.0;  // per description, bits
    double sum_rate = 0.0;
    double eta = 0.0;
};

std::vector<EfficiencyRow> efficiency_table(double sigma2, double D_final,
                                            const std::vector<std::pair<int, long long>>& cases);

}  // namespace mdfb

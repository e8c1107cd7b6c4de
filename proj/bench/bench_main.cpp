#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "mdfb/md_feedback.hpp"
#include "mdfb/models.hpp"
#include "mdfb/parallel.hpp"
#include "mdfb/single_round.hpp"
#include "mdfb/tvq.hpp"

namespace {

using mdfb::ExecMode;

struct Case {
    std::string name;
    // Returns a digest of the result so the two modes can be compared bit
    // for bit; any mismatch is a correctness bug, not a benchmark artifact.
    std::function<double(ExecMode)> run;
};

double run_timed(const Case& c, ExecMode mode, double* out) {
    auto t0 = std::chrono::steady_clock::now();
    *out = c.run(mode);
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main() {
    using namespace mdfb;

    std::vector<Case> cases;

    cases.push_back({"exp_round_K5_2e6", [](ExecMode mode) {
                         ExpChannelSpec spec = ExpChannelSpec::make(0.2, 4.0, 5);
                         ExpRoundResult r = simulate_exp_round(spec, 2000000, 99, mode);
                         return r.dbar + r.lambda_fit + r.corr;
                     }});

    cases.push_back({"feedback_K3_M20_2e5", [](ExecMode mode) {
                         ErasureTrace trace = ErasureTrace::iid_bernoulli(0.3, 17);
                         auto rows = feedback_sample_validation(1.0, 3, 20, 0.25, trace,
                                                                200000, 4242, mode);
                         double acc = 0.0;
                         for (const auto& row : rows) acc += row.empirical;
                         return acc;
                     }});

    cases.push_back({"tvq_laplace_d20_L3e5", [](ExecMode mode) {
                         TvqMultiRound mr =
                             tvq_multiround_laplacian({1.8, 3.0, 1.7}, 20, 300000, 7, mode);
                         return mr.final_distortion + mr.cum_rate;
                     }});

    cases.push_back({"sample_gg_2e6", [](ExecMode mode) {
                         SourceModel gg = SourceModel::generalized_gaussian(0.8, 1.0);
                         std::vector<double> xs = sample(gg, 2000000, 31, mode);
                         double acc = 0.0;
                         for (double x : xs) acc += x;
                         return acc;
                     }});

    std::printf("%-24s %12s %12s %8s  %s\n", "case", "serial ms", "parallel ms", "speedup",
                "match");
    int mismatches = 0;
    for (const Case& c : cases) {
        double serial_digest = 0.0, parallel_digest = 0.0;
        double ts = run_timed(c, ExecMode::Serial, &serial_digest);
        double tp = run_timed(c, ExecMode::Parallel, &parallel_digest);
        bool match = serial_digest == parallel_digest;
        if (!match) ++mismatches;
        std::printf("%-24s %12.1f %12.1f %8.2f  %s\n", c.name.c_str(), ts, tp, ts / tp,
                    match ? "yes" : "NO");
    }
    std::printf("workers: %d\n", worker_count());
    if (mismatches) {
        std::fprintf(stderr, "serial and parallel digests differ in %d case(s)\n", mismatches);
        return 1;
    }
    return 0;
}

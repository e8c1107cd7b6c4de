#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "mdfb/parallel.hpp"
#include "mdfb/rdf.hpp"

namespace mdfb {

// One output table: the five fixed columns of RatePoint followed by
// experiment-specific extras, already formatted.
struct CsvTable {
    struct Row {
        RatePoint point;
        std::vector<std::string> extras;
    };
    std::vector<std::string> extra_columns;
    std::vector<Row> rows;
};

std::string fmt_g17(double x);
std::string fmt_f4(double x);

// Writes the CSV and a one-line JSON metadata sidecar at path + ".meta.jsonl".
void write_csv_with_sidecar(const std::string& path, const CsvTable& table,
                            const std::string& experiment,
                            const std::vector<std::pair<std::string, std::string>>& meta);

CsvTable run_table1();
CsvTable run_fig3();
CsvTable run_fig2(double lambda, int K, bool mc, std::size_t trials, std::uint64_t seed,
                  ExecMode mode);
CsvTable run_fig5(double eps, int grid_points);
CsvTable run_fig6(int K, int grid_points);
CsvTable run_fig7(double xi, int rounds);
CsvTable run_fig8(const std::vector<double>& thresholds, int d, std::size_t L,
                  std::uint64_t seed, ExecMode mode);

// Runs the identity checks, one line per check; returns the failure count.
int run_verify(std::ostream& out);

}  // namespace mdfb

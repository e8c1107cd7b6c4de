#include <cmath>
#include <cstdint>
#include <iostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "mdfb/experiments.hpp"
#include "mdfb/models.hpp"
#include "mdfb/parallel.hpp"
#include "mdfb/tvq.hpp"
#include "mdfb/tvq_io.hpp"

namespace {

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        std::string item = text.substr(start, comma == std::string::npos ? comma : comma - start);
        std::size_t used = 0;
        double value = 0.0;
        try {
            value = std::stod(item, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("cli.parse_double_list: bad number '" + item + "'");
        }
        while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
        if (used != item.size())
            throw std::invalid_argument("cli.parse_double_list: bad number '" + item + "'");
        out.push_back(value);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (out.empty()) throw std::invalid_argument("cli.parse_double_list: empty list");
    return out;
}

std::string describe_count(std::size_t rows) {
    return std::to_string(rows) + (rows == 1 ? " row" : " rows");
}

}  // namespace

int main(int argc, char** argv) {
    using namespace mdfb;

    CLI::App app{"rate-distortion laboratory: figure reproduction, sampling, threshold coding"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read options from an INI file (sections per subcommand)");
    app.allow_config_extras(false);

    CLI::App* rep = app.add_subcommand("reproduce", "write one figure or table as CSV");
    rep->configurable();
    std::string id;
    rep->add_option("id,--id", id, "one of table1, fig2, fig3, fig5, fig6, fig7, fig8")
        ->required()
        ->check(CLI::IsMember({"table1", "fig2", "fig3", "fig5", "fig6", "fig7", "fig8"}));
    std::string out_path;
    rep->add_option("--out", out_path, "output CSV path (default <id>.csv)");
    double lambda = 0.2;
    rep->add_option("--lambda", lambda, "exponential source parameter (fig2)");
    int K = -1;
    rep->add_option("--K", K, "descriptions per round (fig2 default 5, fig6 default 2)");
    std::size_t trials = 1000000;
    rep->add_option("--trials", trials, "Monte Carlo trials per grid point (fig2 with --mc)");
    bool mc = false;
    rep->add_flag("--mc", mc, "add Monte Carlo columns to fig2");
    std::uint64_t seed = 0;
    rep->add_option("--seed", seed, "RNG seed; required for stochastic experiments");
    double xi = 2.0;
    rep->add_option("--xi", xi, "threshold (fig7)");
    int rounds = 5;
    rep->add_option("--rounds", rounds, "refinement rounds (fig7)");
    std::string thresholds_s = "1.8,3.0,1.7";
    rep->add_option("--thresholds", thresholds_s,
                    "comma-separated per-round threshold magnitudes (fig8)");
    int dim = 20;
    rep->add_option("--d", dim, "block dimension (fig8)");
    std::size_t blocks = 300000;
    rep->add_option("--L", blocks, "blocks per chain (fig8)");
    int points = -1;
    rep->add_option("--points", points, "grid points (fig5 default 100, fig6 default 99)");
    double eps = 0.001;
    rep->add_option("--eps", eps, "marginal distortion offset sigma2 - D (fig5)");
    std::string mode_s = "parallel";
    rep->add_option("--mode", mode_s, "serial or parallel execution")
        ->check(CLI::IsMember({"serial", "parallel"}));

    CLI::App* ver = app.add_subcommand("verify", "run the additive-noise identity checks");
    ver->configurable();

    CLI::App* smp = app.add_subcommand("sample", "draw source samples into a sample-matrix file");
    smp->configurable();
    std::string model_s;
    smp->add_option("--model", model_s, "gaussian, exponential, gg, or mixture")
        ->required()
        ->check(CLI::IsMember({"gaussian", "exponential", "gg", "mixture"}));
    double m_sigma2 = 1.0;
    smp->add_option("--sigma2", m_sigma2, "gaussian variance");
    double m_lambda = 1.0;
    smp->add_option("--lambda", m_lambda, "exponential parameter");
    double m_alpha = 1.0;
    smp->add_option("--alpha", m_alpha, "generalized-gaussian scale");
    double m_p = 2.0;
    smp->add_option("--p", m_p, "generalized-gaussian shape");
    double m_p0 = 0.5, m_var0 = 1.0, m_p1 = 0.5, m_var1 = 1.0;
    smp->add_option("--p0", m_p0, "mixture weight of component 0");
    smp->add_option("--var0", m_var0, "mixture variance of component 0");
    smp->add_option("--p1", m_p1, "mixture weight of component 1");
    smp->add_option("--var1", m_var1, "mixture variance of component 1");
    std::uint32_t s_rows = 0, s_cols = 0;
    smp->add_option("--rows", s_rows, "dimensions per block")->required();
    smp->add_option("--cols", s_cols, "number of blocks")->required();
    std::uint64_t s_seed = 0;
    smp->add_option("--seed", s_seed, "RNG seed")->required();
    std::string s_out;
    smp->add_option("--out", s_out, "output matrix path")->required();
    std::string s_mode = "parallel";
    smp->add_option("--mode", s_mode, "serial or parallel execution")
        ->check(CLI::IsMember({"serial", "parallel"}));

    CLI::App* enc = app.add_subcommand("tvq-encode",
                                       "threshold-code every axis of a sample matrix");
    enc->configurable();
    std::string e_in;
    enc->add_option("--in", e_in, "input matrix path")->required();
    double e_xi = 0.0;
    enc->add_option("--xi", e_xi, "threshold")->required();
    double e_sigma2 = 1.0;
    enc->add_option("--sigma2", e_sigma2, "per-axis source variance");
    std::string e_out;
    enc->add_option("--out", e_out, "output prefix for .tvqb and .csv")->required();

    try {
        app.parse(argc, argv);

        if (*rep) {
            ExecMode mode = mode_s == "serial" ? ExecMode::Serial : ExecMode::Parallel;
            std::string path = out_path.empty() ? id + ".csv" : out_path;
            std::vector<std::pair<std::string, std::string>> meta;
            CsvTable table;
            if (id == "table1" || id == "fig3") {
                table = id == "table1" ? run_table1() : run_fig3();
                meta = {{"schedule", "dbuniform"}, {"sigma2", "1"}, {"D_final", "0.1"}};
            } else if (id == "fig2") {
                int k = K < 0 ? 5 : K;
                if (mc && rep->count("--seed") == 0)
                    throw std::invalid_argument("cli.reproduce: fig2 with --mc needs --seed");
                table = run_fig2(lambda, k, mc, trials, seed, mode);
                meta = {{"lambda", fmt_g17(lambda)}, {"K", std::to_string(k)}};
                if (mc) {
                    meta.emplace_back("trials", std::to_string(trials));
                    meta.emplace_back("seed", std::to_string(seed));
                    meta.emplace_back("mode", mode_s);
                }
            } else if (id == "fig5") {
                int pts = points < 0 ? 100 : points;
                table = run_fig5(eps, pts);
                meta = {{"eps", fmt_g17(eps)}, {"points", std::to_string(pts)}};
            } else if (id == "fig6") {
                int k = K < 0 ? 2 : K;
                int pts = points < 0 ? 99 : points;
                table = run_fig6(k, pts);
                meta = {{"K", std::to_string(k)}, {"points", std::to_string(pts)}};
            } else if (id == "fig7") {
                table = run_fig7(xi, rounds);
                meta = {{"xi", fmt_g17(xi)}, {"rounds", std::to_string(rounds)}};
            } else {
                if (rep->count("--seed") == 0)
                    throw std::invalid_argument("cli.reproduce: fig8 needs --seed");
                table = run_fig8(parse_double_list(thresholds_s), dim, blocks, seed, mode);
                meta = {{"thresholds", thresholds_s},
                        {"d", std::to_string(dim)},
                        {"L", std::to_string(blocks)},
                        {"seed", std::to_string(seed)},
                        {"mode", mode_s}};
            }
            write_csv_with_sidecar(path, table, id, meta);
            std::cout << "wrote " << path << " (" << describe_count(table.rows.size()) << ")\n";
        }

        if (*ver) {
            int failures = run_verify(std::cout);
            if (failures > 0)
                throw std::runtime_error("verify: " + std::to_string(failures) +
                                         " checks failed");
        }

        if (*smp) {
            if (s_rows == 0 || s_cols == 0)
                throw std::invalid_argument("cli.sample: rows and cols must be positive");
            SourceModel model;
            if (model_s == "gaussian") {
                model = SourceModel::gaussian(m_sigma2);
            } else if (model_s == "exponential") {
                model = SourceModel::one_sided_exp(m_lambda);
            } else if (model_s == "gg") {
                model = SourceModel::generalized_gaussian(m_alpha, m_p);
            } else {
                model = SourceModel::gaussian_mixture(m_p0, m_var0, m_p1, m_var1);
            }
            ExecMode mode = s_mode == "serial" ? ExecMode::Serial : ExecMode::Parallel;
            SampleMatrix m;
            m.rows = s_rows;
            m.cols = s_cols;
            m.data = sample(model, std::size_t(s_rows) * s_cols, s_seed, mode);
            write_sample_matrix(s_out, m);
            std::cout << "wrote " << s_out << " (" << m.rows << " x " << m.cols << ")\n";
        }

        if (*enc) {
            SampleMatrix m = read_sample_matrix(e_in);
            int n = int(m.rows);
            double sigma = std::sqrt(e_sigma2);
            std::vector<TvqCodebook> books;
            books.reserve(m.rows);
            for (int axis = 0; axis < n; ++axis)
                books.push_back(make_tvq_codebook(n, e_xi, axis, sigma, TvqSign::Upper));
            auto bits = tvq_encode(m.data, n, books);
            write_description_bits(e_out + ".tvqb", bits);

            CsvTable table;
            table.extra_columns = {"capture_fraction", "zhat"};
            for (int axis = 0; axis < n; ++axis) {
                std::size_t ones = 0;
                for (std::uint8_t b : bits[axis]) ones += b;
                CsvTable::Row row;
                row.point = {tvq_axis_rate(sigma, e_xi), tvq_axis_distortion(sigma, e_xi), 1,
                             axis + 1, "axis" + std::to_string(axis)};
                row.extras = {fmt_g17(double(ones) / double(m.cols)),
                              fmt_g17(books[axis].zhat)};
                table.rows.push_back(std::move(row));
            }
            write_csv_with_sidecar(e_out + ".csv", table, "tvq-encode",
                                   {{"in", e_in},
                                    {"xi", fmt_g17(e_xi)},
                                    {"sigma2", fmt_g17(e_sigma2)},
                                    {"blocks", std::to_string(m.cols)}});
            std::cout << "wrote " << e_out << ".tvqb and " << e_out << ".csv\n";
        }
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}

#include "rproj/commands.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rproj/bounds.hpp"

namespace rproj::cli {

namespace {

std::string seed_comment(const std::string& command, std::uint64_t seed)
{
    return "rproj " + command + " seed=" + std::to_string(seed);
}

std::string density_label(double density) { return format_double(density); }

std::vector<Eigen::SparseVector<double>> load_columns(const std::string& input, bool has_header)
{
    const std::filesystem::path path(input);
    if (path.extension() == ".mtx") {
        return read_matrix_market(path).columns();
    }
    std::vector<Eigen::SparseVector<double>> out;
    for (const auto& v : read_csv_vectors(path, has_header)) {
        out.push_back(v.sparseView(0.0, 0.0));
    }
    return out;
}

}  // namespace

std::vector<double> parse_eps_grid(const std::string& spec)
{
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string part; std::getline(ss, part, ':');) {
        parts.push_back(part);
    }
    if (parts.size() != 3) {
        throw std::invalid_argument("eps grid must look like a:b:step");
    }
    const Rational first = parse_rational(parts[0]);
    const Rational last = parse_rational(parts[1]);
    const Rational step = parse_rational(parts[2]);
    if (sgn(step) <= 0 || last < first) {
        throw std::invalid_argument("eps grid needs a positive step and a <= b");
    }
    std::vector<double> grid;
    for (Rational v = first; v <= last; v += step) {
        grid.push_back(to_double(v));
        if (grid.size() > 1'000'000) {
            throw std::invalid_argument("eps grid too large");
        }
    }
    validate_eps_grid(grid);
    return grid;
}

CsvTable moments_table(const MomentsOptions& options)
{
    if (options.sparsities.empty() || options.orders.empty()) {
        throw std::invalid_argument("moments needs at least one --K and one --q");
    }
    CsvTable table;
    table.comments.push_back(seed_comment("moments", options.seed) +
                             " mode=" + (options.exact ? "exact" : "float"));
    table.header.push_back("n");
    for (unsigned q : options.orders) {
        table.header.push_back(std::to_string(q));
        if (options.exact) {
            table.header.push_back(std::to_string(q) + "_exact");
        }
    }
    bool approximate = false;
    for (unsigned long k : options.sparsities) {
        std::vector<std::string> row{std::to_string(k)};
        for (unsigned q : options.orders) {
            const auto value = chaos_extreme_moment_value(k, q);
            approximate = approximate || value.approximate;
            row.push_back(format_double(value.value));
            if (options.exact) {
                row.push_back(value.exact ? to_string(*value.exact) : "");
            }
        }
        table.rows.push_back(std::move(row));
    }
    if (approximate) {
        table.comments.push_back("some values used the approximate float path");
    }
    return table;
}

CsvTable tail_table(const TailOptions& options)
{
    if (options.sparsities.empty()) {
        throw std::invalid_argument("tail needs at least one --K");
    }
    validate_eps_grid(options.eps_grid);
    CsvTable table;
    table.comments.push_back(seed_comment("tail", options.seed) + " m=" +
                             std::to_string(options.rows) + " qmax=" + std::to_string(options.qmax));
    table.comments.push_back("subgamma: variance factor 2m, scale 2; nogo_lower: asymptotic, o(1) set to 0");
    table.header.push_back("eps");
    std::vector<std::vector<TailCurve>> per_k;
    for (unsigned long k : options.sparsities) {
        table.header.push_back("sharp_" + std::to_string(k));
        per_k.push_back(compare_curves(options.rows, k, options.eps_grid, options.qmax));
        const auto& sharp = per_k.back().front();
        table.comments.push_back("sharp_" + std::to_string(k) +
                                 (sharp.approximate ? " approximate" : " exact") +
                                 " best_q=" + sharp.metadata.at("best_q"));
    }
    table.header.insert(table.header.end(), {"achlioptas", "subgamma", "nogo_lower"});
    for (std::size_t e = 0; e < options.eps_grid.size(); ++e) {
        std::vector<std::string> row{format_double(options.eps_grid[e])};
        for (const auto& curves : per_k) {
            row.push_back(format_double(curves[0].points[e].bound));
        }
        for (std::size_t c = 1; c < 4; ++c) {
            row.push_back(format_double(per_k.front()[c].points[e].bound));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

CsvTable simulate_table(const SimulateOptions& options)
{
    validate_eps_grid(options.eps_grid);
    std::vector<double> densities = options.densities;
    if (densities.empty()) {
        densities.push_back(1.0);
    }
    CsvTable table;
    table.comments.push_back(seed_comment("simulate", options.seed) +
                             " m=" + std::to_string(options.rows) +
                             " trials=" + std::to_string(options.trials) +
                             " scheme=" + to_string(options.scheme));

    if (options.input) {
        std::vector<ProjectionVariant> variants;
        for (double p : densities) {
            variants.push_back({options.scheme, p});
        }
        const auto columns = load_columns(*options.input, options.has_header);
        const auto sweep = dataset_distortion_sweep(columns, options.rows, variants, options.trials,
                                                    options.seed, options.eps_grid, options.workers);
        table.comments.push_back("input=" + *options.input +
                                 " skipped_zero_columns=" + std::to_string(sweep.skipped_zero_columns));
        table.header = {"column", "K", "norm", "density", "mean_abs", "rms",
                        "median_abs", "q90_abs", "q99_abs", "max_abs"};
        for (double eps : options.eps_grid) {
            table.header.push_back("ccdf_" + format_double(eps));
        }
        for (const auto& r : sweep.rows) {
            std::vector<std::string> row{std::to_string(r.column), std::to_string(r.sparsity),
                                         format_double(r.norm), format_double(r.density),
                                         format_double(r.mean_abs), format_double(r.rms),
                                         format_double(r.median_abs), format_double(r.q90_abs),
                                         format_double(r.q99_abs), format_double(r.max_abs)};
            for (double c : r.ccdf) {
                row.push_back(format_double(c));
            }
            table.rows.push_back(std::move(row));
        }
        return table;
    }

    const Eigen::Index n = options.dimension > 0 ? options.dimension : options.sparsity;
    const auto x = flat_unit_vector(n, options.sparsity);
    table.comments.push_back("input=flat n=" + std::to_string(n) +
                             " K=" + std::to_string(options.sparsity));
    table.header.push_back("eps");
    std::vector<TailCurve> curves;
    for (double p : densities) {
        const ProjectionSpec spec{options.rows, n, options.scheme, p};
        const auto sample = sample_distortion(spec, x, options.trials, options.seed, options.workers);
        double second = 0.0;
        for (double v : sample.values) {
            second += v * v;
        }
        second /= static_cast<double>(sample.trials());
        table.header.push_back("ccdf_p" + density_label(p));
        table.comments.push_back("p=" + density_label(p) + " second_moment=" + format_double(second));
        curves.push_back(ccdf_from_sample(sample, options.eps_grid));
    }
    for (std::size_t e = 0; e < options.eps_grid.size(); ++e) {
        std::vector<std::string> row{format_double(options.eps_grid[e])};
        for (const auto& curve : curves) {
            row.push_back(format_double(curve.points[e].bound));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

CsvTable dataset_stats_table(const std::string& input, bool has_header)
{
    const auto columns = load_columns(input, has_header);
    CsvTable table;
    table.comments.push_back("rproj dataset-stats seed=0 input=" + input);
    table.header = {"column", "K", "norm", "flatness"};
    for (std::size_t c = 0; c < columns.size(); ++c) {
        const auto s = column_stats(columns[c], c);
        table.rows.push_back({std::to_string(s.column), std::to_string(s.sparsity),
                              format_double(s.norm), format_double(s.flatness)});
    }
    return table;
}

int report_verification(const std::vector<SuiteResult>& results, std::ostream& out)
{
    bool all = true;
    for (const auto& suite : results) {
        out << (suite.passed() ? "PASS " : "FAIL ") << suite.name << ": "
            << suite.checks - suite.failures << '/' << suite.checks << " checks passed\n";
        for (const auto& w : suite.witnesses) {
            out << "  witness: " << w << '\n';
        }
        all = all && suite.passed();
    }
    return all ? ExitCode::ok : ExitCode::verification_failed;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Sparsity-aware moment and tail bounds for Rademacher random projections", "rproj"};
    app.require_subcommand(1);

    std::optional<std::string> output;
    std::vector<std::string> eps_grid_specs;
    std::vector<double> eps_values;
    auto add_output = [&](CLI::App* sub) {
        sub->add_option("--output", output, "Write CSV here instead of stdout");
    };
    auto add_grid = [&](CLI::App* sub) {
        sub->add_option("--eps-grid", eps_grid_specs, "Grid a:b:step")->expected(1);
        sub->add_option("--eps", eps_values, "Single eps value (repeatable)");
    };

    MomentsOptions moments;
    auto* moments_cmd = app.add_subcommand("moments", "Extreme chaos moments per sparsity");
    moments_cmd->add_option("--K", moments.sparsities, "Sparsity (repeatable)")->required()->delimiter(',');
    moments_cmd->add_option("--q", moments.orders, "Moment order (repeatable)")->required()->delimiter(',');
    moments_cmd->add_flag("--exact", moments.exact, "Add exact p/q columns");
    moments_cmd->add_option("--seed", moments.seed, "Echoed for reproducibility");
    add_output(moments_cmd);

    TailOptions tail;
    auto* tail_cmd = app.add_subcommand("tail", "Tail-bound comparison curves");
    tail_cmd->add_option("--m", tail.rows, "Embedding dimension")->check(CLI::PositiveNumber);
    tail_cmd->add_option("--K", tail.sparsities, "Sparsity (repeatable)")->required()->delimiter(',');
    tail_cmd->add_option("--qmax", tail.qmax, "Largest even moment order");
    tail_cmd->add_option("--seed", tail.seed, "Echoed for reproducibility");
    add_grid(tail_cmd);
    add_output(tail_cmd);

    SimulateOptions sim;
    std::string scheme_name = "dense";
    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo distortion CCDFs");
    sim_cmd->add_option("--n", sim.dimension, "Input dimension (defaults to K)");
    sim_cmd->add_option("--K", sim.sparsity, "Sparsity of the flat input")->check(CLI::PositiveNumber);
    sim_cmd->add_option("--m", sim.rows, "Embedding dimension")->check(CLI::PositiveNumber);
    sim_cmd->add_option("--scheme", scheme_name, "dense or sparse")
        ->check(CLI::IsMember({"dense", "sparse"}));
    sim_cmd->add_option("--density", sim.densities, "Embedding density (repeatable)")->delimiter(',');
    sim_cmd->add_option("--trials", sim.trials, "Trials")->check(CLI::PositiveNumber);
    sim_cmd->add_option("--seed", sim.seed, "RNG seed");
    sim_cmd->add_option("--input", sim.input, "Dataset (.mtx or .csv) for real-world mode");
    sim_cmd->add_flag("--has-header", sim.has_header, "CSV input has a header row");
    sim_cmd->add_option("--threads", sim.workers, "Worker threads");
    add_grid(sim_cmd);
    add_output(sim_cmd);

    std::string stats_input;
    bool stats_header = false;
    auto* stats_cmd = app.add_subcommand("dataset-stats", "Per-column sparsity and flatness");
    stats_cmd->add_option("--input", stats_input, "Dataset (.mtx or .csv)")->required();
    stats_cmd->add_flag("--has-header", stats_header, "CSV input has a header row");
    add_output(stats_cmd);

    VerifyConfig verify;
    auto* verify_cmd = app.add_subcommand("verify", "Run the exact oracle suites");
    verify_cmd->add_option("--k-cap", verify.k_cap, "Formula suite sparsity cap");
    verify_cmd->add_option("--q-cap", verify.q_cap, "Formula suite order cap");
    verify_cmd->add_option("--pairs", verify.pairs, "Robin-Hood transfer pairs");
    verify_cmd->add_option("--domination-profiles", verify.domination_profiles, "Profiles for the domination suite");
    verify_cmd->add_option("--khintchine-profiles", verify.khintchine_profiles, "Profiles for the Khintchine suite");
    verify_cmd->add_option("--enum-cap", verify.limits.enumeration_cap, "Sign enumeration sparsity cap");
    verify_cmd->add_option("--atom-cap", verify.limits.atom_cap, "Atom cap for exact convolutions");
    verify_cmd->add_option("--seed", verify.seed, "Seed for random profiles");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ExitCode::ok : ExitCode::usage_error;
    }

    auto grid = [&](const char* fallback) {
        std::vector<double> g;
        for (const auto& spec : eps_grid_specs) {
            const auto part = parse_eps_grid(spec);
            g.insert(g.end(), part.begin(), part.end());
        }
        g.insert(g.end(), eps_values.begin(), eps_values.end());
        return g.empty() ? parse_eps_grid(fallback) : g;
    };

    auto emit = [&](const CsvTable& table) {
        if (output) {
            write_csv(table, std::filesystem::path(*output));
        } else {
            write_csv(table, out);
        }
    };

    try {
        if (*moments_cmd) {
            emit(moments_table(moments));
        } else if (*tail_cmd) {
            tail.eps_grid = grid("0.1:1.0:0.1");
            emit(tail_table(tail));
        } else if (*sim_cmd) {
            sim.scheme = parse_scheme(scheme_name);
            sim.eps_grid = grid("0.1:1.0:0.1");
            emit(simulate_table(sim));
        } else if (*stats_cmd) {
            emit(dataset_stats_table(stats_input, stats_header));
        } else if (*verify_cmd) {
            out << "# rproj verify seed=" << verify.seed << '\n';
            return report_verification(run_all_suites(verify), out);
        }
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return ExitCode::io_error;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return ExitCode::io_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return ExitCode::usage_error;
    }
    return ExitCode::ok;
}

}  // namespace rproj::cli

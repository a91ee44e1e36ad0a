#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rproj/dataio.hpp"
#include "rproj/moments.hpp"
#include "rproj/projections.hpp"
#include "rproj/verify.hpp"

namespace rproj::cli {

enum ExitCode : int { ok = 0, verification_failed = 1, usage_error = 2, io_error = 3 };

struct MomentsOptions {
    std::vector<unsigned long> sparsities;
    std::vector<unsigned> orders;
    bool exact = false;
    std::uint64_t seed = 0;
};

struct TailOptions {
    unsigned long rows = 100;
    std::vector<unsigned long> sparsities;
    std::vector<double> eps_grid;
    unsigned qmax = kDefaultQmax;
    std::uint64_t seed = 0;
};

struct SimulateOptions {
    Eigen::Index dimension = 0;  ///< defaults to the sparsity when 0
    Eigen::Index sparsity = 1;
    Eigen::Index rows = 10;
    Scheme scheme = Scheme::dense_rademacher;
    std::vector<double> densities;
    std::size_t trials = 10000;
    std::vector<double> eps_grid;
    std::uint64_t seed = 0;
    std::optional<std::string> input;
    bool has_header = false;
    unsigned workers = 1;
};

/// Header "n,<q1>,<q2>,..."; exact mode adds a "<q>_exact" column with "p/q"
/// after each float column.
CsvTable moments_table(const MomentsOptions& options);

/// Columns: eps, sharp_<K> per K, achlioptas, subgamma, nogo_lower.
CsvTable tail_table(const TailOptions& options);

/// Flat-vector mode: eps plus one CCDF column per density. Dataset mode
/// (input set): one summary row per (column, density).
CsvTable simulate_table(const SimulateOptions& options);

/// Columns: column, K, norm, flatness.
CsvTable dataset_stats_table(const std::string& input, bool has_header);

/// Writes one line per suite plus any witnesses; returns the exit code.
int report_verification(const std::vector<SuiteResult>& results, std::ostream& out);

/// Parses "a:b:step" with exact decimal stepping, so 0.1:1.0:0.1 yields the
/// doubles nearest to 0.1, 0.2, ..., 1.0.
std::vector<double> parse_eps_grid(const std::string& spec);

/// Full command line front end.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rproj::cli

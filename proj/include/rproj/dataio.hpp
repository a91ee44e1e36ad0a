#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace rproj {

/// File could not be opened, read or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input; what() reads "<path>:<line>: <message>".
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& path, std::size_t line, const std::string& message);

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Sparse matrix loaded from disk, stored column-compressed.
struct SparseDataset {
    std::string name;
    std::filesystem::path source;
    /// FNV-1a 64 of the raw file bytes.
    std::uint64_t checksum = 0;
    Eigen::SparseMatrix<double, Eigen::ColMajor> matrix;
    /// Explicit zero entries (after duplicate summation) that were not stored.
    std::size_t dropped_zeros = 0;
    std::size_t merged_duplicates = 0;

    Eigen::Index rows() const { return matrix.rows(); }
    Eigen::Index cols() const { return matrix.cols(); }
    Eigen::SparseVector<double> column(Eigen::Index j) const;
    std::vector<Eigen::SparseVector<double>> columns() const;
};

/// Reads "%%MatrixMarket matrix {coordinate|array} {real|pattern} {general|symmetric|skew-symmetric}".
/// Coordinates are 1-based in the file; duplicates are summed; symmetric
/// storage is expanded. Integer and complex fields are rejected.
SparseDataset read_matrix_market(const std::filesystem::path& path);
SparseDataset read_matrix_market(std::istream& in, const std::string& name = "<stream>");

/// Rectangular numeric CSV to vectors, one per column (or per row when
/// `by_rows`). Lines starting with '#' and blank lines are skipped.
std::vector<Eigen::VectorXd> read_csv_vectors(const std::filesystem::path& path,
                                              bool has_header, bool by_rows = false);
std::vector<Eigen::VectorXd> read_csv_vectors(std::istream& in, bool has_header,
                                              bool by_rows = false,
                                              const std::string& name = "<stream>");

struct ColumnStats {
    std::size_t column = 0;
    Eigen::Index sparsity = 0;
    double norm = 0.0;
    /// (sum x^2)^2 / (K sum x^4), in (0, 1]; 1 iff all nonzero |x_i| agree.
    /// Reported as 0 for an all-zero column.
    double flatness = 0.0;
};

ColumnStats column_stats(const Eigen::SparseVector<double>& x, std::size_t column = 0);
std::vector<ColumnStats> sparsity_stats(const SparseDataset& dataset);

/// Shortest decimal that parses back to the same double.
std::string format_double(double value);

/// Table of already-formatted cells with optional leading '#' comment lines.
struct CsvTable {
    std::vector<std::string> comments;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// RFC-4180 quoting, LF line endings. Throws unless every row matches the header width.
void write_csv(const CsvTable& table, std::ostream& out);
void write_csv(const CsvTable& table, const std::filesystem::path& path);

}  // namespace rproj

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "rproj/bounds.hpp"

namespace rproj {

enum class Scheme { dense_rademacher, sparse_rademacher };

std::string to_string(Scheme scheme);
/// Accepts "dense" / "sparse" (and the full enum names).
Scheme parse_scheme(const std::string& text);

/// Shape and sampling law of a projection matrix.
///
/// dense_rademacher: entries +-1/sqrt(m), equiprobable.
/// sparse_rademacher: 0 w.p. 1-p, +-1/sqrt(m p) w.p. p/2 each.
/// Both give E[entry^2] = 1/m.
struct ProjectionSpec {
    Eigen::Index rows = 1;
    Eigen::Index cols = 1;
    Scheme scheme = Scheme::dense_rademacher;
    double density = 1.0;

    /// Throws on non-positive shape, p outside (0, 1], or dense with p != 1.
    void validate() const;
    double scale() const;
};

/// Materialized projection with the seed and substream that produced it.
struct SignMatrix {
    ProjectionSpec spec;
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    Eigen::MatrixXd entries;

    Eigen::Index rows() const { return entries.rows(); }
    Eigen::Index cols() const { return entries.cols(); }
};

/// Signs in {-1, 0, +1} of row `row` restricted to `columns`, as drawn for
/// (seed, stream). Both sample_matrix and the matrix-free path read entries
/// through this, so they agree exactly.
///
/// Dense rows take one bit per column from words [row * ceil(n/64), ...) of
/// the stream (a set bit is -1). Sparse entries use word row * n + col as an
/// inversion draw u: u < p/2 gives -1, u < p gives +1, otherwise 0.
void draw_row_signs(const ProjectionSpec& spec, std::uint64_t seed, std::uint64_t stream,
                    Eigen::Index row, const std::vector<Eigen::Index>& columns,
                    std::vector<int>& signs);

SignMatrix sample_matrix(const ProjectionSpec& spec, std::uint64_t seed,
                         std::uint64_t stream = 0);

/// ||Phi x||^2 / ||x||^2 - 1. Throws on a zero vector or a length mismatch.
double distortion(const SignMatrix& matrix, const Eigen::Ref<const Eigen::VectorXd>& x);

/// Same quantity without materializing Phi: only the support of x is drawn,
/// row sums of squares are Kahan-accumulated. Memory O(nnz(x)).
double distortion_matrix_free(const ProjectionSpec& spec, std::uint64_t seed,
                              std::uint64_t stream, const Eigen::SparseVector<double>& x);

/// Realized distortions, one per trial, in trial order.
struct DistortionSample {
    std::vector<double> values;
    Eigen::Index dimension = 0;
    Eigen::Index sparsity = 0;
    double norm = 0.0;
    ProjectionSpec spec;
    std::uint64_t seed = 0;

    std::size_t trials() const { return values.size(); }
};

/// Trial t projects x with the matrix of substream t. Trials are spread over
/// `workers` threads; the result does not depend on the worker count.
DistortionSample sample_distortion(const ProjectionSpec& spec,
                                   const Eigen::SparseVector<double>& x, std::size_t trials,
                                   std::uint64_t seed, unsigned workers = 1);

/// Unit vector with `sparsity` equal entries in its leading coordinates.
Eigen::SparseVector<double> flat_unit_vector(Eigen::Index dimension, Eigen::Index sparsity);

/// Fraction of |values| strictly above each eps.
TailCurve ccdf_from_sample(const DistortionSample& sample, const std::vector<double>& eps_grid);

/// Empirical CCDF of |E(x)| for the flat K-sparse unit vector in dimension n.
TailCurve empirical_ccdf(Eigen::Index dimension, Eigen::Index sparsity,
                         const ProjectionSpec& projection, std::size_t trials,
                         const std::vector<double>& eps_grid, std::uint64_t seed,
                         unsigned workers = 1);

struct ProjectionVariant {
    Scheme scheme = Scheme::dense_rademacher;
    double density = 1.0;
};

struct SweepRow {
    std::size_t column = 0;
    Eigen::Index sparsity = 0;
    double norm = 0.0;
    Scheme scheme = Scheme::dense_rademacher;
    double density = 1.0;
    double mean_abs = 0.0;
    double rms = 0.0;
    double median_abs = 0.0;
    double q90_abs = 0.0;
    double q99_abs = 0.0;
    double max_abs = 0.0;
    /// CCDF of |E| at the sweep's eps grid (empty when no grid was given).
    std::vector<double> ccdf;
};

struct SweepTable {
    std::vector<SweepRow> rows;
    std::size_t skipped_zero_columns = 0;
    std::vector<double> eps_grid;
};

/// Projects every nonzero column under every (scheme, density) variant.
/// Trial t of every column and variant shares substream t. Throws when all
/// columns are zero.
SweepTable dataset_distortion_sweep(const std::vector<Eigen::SparseVector<double>>& columns,
                                    Eigen::Index rows, const std::vector<ProjectionVariant>& variants,
                                    std::size_t trials, std::uint64_t seed,
                                    const std::vector<double>& eps_grid = {},
                                    unsigned workers = 1);

/// Type-7 (linear interpolation) quantile of sorted data.
double quantile_sorted(const std::vector<double>& sorted, double level);

}  // namespace rproj

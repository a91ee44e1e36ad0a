#include "rproj/projections.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "rproj/rng.hpp"

namespace rproj {

std::string to_string(Scheme scheme)
{
    return scheme == Scheme::dense_rademacher ? "dense" : "sparse";
}

Scheme parse_scheme(const std::string& text)
{
    if (text == "dense" || text == "dense_rademacher") {
        return Scheme::dense_rademacher;
    }
    if (text == "sparse" || text == "sparse_rademacher") {
        return Scheme::sparse_rademacher;
    }
    throw std::invalid_argument("unknown scheme '" + text + "'");
}

void ProjectionSpec::validate() const
{
    if (rows <= 0 || cols <= 0) {
        throw std::invalid_argument("projection shape must be positive");
    }
    if (!(density > 0.0 && density <= 1.0)) {
        throw std::invalid_argument("density must lie in (0, 1]");
    }
    if (scheme == Scheme::dense_rademacher && density != 1.0) {
        throw std::invalid_argument("dense scheme requires density 1");
    }
}

double ProjectionSpec::scale() const
{
    return 1.0 / std::sqrt(static_cast<double>(rows) * density);
}

void draw_row_signs(const ProjectionSpec& spec, std::uint64_t seed, std::uint64_t stream,
                    Eigen::Index row, const std::vector<Eigen::Index>& columns,
                    std::vector<int>& signs)
{
    const CounterStream source(seed, stream);
    StreamCursor cursor(source);
    signs.resize(columns.size());
    const auto n = static_cast<std::uint64_t>(spec.cols);
    const auto r = static_cast<std::uint64_t>(row);
    if (spec.scheme == Scheme::dense_rademacher) {
        const std::uint64_t words_per_row = (n + 63) / 64;
        std::uint64_t current = ~std::uint64_t{0};
        std::uint64_t bits = 0;
        for (std::size_t k = 0; k < columns.size(); ++k) {
            const auto col = static_cast<std::uint64_t>(columns[k]);
            const std::uint64_t word = r * words_per_row + col / 64;
            if (word != current) {
                cursor.seek(word);
                bits = cursor.next();
                current = word;
            }
            signs[k] = (bits >> (col % 64) & 1U) ? -1 : 1;
        }
        return;
    }
    const double half = spec.density / 2.0;
    for (std::size_t k = 0; k < columns.size(); ++k) {
        cursor.seek(r * n + static_cast<std::uint64_t>(columns[k]));
        const double u = CounterStream::to_unit(cursor.next());
        signs[k] = u < half ? -1 : (u < spec.density ? 1 : 0);
    }
}

SignMatrix sample_matrix(const ProjectionSpec& spec, std::uint64_t seed, std::uint64_t stream)
{
    spec.validate();
    SignMatrix out{spec, seed, stream, Eigen::MatrixXd(spec.rows, spec.cols)};
    std::vector<Eigen::Index> columns(static_cast<std::size_t>(spec.cols));
    for (Eigen::Index j = 0; j < spec.cols; ++j) {
        columns[static_cast<std::size_t>(j)] = j;
    }
    std::vector<int> signs;
    const double s = spec.scale();
    for (Eigen::Index k = 0; k < spec.rows; ++k) {
        draw_row_signs(spec, seed, stream, k, columns, signs);
        for (Eigen::Index j = 0; j < spec.cols; ++j) {
            out.entries(k, j) = s * signs[static_cast<std::size_t>(j)];
        }
    }
    return out;
}

double distortion(const SignMatrix& matrix, const Eigen::Ref<const Eigen::VectorXd>& x)
{
    if (x.size() != matrix.cols()) {
        throw std::invalid_argument("vector length does not match matrix columns");
    }
    const double norm2 = x.squaredNorm();
    if (norm2 == 0.0) {
        throw std::invalid_argument("zero vector");
    }
    return (matrix.entries * x).squaredNorm() / norm2 - 1.0;
}

double distortion_matrix_free(const ProjectionSpec& spec, std::uint64_t seed,
                              std::uint64_t stream, const Eigen::SparseVector<double>& x)
{
    spec.validate();
    if (x.size() != spec.cols) {
        throw std::invalid_argument("vector length does not match matrix columns");
    }
    std::vector<Eigen::Index> columns;
    std::vector<double> values;
    double norm2 = 0.0;
    for (Eigen::SparseVector<double>::InnerIterator it(x); it; ++it) {
        if (it.value() != 0.0) {
            columns.push_back(it.index());
            values.push_back(it.value());
            norm2 += it.value() * it.value();
        }
    }
    if (norm2 == 0.0) {
        throw std::invalid_argument("zero vector");
    }
    std::vector<int> signs;
    double sum = 0.0;
    double carry = 0.0;
    for (Eigen::Index k = 0; k < spec.rows; ++k) {
        draw_row_signs(spec, seed, stream, k, columns, signs);
        double dot = 0.0;
        for (std::size_t i = 0; i < columns.size(); ++i) {
            dot += signs[i] * values[i];
        }
        // Kahan
        const double y = dot * dot - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    const double scale2 = 1.0 / (static_cast<double>(spec.rows) * spec.density);
    return sum * scale2 / norm2 - 1.0;
}

namespace {

template <class Body>
void parallel_for(std::size_t count, unsigned workers, Body&& body)
{
    workers = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t first = count * w / workers;
        const std::size_t last = count * (w + 1) / workers;
        pool.emplace_back([&, first, last] {
            for (std::size_t i = first; i < last; ++i) {
                body(i);
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
}

}  // namespace

DistortionSample sample_distortion(const ProjectionSpec& spec,
                                   const Eigen::SparseVector<double>& x, std::size_t trials,
                                   std::uint64_t seed, unsigned workers)
{
    spec.validate();
    if (trials == 0) {
        throw std::invalid_argument("trials must be positive");
    }
    DistortionSample out;
    out.values.resize(trials);
    out.dimension = x.size();
    out.sparsity = 0;
    for (Eigen::SparseVector<double>::InnerIterator it(x); it; ++it) {
        out.sparsity += it.value() != 0.0;
    }
    out.norm = x.norm();
    out.spec = spec;
    out.seed = seed;
    parallel_for(trials, workers, [&](std::size_t t) {
        out.values[t] = distortion_matrix_free(spec, seed, t, x);
    });
    return out;
}

Eigen::SparseVector<double> flat_unit_vector(Eigen::Index dimension, Eigen::Index sparsity)
{
    if (sparsity <= 0 || sparsity > dimension) {
        throw std::invalid_argument("sparsity must lie in [1, n]");
    }
    Eigen::SparseVector<double> x(dimension);
    x.reserve(sparsity);
    const double level = 1.0 / std::sqrt(static_cast<double>(sparsity));
    for (Eigen::Index i = 0; i < sparsity; ++i) {
        x.insert(i) = level;
    }
    return x;
}

TailCurve ccdf_from_sample(const DistortionSample& sample, const std::vector<double>& eps_grid)
{
    validate_eps_grid(eps_grid);
    std::vector<double> magnitudes(sample.values.size());
    std::transform(sample.values.begin(), sample.values.end(), magnitudes.begin(),
                   [](double v) { return std::abs(v); });
    std::sort(magnitudes.begin(), magnitudes.end());
    TailCurve curve;
    curve.method = BoundMethod::empirical;
    curve.rows = static_cast<unsigned long>(sample.spec.rows);
    curve.sparsity = static_cast<unsigned long>(sample.sparsity);
    curve.metadata["trials"] = std::to_string(sample.trials());
    curve.metadata["seed"] = std::to_string(sample.seed);
    curve.metadata["scheme"] = to_string(sample.spec.scheme);
    const double n = static_cast<double>(magnitudes.size());
    for (double eps : eps_grid) {
        const auto above = magnitudes.end() - std::upper_bound(magnitudes.begin(), magnitudes.end(), eps);
        const double fraction = static_cast<double>(above) / n;
        curve.points.push_back({eps, fraction, fraction});
    }
    return curve;
}

TailCurve empirical_ccdf(Eigen::Index dimension, Eigen::Index sparsity,
                         const ProjectionSpec& projection, std::size_t trials,
                         const std::vector<double>& eps_grid, std::uint64_t seed,
                         unsigned workers)
{
    validate_eps_grid(eps_grid);
    ProjectionSpec spec = projection;
    spec.cols = dimension;
    const auto sample = sample_distortion(spec, flat_unit_vector(dimension, sparsity), trials,
                                          seed, workers);
    return ccdf_from_sample(sample, eps_grid);
}

double quantile_sorted(const std::vector<double>& sorted, double level)
{
    if (sorted.empty()) {
        throw std::invalid_argument("quantile of empty data");
    }
    const double h = (static_cast<double>(sorted.size()) - 1.0) * std::clamp(level, 0.0, 1.0);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

SweepTable dataset_distortion_sweep(const std::vector<Eigen::SparseVector<double>>& columns,
                                    Eigen::Index rows, const std::vector<ProjectionVariant>& variants,
                                    std::size_t trials, std::uint64_t seed,
                                    const std::vector<double>& eps_grid, unsigned workers)
{
    if (!eps_grid.empty()) {
        validate_eps_grid(eps_grid);
    }
    if (variants.empty()) {
        throw std::invalid_argument("no projection variants given");
    }
    SweepTable table;
    table.eps_grid = eps_grid;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        const auto& x = columns[c];
        if (x.norm() == 0.0) {
            ++table.skipped_zero_columns;
            continue;
        }
        for (const auto& variant : variants) {
            const ProjectionSpec spec{rows, x.size(), variant.scheme, variant.density};
            const auto sample = sample_distortion(spec, x, trials, seed, workers);

            SweepRow row;
            row.column = c;
            row.sparsity = sample.sparsity;
            row.norm = sample.norm;
            row.scheme = variant.scheme;
            row.density = variant.density;
            std::vector<double> magnitudes;
            magnitudes.reserve(trials);
            double sum_abs = 0.0;
            double sum_sq = 0.0;
            for (double v : sample.values) {
                magnitudes.push_back(std::abs(v));
                sum_abs += std::abs(v);
                sum_sq += v * v;
            }
            std::sort(magnitudes.begin(), magnitudes.end());
            const double n = static_cast<double>(trials);
            row.mean_abs = sum_abs / n;
            row.rms = std::sqrt(sum_sq / n);
            row.median_abs = quantile_sorted(magnitudes, 0.5);
            row.q90_abs = quantile_sorted(magnitudes, 0.9);
            row.q99_abs = quantile_sorted(magnitudes, 0.99);
            row.max_abs = magnitudes.back();
            if (!eps_grid.empty()) {
                for (const auto& point : ccdf_from_sample(sample, eps_grid).points) {
                    row.ccdf.push_back(point.bound);
                }
            }
            table.rows.push_back(std::move(row));
        }
    }
    if (table.rows.empty()) {
        throw std::invalid_argument("all columns are zero");
    }
    return table;
}

}  // namespace rproj

#include <doctest.h>

#include <cmath>

#include "rproj/moments.hpp"
#include "rproj/projections.hpp"

using rproj::ProjectionSpec;
using rproj::Scheme;

namespace {

ProjectionSpec spec(Eigen::Index m, Eigen::Index n, Scheme scheme = Scheme::dense_rademacher,
                    double p = 1.0)
{
    ProjectionSpec s;
    s.rows = m;
    s.cols = n;
    s.scheme = scheme;
    s.density = p;
    return s;
}

double mean(const std::vector<double>& v)
{
    double acc = 0.0;
    for (double x : v) acc += x;
    return acc / static_cast<double>(v.size());
}

}  // namespace

TEST_CASE("spec validation")
{
    CHECK_NOTHROW(spec(3, 4).validate());
    CHECK_THROWS(spec(0, 4).validate());
    CHECK_THROWS(spec(3, 4, Scheme::dense_rademacher, 0.5).validate());
    CHECK_THROWS(spec(3, 4, Scheme::sparse_rademacher, 0.0).validate());
    CHECK_THROWS(spec(3, 4, Scheme::sparse_rademacher, 1.5).validate());
    CHECK(spec(4, 4, Scheme::sparse_rademacher, 0.25).scale() == doctest::Approx(1.0));
    CHECK(rproj::parse_scheme("sparse") == Scheme::sparse_rademacher);
    CHECK(rproj::to_string(Scheme::dense_rademacher) == "dense");
    CHECK_THROWS(rproj::parse_scheme("gaussian"));
}

TEST_CASE("dense matrices have entries +-1/sqrt(m)")
{
    const auto a = rproj::sample_matrix(spec(5, 70), 3);
    REQUIRE(a.rows() == 5);
    REQUIRE(a.cols() == 70);
    int negatives = 0;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            CHECK(std::abs(a.entries(i, j)) == doctest::Approx(1 / std::sqrt(5.0)));
            negatives += a.entries(i, j) < 0;
        }
    }
    CHECK(negatives > 100);
    CHECK(negatives < 250);
    CHECK(rproj::sample_matrix(spec(5, 70), 3).entries == a.entries);
    CHECK(rproj::sample_matrix(spec(5, 70), 3, 1).entries != a.entries);
}

TEST_CASE("sparse matrices have the requested density")
{
    const auto a = rproj::sample_matrix(spec(40, 100, Scheme::sparse_rademacher, 0.1), 17);
    const double scale = 1 / std::sqrt(40 * 0.1);
    int nonzero = 0;
    int positive = 0;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            const double v = a.entries(i, j);
            if (v != 0.0) {
                CHECK(std::abs(v) == doctest::Approx(scale));
                ++nonzero;
                positive += v > 0;
            }
        }
    }
    const double fraction = nonzero / 4000.0;
    CHECK(std::abs(fraction - 0.1) <= 3 * std::sqrt(0.09 / 4000));
    CHECK(std::abs(positive - nonzero / 2.0) <= 3 * std::sqrt(nonzero / 4.0));
}

TEST_CASE("materialized and matrix-free distortions agree")
{
    Eigen::SparseVector<double> x(90);
    x.insert(3) = 0.5;
    x.insert(40) = -1.25;
    x.insert(64) = 2.0;
    x.insert(89) = 0.125;
    const Eigen::VectorXd dense = Eigen::VectorXd(x);
    for (auto s : {spec(7, 90), spec(7, 90, Scheme::sparse_rademacher, 0.3)}) {
        for (std::uint64_t stream = 0; stream < 20; ++stream) {
            const auto a = rproj::sample_matrix(s, 5, stream);
            const double materialized = rproj::distortion(a, dense);
            const double free = rproj::distortion_matrix_free(s, 5, stream, x);
            CHECK(free == doctest::Approx(materialized).epsilon(1e-13));
        }
    }
    CHECK_THROWS(rproj::distortion(rproj::sample_matrix(spec(2, 3), 0), Eigen::VectorXd::Zero(3)));
    CHECK_THROWS(rproj::distortion(rproj::sample_matrix(spec(2, 3), 0), Eigen::VectorXd::Ones(4)));
}

TEST_CASE("one-sparse vectors are never distorted by dense sign matrices")
{
    for (Eigen::Index col : {0, 17, 63, 64, 99}) {
        Eigen::SparseVector<double> x(100);
        x.insert(col) = -3.5;
        const auto sample = rproj::sample_distortion(spec(10, 100), x, 500, 2);
        for (double e : sample.values) {
            CHECK(std::abs(e) <= 1e-12);
        }
    }
}

TEST_CASE("distortion is unbiased with the predicted variance")
{
    const auto x = rproj::flat_unit_vector(40, 12);
    CHECK(x.nonZeros() == 12);
    CHECK(x.coeff(0) == doctest::Approx(1 / std::sqrt(12.0)));
    CHECK(x.coeff(12) == 0.0);
    const std::size_t trials = 20000;
    const double variance = rproj::to_double(rproj::distortion_moment(8, 12, 2));
    for (auto s : {spec(8, 40), spec(8, 40, Scheme::sparse_rademacher, 0.5)}) {
        const auto sample = rproj::sample_distortion(s, x, trials, 11);
        // Sparse entries add a fourth-moment term but the mean stays zero.
        CHECK(std::abs(mean(sample.values)) <= 4 * std::sqrt(4 * variance / trials));
    }
    const auto dense = rproj::sample_distortion(spec(8, 40), x, trials, 11);
    double second = 0.0;
    for (double e : dense.values) second += e * e;
    second /= trials;
    // Fourth moment of the distortion bounds the SE of the second moment.
    const double fourth = rproj::to_double(rproj::distortion_moment(8, 12, 4));
    CHECK(std::abs(second - variance) <= 4 * std::sqrt((fourth - variance * variance) / trials));
}

TEST_CASE("sampling does not depend on the worker count")
{
    const auto x = rproj::flat_unit_vector(30, 9);
    const auto s = spec(6, 30, Scheme::sparse_rademacher, 0.4);
    const auto one = rproj::sample_distortion(s, x, 301, 8, 1);
    const auto four = rproj::sample_distortion(s, x, 301, 8, 4);
    CHECK(one.values == four.values);
    CHECK(one.sparsity == 9);
    CHECK(one.norm == doctest::Approx(1.0));
}

TEST_CASE("empirical ccdf")
{
    const std::vector<double> grid{0.1, 0.5, 1.0};
    rproj::DistortionSample sample;
    sample.values = {0.05, -0.2, 0.7, -1.0, 0.5};
    sample.spec = spec(3, 3);
    const auto curve = rproj::ccdf_from_sample(sample, grid);
    CHECK(curve.method == rproj::BoundMethod::empirical);
    REQUIRE(curve.points.size() == 3);
    CHECK(curve.points[0].bound == doctest::Approx(0.8));
    CHECK(curve.points[1].bound == doctest::Approx(0.4));  // 0.5 itself is not counted
    CHECK(curve.points[2].bound == 0.0);

    const auto flat = rproj::empirical_ccdf(20, 1, spec(5, 20), 100, grid, 0);
    for (const auto& pt : flat.points) {
        CHECK(pt.bound == 0.0);
    }
}

TEST_CASE("quantiles interpolate linearly")
{
    const std::vector<double> v{1, 2, 3, 4, 5};
    CHECK(rproj::quantile_sorted(v, 0.5) == 3.0);
    CHECK(rproj::quantile_sorted(v, 0.9) == doctest::Approx(4.6));
    CHECK(rproj::quantile_sorted(v, 0.0) == 1.0);
    CHECK(rproj::quantile_sorted(v, 1.0) == 5.0);
    CHECK(rproj::quantile_sorted({7.0}, 0.99) == 7.0);
}

TEST_CASE("dataset sweep")
{
    std::vector<Eigen::SparseVector<double>> columns;
    columns.push_back(rproj::flat_unit_vector(16, 4));
    columns.emplace_back(16);
    Eigen::SparseVector<double> single(16);
    single.insert(5) = 2.0;
    columns.push_back(single);

    const std::vector<rproj::ProjectionVariant> variants{{Scheme::dense_rademacher, 1.0},
                                                         {Scheme::sparse_rademacher, 0.5}};
    const auto table = rproj::dataset_distortion_sweep(columns, 4, variants, 200, 1, {0.5});
    CHECK(table.skipped_zero_columns == 1);
    REQUIRE(table.rows.size() == 4);
    CHECK(table.rows[0].column == 0);
    CHECK(table.rows[2].column == 2);
    CHECK(table.rows[2].sparsity == 1);
    CHECK(table.rows[2].norm == doctest::Approx(2.0));
    CHECK(table.rows[2].max_abs <= 1e-12);
    CHECK(table.rows[1].density == 0.5);
    for (const auto& row : table.rows) {
        CHECK(row.median_abs <= row.q90_abs);
        CHECK(row.q90_abs <= row.q99_abs);
        CHECK(row.q99_abs <= row.max_abs);
        CHECK(row.mean_abs <= row.rms);
        REQUIRE(row.ccdf.size() == 1);
    }
    // Same trials regardless of the worker count.
    const auto again = rproj::dataset_distortion_sweep(columns, 4, variants, 200, 1, {0.5}, 3);
    CHECK(again.rows[0].rms == table.rows[0].rms);

    CHECK_THROWS_WITH(rproj::dataset_distortion_sweep({Eigen::SparseVector<double>(3)}, 2,
                                                      variants, 10, 0),
                      "all columns are zero");
}

#include <doctest.h>

#include <cmath>

#include "rproj/moments.hpp"
#include "rproj/partitions.hpp"
#include "rproj/verify.hpp"
#include "support/oracles.hpp"

using rproj::Rational;
using rproj::WeightProfile;

namespace {

Rational q(long n, long d = 1)
{
    Rational r{rproj::Integer(n), rproj::Integer(d)};
    r.canonicalize();
    return r;
}

}  // namespace

TEST_CASE("partitions: counts, order and frequency form")
{
    const auto all = rproj::partitions(4);
    REQUIRE(all.size() == 5);
    CHECK(all.front().parts() == std::vector<unsigned>{4});
    CHECK(all[1].parts() == std::vector<unsigned>{3, 1});
    CHECK(all[2].parts() == std::vector<unsigned>{2, 2});
    CHECK(all.back().parts() == std::vector<unsigned>{1, 1, 1, 1});
    CHECK(rproj::Partition({2, 1, 1}).frequencies() == std::map<unsigned, unsigned>{{1, 2}, {2, 1}});

    // p(10) = 42; parts >= 2: p(10) - p(9) = 42 - 30.
    CHECK(rproj::partitions(10).size() == 42);
    CHECK(rproj::partitions(10, 2).size() == 12);
    CHECK(rproj::partitions(10, 2, 2).size() == 5);  // (10) (8,2) (7,3) (6,4) (5,5)
    CHECK(rproj::partitions(3, 2).size() == 1);
    CHECK_THROWS(rproj::Partition({1, 2}));
}

TEST_CASE("rademacher_sum_moment")
{
    CHECK(rproj::rademacher_sum_moment(2, 2) == 2);
    CHECK(rproj::rademacher_sum_moment(2, 4) == 8);
    CHECK(rproj::rademacher_sum_moment(5, 3) == 0);
    CHECK(rproj::rademacher_sum_moment(7, 0) == 1);
    for (unsigned k = 1; k <= 8; ++k) {
        std::vector<Rational> ones(k, Rational(1));
        for (unsigned m = 0; m <= 8; ++m) {
            CHECK(rproj::rademacher_sum_moment(k, m) == oracle::linear_form_moment(ones, m));
        }
    }
}

TEST_CASE("chaos_extreme_moment: examples")
{
    for (unsigned m = 1; m <= 12; ++m) {
        CHECK(rproj::chaos_extreme_moment(1, m) == 0);
    }
    CHECK(rproj::chaos_extreme_moment(2, 2) == 1);
    CHECK(rproj::chaos_extreme_moment(3, 2) == q(4, 3));
    CHECK(rproj::chaos_extreme_moment(3, 4) == q(112, 27));
    CHECK(rproj::chaos_extreme_moment(5, 1) == 0);
}

TEST_CASE("chaos_extreme_moment matches full enumeration")
{
    for (unsigned k = 1; k <= 12; ++k) {
        const rproj::ChaosMomentTable<Rational> table(k, 10);
        CHECK(table[0] == 1);
        CHECK(table[1] == 0);
        for (unsigned m = 1; m <= 10; ++m) {
            CHECK(table[m] == oracle::flat_chaos_moment(k, m));
            if (m % 2 == 0) {
                CHECK(sgn(table[m]) >= 0);
            }
        }
    }
}

TEST_CASE("float chaos table agrees with the exact one")
{
    for (unsigned long k : {1UL, 2UL, 7UL, 64UL, 300UL, 2000UL}) {
        const rproj::ChaosMomentTable<Rational> exact(k, 40);
        const rproj::ChaosMomentTable<double> approx(k, 40);
        for (unsigned m = 0; m <= 40; ++m) {
            const double e = rproj::to_double(exact[m]);
            CHECK(approx[m] == doctest::Approx(e).epsilon(1e-10));
        }
    }
}

TEST_CASE("chaos_extreme_moment_scaled")
{
    CHECK(rproj::chaos_extreme_moment_scaled(WeightProfile::flat(3), 2) == q(4, 3));
    // x = (sqrt 2, sqrt 2): total 4, K 2.
    const WeightProfile p({q(2), q(2)});
    CHECK(rproj::chaos_extreme_moment_scaled(p, 2) == 16);
    // Direct: chaos = 2 * 2 r1 r2 = +-4, second moment 16.
    CHECK(rproj::chaos_extreme_moment_scaled(WeightProfile({q(1), q(0)}), 7) == 0);
    CHECK_THROWS(rproj::chaos_extreme_moment_scaled(WeightProfile({q(0)}), 2));
}

TEST_CASE("distortion_moment: examples")
{
    CHECK(rproj::distortion_moment(1, 3, 2) == q(4, 3));
    CHECK(rproj::distortion_moment(2, 2, 2) == q(1, 2));
    CHECK(rproj::distortion_moment(2, 2, 3) == 0);
}

TEST_CASE("distortion_moment matches enumeration of sign matrices")
{
    for (unsigned m = 1; m <= 3; ++m) {
        for (unsigned k = 1; m * k <= 12; ++k) {
            const rproj::DistortionMomentTable<Rational> table(m, k, 8);
            for (unsigned order = 2; order <= 8; ++order) {
                CHECK(table[order] == oracle::averaged_flat_moment(m, k, order));
            }
        }
    }
}

TEST_CASE("distortion_moment structural identities")
{
    for (unsigned long k = 1; k <= 20; ++k) {
        const rproj::ChaosMomentTable<Rational> chaos(k, 12);
        const rproj::DistortionMomentTable<Rational> single(1, chaos);
        for (unsigned m = 2; m <= 12; ++m) {
            CHECK(single[m] == chaos[m]);
        }
        for (unsigned long rows : {2UL, 5UL, 50UL}) {
            CHECK(rproj::distortion_moment(rows, k, 2) == chaos[2] / Rational(rproj::Integer(rows)));
        }
    }
}

TEST_CASE("float distortion table agrees with the exact one")
{
    for (unsigned long rows : {1UL, 3UL, 10UL, 100UL}) {
        for (unsigned long k : {2UL, 50UL, 1024UL}) {
            const rproj::DistortionMomentTable<Rational> exact(rows, k, 24);
            const rproj::DistortionMomentTable<double> approx(rows, k, 24);
            for (unsigned m = 2; m <= 24; m += 2) {
                CHECK(approx[m] == doctest::Approx(rproj::to_double(exact[m])).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("khintchine_moment")
{
    CHECK(rproj::khintchine_moment(WeightProfile({q(1), q(1)}), 2) == 2);
    CHECK(rproj::khintchine_moment(WeightProfile({q(1), q(1)}), 3) == 0);

    // ((7/5)^4 + (1/5)^4) / 2
    const std::vector<Rational> x{q(3, 5), q(4, 5)};
    CHECK(rproj::khintchine_moment(WeightProfile::from_vector(x), 4) == q(1201, 625));

    // Flat n = 3 with sigma^2 = 5: sigma^q n^(-q/2) E(sum r)^q.
    const auto flat = WeightProfile::flat(3, q(5));
    CHECK(rproj::khintchine_moment(flat, 4) ==
          rproj::pow(q(5), 2) * rproj::pow(q(1, 3), 2) * rproj::rademacher_sum_moment(3, 4));

    // Outside one square class the recursion path takes over.
    const WeightProfile mixed({q(1), q(2), q(3)});
    // E S^4 = 3 (sum w)^2 - 2 sum w^2 = 108 - 28
    CHECK(rproj::khintchine_moment(mixed, 4) == 80);
    CHECK(rproj::khintchine_moment(mixed, 2) == 6);

    CHECK_THROWS_WITH(rproj::khintchine_moment(WeightProfile::flat(21), 2),
                      "use flat-vector or Gaussian bound");
}

TEST_CASE("khintchine_moment matches direct enumeration")
{
    rproj::ProfileSampler sampler(5);
    for (int n = 0; n < 40; ++n) {
        std::vector<Rational> x;
        const auto k = sampler.uniform_int(1, 8);
        for (std::uint64_t i = 0; i < k; ++i) {
            x.push_back(Rational(rproj::Integer(sampler.uniform_int(1, 9)),
                                 rproj::Integer(sampler.uniform_int(1, 4))));
            x.back().canonicalize();
        }
        const auto p = WeightProfile::from_vector(x);
        for (unsigned m = 0; m <= 8; m += 2) {
            CHECK(rproj::khintchine_moment(p, m) == oracle::linear_form_moment(x, m));
        }
    }
}

TEST_CASE("gaussian_moment")
{
    CHECK(rproj::gaussian_moment(1, 4) == 3);
    CHECK(rproj::gaussian_moment(1, 2) == 1);
    CHECK(rproj::gaussian_moment(4, 6) == 960);
    CHECK(rproj::gaussian_moment(4, 5) == 0);
    CHECK(rproj::gaussian_moment(7, 0) == 1);
    CHECK_THROWS(rproj::gaussian_moment(-1, 2));
}

TEST_CASE("normalized Rademacher sum moments grow with n")
{
    for (unsigned m = 2; m <= 10; m += 2) {
        Rational previous;
        for (unsigned long n = 1; n <= 30; ++n) {
            const Rational normalized =
                rproj::rademacher_sum_moment(n, m) / rproj::pow(Rational(rproj::Integer(n)), m / 2);
            CHECK(normalized >= previous);
            previous = normalized;
        }
        CHECK(previous <= rproj::gaussian_moment(1, m));
    }
}

TEST_CASE("moment values switch to the float path past the exact limits")
{
    const auto small = rproj::chaos_extreme_moment_value(3, 2);
    CHECK_FALSE(small.approximate);
    REQUIRE(small.exact);
    CHECK(*small.exact == q(4, 3));

    const auto large = rproj::chaos_extreme_moment_value(20000, 4);
    CHECK(large.approximate);
    CHECK_FALSE(large.exact);
    // mu_2 = 2 - 2/K exactly, and mu_4 -> 60 (Gaussian limit of E(N^2-1)^4).
    CHECK(rproj::chaos_extreme_moment_value(20000, 2).value == doctest::Approx(2.0 - 2.0 / 20000));
    CHECK(large.value == doctest::Approx(60.0).epsilon(2e-3));
    CHECK(rproj::distortion_moment_value(10, 20000, 2).value ==
          doctest::Approx((2.0 - 2.0 / 20000) / 10));
}

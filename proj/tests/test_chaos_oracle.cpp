#include <doctest.h>

#include "rproj/chaos_oracle.hpp"
#include "rproj/moments.hpp"
#include "rproj/verify.hpp"
#include "support/oracles.hpp"

using rproj::DiscreteLaw;
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

TEST_CASE("DiscreteLaw merges and validates atoms")
{
    const DiscreteLaw law({{q(1), q(1, 4)}, {q(-1), q(1, 2)}, {q(1), q(1, 4)}, {q(5), q(0)}});
    REQUIRE(law.size() == 2);
    CHECK(law.atoms()[0].value == -1);
    CHECK(law.atoms()[1].probability == q(1, 2));

    CHECK_THROWS(DiscreteLaw({{q(0), q(1, 2)}}));
    CHECK_THROWS(DiscreteLaw({{q(0), q(3, 2)}, {q(1), q(-1, 2)}}));
    CHECK(DiscreteLaw::constant(q(3)).atoms()[0].value == 3);
    CHECK(rproj::moment(DiscreteLaw::constant(q(3)), 2) == 9);
}

TEST_CASE("chaos_law of small flat vectors")
{
    // K = 2: 2 x1 x2 r1 r2 = +-1 for x = (1, 1).
    const auto two = rproj::chaos_law(WeightProfile({q(1), q(1)}));
    REQUIRE(two.size() == 2);
    CHECK(two.atoms()[0].value == -2);
    CHECK(two.atoms()[1].value == 2);

    // K = 3 flat unit: (S^2 - 3)/3 with S in {+-1, +-3}.
    const auto three = rproj::chaos_law(WeightProfile::flat(3));
    REQUIRE(three.size() == 2);
    CHECK(three.atoms()[0].value == q(-2, 3));
    CHECK(three.atoms()[0].probability == q(3, 4));
    CHECK(three.atoms()[1].value == 2);
    CHECK(rproj::moment(three, 2) == q(4, 3));

    CHECK(rproj::chaos_law(WeightProfile({q(4), q(0)})).atoms()[0].value == 0);
    CHECK(rproj::chaos_law(WeightProfile({q(0)})).size() == 1);
}

TEST_CASE("chaos_law rejects what it cannot do exactly")
{
    CHECK_THROWS_WITH(rproj::chaos_law(WeightProfile::flat(21)), "enumeration too large");
    rproj::OracleLimits limits;
    limits.enumeration_cap = 4;
    CHECK_THROWS_WITH(rproj::chaos_law(WeightProfile::flat(5), limits), "enumeration too large");
    CHECK_THROWS(rproj::chaos_law(WeightProfile({q(1), q(2)})));
}

TEST_CASE("chaos_law moments match the double-sum oracle")
{
    rproj::ProfileSampler sampler(21);
    for (int n = 0; n < 60; ++n) {
        std::vector<Rational> x;
        const auto k = sampler.uniform_int(1, 7);
        for (std::uint64_t i = 0; i < k; ++i) {
            Rational v(rproj::Integer(sampler.uniform_int(1, 9)),
                       rproj::Integer(sampler.uniform_int(1, 5)));
            v.canonicalize();
            x.push_back(sampler.uniform_int(0, 1) ? v : Rational(-v));
        }
        const auto law = rproj::chaos_law(WeightProfile::from_vector(x));
        for (unsigned m = 1; m <= 6; ++m) {
            CHECK(rproj::moment(law, m) == oracle::chaos_moment(x, m));
        }
    }
}

TEST_CASE("chaos_law is independent of the worker count")
{
    rproj::ProfileSampler sampler(22);
    const auto p = sampler.profile(12, 12, 2);
    rproj::OracleLimits one;
    rproj::OracleLimits many;
    many.workers = 5;
    const auto a = rproj::chaos_law(p, one);
    const auto b = rproj::chaos_law(p, many);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.atoms()[i].value == b.atoms()[i].value);
        CHECK(a.atoms()[i].probability == b.atoms()[i].probability);
    }
}

TEST_CASE("convolve")
{
    const DiscreteLaw coin({{q(0), q(1, 2)}, {q(1), q(1, 2)}});
    const auto two = rproj::convolve(coin, coin, 100);
    REQUIRE(two.size() == 3);
    CHECK(two.atoms()[1].value == 1);
    CHECK(two.atoms()[1].probability == q(1, 2));
    CHECK_THROWS_AS(rproj::convolve(two, two, 3), std::length_error);
}

TEST_CASE("distortion_law reproduces the distortion moments for flat vectors")
{
    for (unsigned long rows = 1; rows <= 4; ++rows) {
        for (unsigned long k = 1; k <= 9; ++k) {
            const auto law = rproj::distortion_law(WeightProfile::flat(k, q(7, 2), k + 1), rows);
            for (unsigned m = 0; m <= 8; ++m) {
                CHECK(rproj::moment(law, m) == rproj::distortion_moment(rows, k, m));
            }
        }
    }
}

TEST_CASE("tail is strict")
{
    const auto law = rproj::distortion_law(WeightProfile::flat(2), 1);
    CHECK(rproj::tail(law, q(1, 2)) == 1);
    CHECK(rproj::tail(law, q(1)) == 0);
    CHECK(rproj::tail(law, q(0)) == 1);
    const auto three = rproj::distortion_law(WeightProfile::flat(3), 1);
    CHECK(rproj::tail(three, q(2, 3)) == q(1, 4));
    CHECK(rproj::tail(three, q(1, 2)) == 1);
}

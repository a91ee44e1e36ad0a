#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "rproj/rational.hpp"

namespace rproj {

/// Squared-weight profile (x_1^2, ..., x_n^2) of an input vector.
///
/// Every Schur statement in this library is phrased over profiles rather than
/// the vectors themselves: moments of the distortion depend on x only through
/// the squares of its components. Profiles are immutable once built.
class WeightProfile {
public:
    /// Takes squared weights directly. Throws on empty input or a negative weight.
    explicit WeightProfile(std::vector<Rational> weights);

    /// Squares each component. Throws "empty vector" on empty input.
    static WeightProfile from_vector(std::span<const Rational> x);
    /// Doubles are embedded exactly as binary fractions before squaring.
    static WeightProfile from_vector(std::span<const double> x);

    /// Flat profile: `sparsity` copies of total/sparsity followed by zeros.
    static WeightProfile flat(std::size_t sparsity, const Rational& total = 1,
                              std::size_t dimension = 0);

    const std::vector<Rational>& weights() const { return weights_; }
    const Rational& operator[](std::size_t i) const { return weights_[i]; }
    std::size_t dimension() const { return weights_.size(); }
    std::size_t sparsity() const { return sparsity_; }
    const Rational& total() const { return total_; }

    /// Indices of strictly positive weights, ascending.
    std::vector<std::size_t> support() const;

    /// True when all positive weights are equal (vacuously true for zero).
    bool is_flat() const;

    /// Weights in non-increasing order, ties kept in index order.
    std::vector<Rational> sorted_descending() const;

    friend bool operator==(const WeightProfile&, const WeightProfile&) = default;

private:
    std::vector<Rational> weights_;
    Rational total_;
    std::size_t sparsity_ = 0;
};

/// True iff `b` is majorized by `a` (b is at least as balanced as a).
/// Shorter profiles are zero-padded. Throws "incomparable: totals differ".
bool majorizes(const WeightProfile& a, const WeightProfile& b);

/// Moves `eps` from weights[i] to weights[j]; requires
/// weights[i] > weights[j] and 0 < eps < (weights[i] - weights[j]) / 2.
WeightProfile robin_hood(const WeightProfile& p, std::size_t i, std::size_t j,
                         const Rational& eps);

/// Spreads the total evenly over the support. Throws on the zero profile.
WeightProfile flatten(const WeightProfile& p);

}  // namespace rproj

namespace rproj {

/// Exact square roots of a profile's support, up to one shared irrational
/// factor: weights[support[k]] == base * roots[k]^2 with every root rational.
///
/// Cross products x_i x_j = base * roots_i * roots_j are then rational, which
/// is what exact sign enumeration needs. Flat profiles and profiles built from
/// rational vectors always qualify.
struct SquareClass {
    Rational base;
    std::vector<std::size_t> support;
    std::vector<Rational> roots;
};

/// Nullopt when some support weights lie in different square classes or the
/// profile is zero.
std::optional<SquareClass> square_class(const WeightProfile& p);

/// Robin-Hood transfer from i to j that keeps the profile inside its square
/// class: rotates (root_i, root_j) by the rational angle with half-angle
/// tangent `t`, halving t until the transfer amount is valid. Requires
/// weights[i] > weights[j] and a representable profile.
WeightProfile balancing_rotation(const WeightProfile& p, std::size_t i, std::size_t j,
                                 Rational t = Rational(1, 2));

}  // namespace rproj

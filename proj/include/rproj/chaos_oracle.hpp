#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "rproj/majorization.hpp"
#include "rproj/rational.hpp"

namespace rproj {

/// Finitely supported law with exact rational atoms.
/// Atoms are merged by value and kept sorted ascending; probabilities sum to 1.
class DiscreteLaw {
public:
    struct Atom {
        Rational value;
        Rational probability;
    };

    /// Merges equal values and drops zero-probability atoms. Throws unless the
    /// probabilities are nonnegative and sum to exactly one.
    explicit DiscreteLaw(std::vector<Atom> atoms);

    /// Point mass.
    static DiscreteLaw constant(const Rational& value);

    const std::vector<Atom>& atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }

    DiscreteLaw scaled(const Rational& factor) const;

private:
    std::vector<Atom> atoms_;
};

struct OracleLimits {
    std::size_t enumeration_cap = 20;
    std::size_t atom_cap = 1'000'000;
    /// Workers splitting the sign enumeration; the merged law is identical
    /// for any worker count.
    unsigned workers = 1;
};

/// Exact law of sum_{i != j} x_i x_j r_i r_j = (sum x_i r_i)^2 - sum x_i^2.
///
/// Enumerates 2^(K-1) sign vectors on the support (the value is invariant
/// under r -> -r). The profile must lie in one square class so that every
/// atom is rational.
DiscreteLaw chaos_law(const WeightProfile& p, const OracleLimits& limits = {});

Rational moment(const DiscreteLaw& law, unsigned q);

/// Law of E(x) = (1/m) sum_k C_k / total(p), C_k IID copies of chaos_law(p),
/// by repeated exact convolution.
DiscreteLaw distortion_law(const WeightProfile& p, unsigned long rows,
                           const OracleLimits& limits = {});

/// P[|X| > eps], strict.
Rational tail(const DiscreteLaw& law, const Rational& eps);

/// Law of X + Y for independent X, Y. Throws when the result would exceed
/// `atom_cap` atoms.
DiscreteLaw convolve(const DiscreteLaw& a, const DiscreteLaw& b, std::size_t atom_cap);

}  // namespace rproj

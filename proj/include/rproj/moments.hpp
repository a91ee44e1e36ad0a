#pragma once

#include <cstddef>
#include <optional>
#include <type_traits>
#include <vector>

#include "rproj/majorization.hpp"
#include "rproj/rational.hpp"

namespace rproj {

inline constexpr unsigned kDefaultQmax = 32;
/// Beyond these the exact binomial sums switch to the log-space float path.
inline constexpr unsigned long kExactSparsityLimit = 10000;
inline constexpr unsigned kExactOrderLimit = 64;
inline constexpr std::size_t kDefaultEnumerationCap = 20;

inline bool exact_path_feasible(unsigned long sparsity, unsigned qmax)
{
    return sparsity <= kExactSparsityLimit && qmax <= kExactOrderLimit;
}

/// E(r_1 + ... + r_K)^q for independent Rademacher signs.
Rational rademacher_sum_moment(unsigned long sparsity, unsigned q);

namespace detail {

std::vector<Rational> chaos_moments_exact(unsigned long sparsity, unsigned qmax);
std::vector<double> chaos_moments_float(unsigned long sparsity, unsigned qmax);
std::vector<Rational> distortion_moments_exact(unsigned long rows, const std::vector<Rational>& chaos);
std::vector<double> distortion_moments_float(unsigned long rows, const std::vector<double>& chaos);

template <class Scalar>
std::vector<Scalar> chaos_moments(unsigned long sparsity, unsigned qmax)
{
    static_assert(std::is_same_v<Scalar, Rational> || std::is_same_v<Scalar, double>);
    if constexpr (std::is_same_v<Scalar, Rational>) {
        return chaos_moments_exact(sparsity, qmax);
    } else {
        return chaos_moments_float(sparsity, qmax);
    }
}

template <class Scalar>
std::vector<Scalar> distortion_moments(unsigned long rows, const std::vector<Scalar>& chaos)
{
    if constexpr (std::is_same_v<Scalar, Rational>) {
        return distortion_moments_exact(rows, chaos);
    } else {
        return distortion_moments_float(rows, chaos);
    }
}

}  // namespace detail

/// Moments mu_1..mu_qmax of Z^2 - 1, Z the standardized Binom(K, 1/2).
///
/// mu_q is the largest q-th chaos moment E(sum_{i != j} x_i x_j r_i r_j)^q over
/// unit-norm inputs with K non-zero components; it is attained by the flat
/// vector. Scalar is Rational (exact, incremental binomials) or double
/// (log-space weights with compensated summation).
template <class Scalar>
class ChaosMomentTable {
public:
    ChaosMomentTable(unsigned long sparsity, unsigned qmax)
        : sparsity_(sparsity), moments_(detail::chaos_moments<Scalar>(sparsity, qmax))
    {
    }

    unsigned long sparsity() const { return sparsity_; }
    unsigned qmax() const { return static_cast<unsigned>(moments_.size() - 1); }
    /// q in [0, qmax]; mu_0 = 1.
    const Scalar& operator[](unsigned q) const { return moments_.at(q); }
    const std::vector<Scalar>& moments() const { return moments_; }

private:
    unsigned long sparsity_;
    std::vector<Scalar> moments_;
};

/// Moments nu_q = E[E_*^q] of the averaged distortion E_* = (1/m) sum_i W_i,
/// W_i IID copies of Z^2 - 1.
///
/// Expanded over partitions of q with every part >= 2 (mu_1 = 0 removes every
/// partition containing a 1) and at most m parts:
///   nu_q = m^-q sum_lambda q!/prod(lambda_i!) * m!/((m-l)! prod f_j!) * prod mu_lambda_i
template <class Scalar>
class DistortionMomentTable {
public:
    DistortionMomentTable(unsigned long rows, const ChaosMomentTable<Scalar>& chaos)
        : rows_(rows),
          sparsity_(chaos.sparsity()),
          moments_(detail::distortion_moments<Scalar>(rows, chaos.moments()))
    {
    }
    DistortionMomentTable(unsigned long rows, unsigned long sparsity, unsigned qmax)
        : DistortionMomentTable(rows, ChaosMomentTable<Scalar>(sparsity, qmax))
    {
    }

    unsigned long rows() const { return rows_; }
    unsigned long sparsity() const { return sparsity_; }
    unsigned qmax() const { return static_cast<unsigned>(moments_.size() - 1); }
    const Scalar& operator[](unsigned q) const { return moments_.at(q); }
    const std::vector<Scalar>& moments() const { return moments_; }

private:
    unsigned long rows_;
    unsigned long sparsity_;
    std::vector<Scalar> moments_;
};

Rational chaos_extreme_moment(unsigned long sparsity, unsigned q);

/// total(p)^q * chaos_extreme_moment(K, q): the sharp bound on the q-th chaos
/// moment over all inputs sharing p's norm and sparsity.
Rational chaos_extreme_moment_scaled(const WeightProfile& p, unsigned q);

Rational distortion_moment(unsigned long rows, unsigned long sparsity, unsigned q);

/// E(sum_i x_i r_i)^q by sign enumeration over the support. Odd q returns 0.
/// Profiles outside a single square class fall back to an exact
/// coordinate-by-coordinate recursion.
Rational khintchine_moment(const WeightProfile& p, unsigned q,
                           std::size_t enumeration_cap = kDefaultEnumerationCap);

/// E N(0, sigma2)^q = sigma^q (q-1)!! for even q, 0 for odd q.
Rational gaussian_moment(const Rational& sigma2, unsigned q);

/// Moment carrying both float and (when computed) exact values.
struct MomentValue {
    double value = 0.0;
    std::optional<Rational> exact;
    bool approximate = false;
};

/// Exact when feasible, otherwise the float path flagged approximate.
MomentValue chaos_extreme_moment_value(unsigned long sparsity, unsigned q);
MomentValue distortion_moment_value(unsigned long rows, unsigned long sparsity, unsigned q);

}  // namespace rproj

#pragma once

// Brute-force references used only by the tests. They enumerate every sign
// pattern directly from the definitions and share no code with the library's
// closed forms or its Gray-code enumerator.

#include <cstdint>
#include <vector>

#include "rproj/rational.hpp"

namespace oracle {

using rproj::Rational;

/// E[(((sum r)^2 - K) / K)^q] over all 2^K sign vectors.
inline Rational flat_chaos_moment(unsigned k, unsigned q)
{
    Rational acc;
    const std::uint64_t count = std::uint64_t{1} << k;
    for (std::uint64_t mask = 0; mask < count; ++mask) {
        long s = 0;
        for (unsigned i = 0; i < k; ++i) {
            s += (mask >> i & 1U) ? -1 : 1;
        }
        Rational c(s * s - static_cast<long>(k), static_cast<long>(k));
        c.canonicalize();
        acc += rproj::pow(c, q);
    }
    return acc / Rational(rproj::Integer(count));
}

/// E[E_*^q] for the m-row average, enumerating all 2^(m K) sign matrices.
inline Rational averaged_flat_moment(unsigned m, unsigned k, unsigned q)
{
    Rational acc;
    const unsigned bits = m * k;
    const std::uint64_t count = std::uint64_t{1} << bits;
    for (std::uint64_t mask = 0; mask < count; ++mask) {
        Rational sum;
        for (unsigned row = 0; row < m; ++row) {
            long s = 0;
            for (unsigned i = 0; i < k; ++i) {
                s += (mask >> (row * k + i) & 1U) ? -1 : 1;
            }
            Rational c(s * s - static_cast<long>(k), static_cast<long>(k));
            c.canonicalize();
            sum += c;
        }
        sum /= m;
        acc += rproj::pow(sum, q);
    }
    return acc / Rational(rproj::Integer(count));
}

/// E(sum x_i r_i)^q for a rational vector x.
inline Rational linear_form_moment(const std::vector<Rational>& x, unsigned q)
{
    Rational acc;
    const std::uint64_t count = std::uint64_t{1} << x.size();
    for (std::uint64_t mask = 0; mask < count; ++mask) {
        Rational s;
        for (std::size_t i = 0; i < x.size(); ++i) {
            s += (mask >> i & 1U) ? Rational(-x[i]) : x[i];
        }
        acc += rproj::pow(s, q);
    }
    return acc / Rational(rproj::Integer(count));
}

/// E(sum_{i != j} x_i x_j r_i r_j)^q for a rational vector x.
inline Rational chaos_moment(const std::vector<Rational>& x, unsigned q)
{
    Rational acc;
    const std::uint64_t count = std::uint64_t{1} << x.size();
    for (std::uint64_t mask = 0; mask < count; ++mask) {
        Rational c;
        for (std::size_t i = 0; i < x.size(); ++i) {
            for (std::size_t j = 0; j < x.size(); ++j) {
                if (i == j) {
                    continue;
                }
                const int sign = ((mask >> i & 1U) ^ (mask >> j & 1U)) ? -1 : 1;
                c += sign * x[i] * x[j];
            }
        }
        acc += rproj::pow(c, q);
    }
    return acc / Rational(rproj::Integer(count));
}

}  // namespace oracle

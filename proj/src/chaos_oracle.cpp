#include "rproj/chaos_oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <thread>

namespace rproj {

namespace {

struct RationalLess {
    bool operator()(const Rational& a, const Rational& b) const { return cmp(a, b) < 0; }
};

using Histogram = std::map<Rational, std::uint64_t, RationalLess>;

/// Walks sign vectors [first, last) of the pinned-first-sign enumeration in
/// Gray-code order, recording (sum y_i r_i)^2 per vector.
void enumerate_range(const std::vector<Rational>& roots, std::uint64_t first,
                     std::uint64_t last, Histogram& out)
{
    if (first >= last) {
        return;
    }
    std::uint64_t gray = first ^ (first >> 1);
    Rational partial = roots[0];
    for (std::size_t k = 1; k < roots.size(); ++k) {
        if (gray >> (k - 1) & 1U) {
            partial -= roots[k];
        } else {
            partial += roots[k];
        }
    }
    for (std::uint64_t step = first;; ++step) {
        ++out[partial * partial];
        if (step + 1 == last) {
            break;
        }
        const int bit = __builtin_ctzll(step + 1);
        gray ^= std::uint64_t{1} << bit;
        const Rational& y = roots[bit + 1];
        if (gray >> bit & 1U) {
            partial -= 2 * y;
        } else {
            partial += 2 * y;
        }
    }
}

}  // namespace

DiscreteLaw::DiscreteLaw(std::vector<Atom> atoms)
{
    std::map<Rational, Rational, RationalLess> merged;
    Rational mass;
    for (auto& atom : atoms) {
        if (sgn(atom.probability) < 0) {
            throw std::invalid_argument("negative probability");
        }
        mass += atom.probability;
        if (sgn(atom.probability) > 0) {
            merged[atom.value] += atom.probability;
        }
    }
    if (mass != 1) {
        throw std::invalid_argument("probabilities must sum to one");
    }
    atoms_.reserve(merged.size());
    for (auto& [value, probability] : merged) {
        atoms_.push_back({value, probability});
    }
}

DiscreteLaw DiscreteLaw::constant(const Rational& value) { return DiscreteLaw({{value, 1}}); }

DiscreteLaw DiscreteLaw::scaled(const Rational& factor) const
{
    std::vector<Atom> out = atoms_;
    for (auto& atom : out) {
        atom.value *= factor;
    }
    return DiscreteLaw(std::move(out));
}

DiscreteLaw chaos_law(const WeightProfile& p, const OracleLimits& limits)
{
    const std::size_t k = p.sparsity();
    if (k > limits.enumeration_cap || k > 63) {
        throw std::invalid_argument("enumeration too large");
    }
    if (k <= 1) {
        return DiscreteLaw::constant(0);
    }
    const auto cls = square_class(p);
    if (!cls) {
        throw std::invalid_argument("profile weights lie in different square classes");
    }
    Rational square_sum;
    for (const auto& y : cls->roots) {
        square_sum += y * y;
    }

    const std::uint64_t count = std::uint64_t{1} << (k - 1);
    const unsigned workers =
        static_cast<unsigned>(std::clamp<std::uint64_t>(limits.workers, 1, count));
    std::vector<Histogram> partial(workers);
    if (workers == 1) {
        enumerate_range(cls->roots, 0, count, partial[0]);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t first = count * w / workers;
            const std::uint64_t last = count * (w + 1) / workers;
            pool.emplace_back(
                [&, first, last, w] { enumerate_range(cls->roots, first, last, partial[w]); });
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    Histogram merged;
    for (const auto& h : partial) {
        for (const auto& [value, n] : h) {
            merged[value] += n;
        }
    }

    std::vector<DiscreteLaw::Atom> atoms;
    atoms.reserve(merged.size());
    const Rational denom{Integer(count)};
    for (const auto& [square, n] : merged) {
        atoms.push_back({cls->base * (square - square_sum), Rational(Integer(n)) / denom});
    }
    return DiscreteLaw(std::move(atoms));
}

Rational moment(const DiscreteLaw& law, unsigned q)
{
    Rational acc;
    for (const auto& atom : law.atoms()) {
        acc += atom.probability * pow(atom.value, q);
    }
    return acc;
}

DiscreteLaw convolve(const DiscreteLaw& a, const DiscreteLaw& b, std::size_t atom_cap)
{
    std::map<Rational, Rational, RationalLess> merged;
    for (const auto& x : a.atoms()) {
        for (const auto& y : b.atoms()) {
            merged[x.value + y.value] += x.probability * y.probability;
            if (merged.size() > atom_cap) {
                throw std::length_error("instance too large for exact law");
            }
        }
    }
    std::vector<DiscreteLaw::Atom> atoms;
    atoms.reserve(merged.size());
    for (auto& [value, probability] : merged) {
        atoms.push_back({value, probability});
    }
    return DiscreteLaw(std::move(atoms));
}

DiscreteLaw distortion_law(const WeightProfile& p, unsigned long rows, const OracleLimits& limits)
{
    if (rows == 0) {
        throw std::invalid_argument("embedding dimension must be positive");
    }
    if (p.sparsity() == 0) {
        throw std::invalid_argument("zero vector has no distortion");
    }
    const DiscreteLaw single = chaos_law(p, limits).scaled(1 / p.total());
    DiscreteLaw sum = single;
    for (unsigned long k = 1; k < rows; ++k) {
        sum = convolve(sum, single, limits.atom_cap);
    }
    return sum.scaled(Rational(Integer(1), Integer(rows)));
}

Rational tail(const DiscreteLaw& law, const Rational& eps)
{
    Rational acc;
    for (const auto& atom : law.atoms()) {
        if (abs(atom.value) > eps) {
            acc += atom.probability;
        }
    }
    return acc;
}

}  // namespace rproj

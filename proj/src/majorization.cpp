#include "rproj/majorization.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace rproj {

WeightProfile::WeightProfile(std::vector<Rational> weights) : weights_(std::move(weights))
{
    if (weights_.empty()) {
        throw std::invalid_argument("empty vector");
    }
    for (const auto& w : weights_) {
        if (sgn(w) < 0) {
            throw std::invalid_argument("negative weight");
        }
        if (sgn(w) > 0) {
            ++sparsity_;
        }
        total_ += w;
    }
}

WeightProfile WeightProfile::from_vector(std::span<const Rational> x)
{
    if (x.empty()) {
        throw std::invalid_argument("empty vector");
    }
    std::vector<Rational> w;
    w.reserve(x.size());
    for (const auto& v : x) {
        w.emplace_back(v * v);
    }
    return WeightProfile(std::move(w));
}

WeightProfile WeightProfile::from_vector(std::span<const double> x)
{
    std::vector<Rational> exact;
    exact.reserve(x.size());
    for (double v : x) {
        exact.push_back(to_rational(v));
    }
    return from_vector(std::span<const Rational>(exact));
}

WeightProfile WeightProfile::flat(std::size_t sparsity, const Rational& total,
                                  std::size_t dimension)
{
    if (sparsity == 0 || sgn(total) <= 0) {
        throw std::invalid_argument("flat profile needs positive sparsity and total");
    }
    dimension = std::max(dimension, sparsity);
    std::vector<Rational> w(dimension);
    const Rational level = total / Rational(static_cast<unsigned long>(sparsity));
    std::fill_n(w.begin(), sparsity, level);
    return WeightProfile(std::move(w));
}

std::vector<std::size_t> WeightProfile::support() const
{
    std::vector<std::size_t> out;
    out.reserve(sparsity_);
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        if (sgn(weights_[i]) > 0) {
            out.push_back(i);
        }
    }
    return out;
}

bool WeightProfile::is_flat() const
{
    const Rational* first = nullptr;
    for (const auto& w : weights_) {
        if (sgn(w) == 0) {
            continue;
        }
        if (first == nullptr) {
            first = &w;
        } else if (w != *first) {
            return false;
        }
    }
    return true;
}

std::vector<Rational> WeightProfile::sorted_descending() const
{
    std::vector<Rational> out = weights_;
    std::stable_sort(out.begin(), out.end(), std::greater<>());
    return out;
}

bool majorizes(const WeightProfile& a, const WeightProfile& b)
{
    if (a.total() != b.total()) {
        throw std::invalid_argument("incomparable: totals differ");
    }
    const auto sa = a.sorted_descending();
    const auto sb = b.sorted_descending();
    const std::size_t n = std::max(sa.size(), sb.size());
    Rational partial_a;
    Rational partial_b;
    for (std::size_t k = 0; k < n; ++k) {
        if (k < sa.size()) {
            partial_a += sa[k];
        }
        if (k < sb.size()) {
            partial_b += sb[k];
        }
        if (partial_b > partial_a) {
            return false;
        }
    }
    return true;
}

WeightProfile robin_hood(const WeightProfile& p, std::size_t i, std::size_t j,
                         const Rational& eps)
{
    if (i >= p.dimension() || j >= p.dimension() || i == j) {
        throw std::out_of_range("transfer indices out of range");
    }
    const Rational gap = p[i] - p[j];
    if (sgn(gap) <= 0 || sgn(eps) <= 0 || eps * 2 >= gap) {
        throw std::invalid_argument("invalid transfer amount");
    }
    auto w = p.weights();
    w[i] -= eps;
    w[j] += eps;
    return WeightProfile(std::move(w));
}

WeightProfile flatten(const WeightProfile& p)
{
    if (p.sparsity() == 0) {
        throw std::invalid_argument("zero vector has no flat form");
    }
    const Rational level = p.total() / Rational(static_cast<unsigned long>(p.sparsity()));
    std::vector<Rational> w(p.dimension());
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (sgn(p[i]) > 0) {
            w[i] = level;
        }
    }
    return WeightProfile(std::move(w));
}

}  // namespace rproj

namespace rproj {

std::optional<SquareClass> square_class(const WeightProfile& p)
{
    if (p.sparsity() == 0) {
        return std::nullopt;
    }
    SquareClass out;
    out.support = p.support();
    out.base = p[out.support.front()];
    out.roots.reserve(out.support.size());
    for (std::size_t i : out.support) {
        auto root = exact_sqrt(p[i] / out.base);
        if (!root) {
            return std::nullopt;
        }
        out.roots.push_back(std::move(*root));
    }
    return out;
}

WeightProfile balancing_rotation(const WeightProfile& p, std::size_t i, std::size_t j, Rational t)
{
    if (i >= p.dimension() || j >= p.dimension() || !(p[i] > p[j])) {
        throw std::invalid_argument("rotation needs weights[i] > weights[j]");
    }
    if (sgn(t) <= 0) {
        throw std::invalid_argument("rotation parameter must be positive");
    }
    const auto cls = square_class(p);
    if (!cls) {
        throw std::invalid_argument("profile has no common square class");
    }
    auto root_of = [&](std::size_t idx) -> Rational {
        const auto it = std::find(cls->support.begin(), cls->support.end(), idx);
        return it == cls->support.end() ? Rational(0) : cls->roots[it - cls->support.begin()];
    };
    const Rational a = root_of(i);
    const Rational b = root_of(j);
    const Rational gap = p[i] - p[j];
    for (int attempt = 0; attempt < 256; ++attempt, t /= 2) {
        const Rational denom = 1 + t * t;
        const Rational c = (1 - t * t) / denom;
        const Rational s = 2 * t / denom;
        const Rational new_b = s * a + c * b;
        const Rational eps = cls->base * new_b * new_b - p[j];
        if (sgn(eps) > 0 && eps * 2 < gap) {
            return robin_hood(p, i, j, eps);
        }
    }
    throw std::runtime_error("no valid rotation found");
}

}  // namespace rproj

#include "rproj/moments.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "rproj/partitions.hpp"

namespace rproj {

namespace {

/// Neumaier-compensated accumulator.
struct CompensatedSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double v)
    {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            carry += (sum - t) + v;
        } else {
            carry += (v - t) + sum;
        }
        sum = t;
    }
    double value() const { return sum + carry; }
};

double log_binomial_weight(unsigned long n, unsigned long k)
{
    return std::lgamma(static_cast<double>(n) + 1) - std::lgamma(static_cast<double>(k) + 1) -
           std::lgamma(static_cast<double>(n - k) + 1) - static_cast<double>(n) * std::log(2.0);
}

void require_sparsity(unsigned long sparsity)
{
    if (sparsity == 0) {
        throw std::invalid_argument("sparsity must be positive");
    }
}

}  // namespace

Rational rademacher_sum_moment(unsigned long sparsity, unsigned q)
{
    if (q % 2 == 1) {
        return 0;
    }
    // 2^-K sum_i C(K, i) (K - 2i)^q, binomials updated in place.
    Integer coeff = 1;
    Integer acc = 0;
    Integer term;
    for (unsigned long i = 0; i <= sparsity; ++i) {
        const long shift = static_cast<long>(sparsity) - 2 * static_cast<long>(i);
        Integer base = shift;
        mpz_pow_ui(term.get_mpz_t(), base.get_mpz_t(), q);
        acc += coeff * term;
        coeff *= sparsity - i;
        mpz_divexact_ui(coeff.get_mpz_t(), coeff.get_mpz_t(), i + 1);
    }
    Integer denom;
    mpz_ui_pow_ui(denom.get_mpz_t(), 2, sparsity);
    Rational out(acc, denom);
    out.canonicalize();
    return out;
}

namespace detail {

std::vector<Rational> chaos_moments_exact(unsigned long sparsity, unsigned qmax)
{
    require_sparsity(sparsity);
    std::vector<Rational> moments(qmax + 1);
    // mu_q = 2^-K K^-q sum_i C(K,i) ((2i-K)^2 - K)^q. The summand only depends on
    // |2i - K|, so the lower half of the range is doubled.
    std::vector<Integer> sums(qmax + 1);
    Integer coeff = 1;
    Integer power;
    for (unsigned long i = 0; 2 * i <= sparsity; ++i) {
        const long shift = static_cast<long>(sparsity) - 2 * static_cast<long>(i);
        const Integer base = Integer(shift) * shift - Integer(sparsity);
        const bool mirrored = 2 * i != sparsity;
        power = coeff;
        if (mirrored) {
            power *= 2;
        }
        for (unsigned q = 0; q <= qmax; ++q) {
            sums[q] += power;
            power *= base;
        }
        coeff *= sparsity - i;
        mpz_divexact_ui(coeff.get_mpz_t(), coeff.get_mpz_t(), i + 1);
    }
    Integer denom;
    mpz_ui_pow_ui(denom.get_mpz_t(), 2, sparsity);
    for (unsigned q = 0; q <= qmax; ++q) {
        moments[q] = Rational(sums[q], denom);
        moments[q].canonicalize();
        denom *= sparsity;
    }
    return moments;
}

std::vector<double> chaos_moments_float(unsigned long sparsity, unsigned qmax)
{
    require_sparsity(sparsity);
    std::vector<double> moments(qmax + 1);
    std::vector<CompensatedSum> sums(qmax + 1);
    const double k = static_cast<double>(sparsity);
    for (unsigned long i = 0; 2 * i <= sparsity; ++i) {
        const double shift = k - 2.0 * static_cast<double>(i);
        const double base = (shift * shift - k) / k;
        double log_weight = log_binomial_weight(sparsity, i);
        if (2 * i != sparsity) {
            log_weight += std::log(2.0);
        }
        const double log_base = std::log(std::abs(base));
        for (unsigned q = 0; q <= qmax; ++q) {
            if (q > 0 && base == 0.0) {
                break;
            }
            const double sign = (base < 0 && q % 2 == 1) ? -1.0 : 1.0;
            sums[q].add(sign * std::exp(log_weight + q * (q > 0 ? log_base : 0.0)));
        }
    }
    for (unsigned q = 0; q <= qmax; ++q) {
        moments[q] = sums[q].value();
    }
    if (qmax >= 1) {
        moments[1] = 0.0;
    }
    return moments;
}

std::vector<Rational> distortion_moments_exact(unsigned long rows, const std::vector<Rational>& chaos)
{
    if (rows == 0) {
        throw std::invalid_argument("embedding dimension must be positive");
    }
    const auto qmax = static_cast<unsigned>(chaos.size() - 1);
    std::vector<Rational> moments(qmax + 1);
    moments[0] = 1;
    for (unsigned q = 2; q <= qmax; ++q) {
        Rational acc;
        for_each_partition(q, 2, rows, [&](const Partition& lambda) {
            Integer coeff = factorial(q);
            for (unsigned part : lambda.parts()) {
                mpz_divexact(coeff.get_mpz_t(), coeff.get_mpz_t(), factorial(part).get_mpz_t());
            }
            Integer placements = 1;
            for (std::size_t k = 0; k < lambda.length(); ++k) {
                placements *= rows - k;
            }
            for (const auto& [part, freq] : lambda.frequencies()) {
                mpz_divexact(placements.get_mpz_t(), placements.get_mpz_t(),
                             factorial(freq).get_mpz_t());
            }
            Rational term(coeff * placements);
            for (unsigned part : lambda.parts()) {
                term *= chaos[part];
            }
            acc += term;
        });
        Integer scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), rows, q);
        moments[q] = acc / Rational(scale);
    }
    return moments;
}

std::vector<double> distortion_moments_float(unsigned long rows, const std::vector<double>& chaos)
{
    if (rows == 0) {
        throw std::invalid_argument("embedding dimension must be positive");
    }
    const auto qmax = static_cast<unsigned>(chaos.size() - 1);
    std::vector<double> moments(qmax + 1);
    const double m = static_cast<double>(rows);
    moments[0] = 1.0;
    for (unsigned q = 2; q <= qmax; ++q) {
        CompensatedSum acc;
        for_each_partition(q, 2, rows, [&](const Partition& lambda) {
            double log_coeff = std::lgamma(q + 1.0) - q * std::log(m) + std::lgamma(m + 1.0) -
                               std::lgamma(m - static_cast<double>(lambda.length()) + 1.0);
            double sign = 1.0;
            for (unsigned part : lambda.parts()) {
                const double mu = chaos[part];
                if (mu == 0.0) {
                    return;
                }
                log_coeff += std::log(std::abs(mu)) - std::lgamma(part + 1.0);
                if (mu < 0) {
                    sign = -sign;
                }
            }
            for (const auto& [part, freq] : lambda.frequencies()) {
                log_coeff -= std::lgamma(freq + 1.0);
            }
            acc.add(sign * std::exp(log_coeff));
        });
        moments[q] = acc.value();
    }
    return moments;
}

}  // namespace detail

Rational chaos_extreme_moment(unsigned long sparsity, unsigned q)
{
    return ChaosMomentTable<Rational>(sparsity, q)[q];
}

Rational chaos_extreme_moment_scaled(const WeightProfile& p, unsigned q)
{
    if (p.sparsity() == 0) {
        throw std::invalid_argument("zero vector has no extreme moment");
    }
    return pow(p.total(), q) * chaos_extreme_moment(p.sparsity(), q);
}

Rational distortion_moment(unsigned long rows, unsigned long sparsity, unsigned q)
{
    if (q == 0) {
        return 1;
    }
    if (q == 1) {
        return 0;
    }
    return DistortionMomentTable<Rational>(rows, sparsity, q)[q];
}

namespace {

/// E S_k^n for n <= q, S_k the partial Rademacher sum, one coordinate at a time:
/// E (S + x r)^n = sum_{a even} C(n, a) w^(a/2) E S^(n-a).
Rational khintchine_by_recursion(const WeightProfile& p, unsigned q)
{
    std::vector<Rational> moments(q + 1);
    moments[0] = 1;
    for (const auto& w : p.weights()) {
        if (sgn(w) == 0) {
            continue;
        }
        std::vector<Rational> next(q + 1);
        for (unsigned n = 0; n <= q; ++n) {
            Rational w_power = 1;
            for (unsigned a = 0; a <= n; a += 2) {
                next[n] += Rational(binomial(n, a)) * w_power * moments[n - a];
                w_power *= w;
            }
        }
        moments = std::move(next);
    }
    return moments[q];
}

}  // namespace

Rational khintchine_moment(const WeightProfile& p, unsigned q, std::size_t enumeration_cap)
{
    if (q % 2 == 1) {
        return 0;
    }
    if (p.sparsity() > enumeration_cap) {
        throw std::invalid_argument("use flat-vector or Gaussian bound");
    }
    if (p.sparsity() == 0) {
        return q == 0 ? 1 : 0;
    }
    const auto cls = square_class(p);
    if (!cls) {
        return khintchine_by_recursion(p, q);
    }
    // (sum x_i r_i)^q = base^(q/2) (sum y_i r_i)^q for even q; the value is
    // invariant under r -> -r, so the first sign is pinned to +1.
    const auto& roots = cls->roots;
    const std::size_t free_signs = roots.size() - 1;
    const std::uint64_t count = std::uint64_t{1} << free_signs;
    Rational partial;
    for (const auto& y : roots) {
        partial += y;
    }
    Rational acc;
    std::uint64_t gray = 0;
    for (std::uint64_t step = 0;; ++step) {
        acc += pow(partial, q);
        if (step + 1 == count) {
            break;
        }
        // Gray code: flip the sign of one coordinate per step.
        const int bit = __builtin_ctzll(step + 1);
        gray ^= std::uint64_t{1} << bit;
        const Rational& y = roots[bit + 1];
        if (gray >> bit & 1U) {
            partial -= 2 * y;
        } else {
            partial += 2 * y;
        }
    }
    return pow(cls->base, q / 2) * acc / Rational(Integer(count));
}

Rational gaussian_moment(const Rational& sigma2, unsigned q)
{
    if (sgn(sigma2) < 0) {
        throw std::invalid_argument("variance must be nonnegative");
    }
    if (q % 2 == 1) {
        return 0;
    }
    Integer double_factorial = 1;
    for (unsigned k = q > 0 ? q - 1 : 0; k > 1; k -= 2) {
        double_factorial *= k;
    }
    return pow(sigma2, q / 2) * Rational(double_factorial);
}

MomentValue chaos_extreme_moment_value(unsigned long sparsity, unsigned q)
{
    if (exact_path_feasible(sparsity, q)) {
        Rational exact = chaos_extreme_moment(sparsity, q);
        return {to_double(exact), std::move(exact), false};
    }
    return {ChaosMomentTable<double>(sparsity, q)[q], std::nullopt, true};
}

MomentValue distortion_moment_value(unsigned long rows, unsigned long sparsity, unsigned q)
{
    if (exact_path_feasible(sparsity, q)) {
        Rational exact = distortion_moment(rows, sparsity, q);
        return {to_double(exact), std::move(exact), false};
    }
    return {DistortionMomentTable<double>(rows, sparsity, q)[q], std::nullopt, true};
}

}  // namespace rproj

#include "rproj/rational.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rproj {

Rational to_rational(double value)
{
    if (!std::isfinite(value)) {
        throw std::invalid_argument("non-finite value has no rational form");
    }
    Rational out;
    mpq_set_d(out.get_mpq_t(), value);
    return out;
}

double to_double(const Rational& value)
{
    // Round to nearest, ties to even: form a quotient with at least 55
    // significant bits, then round it to 53 using the remainder as sticky bit.
    if (sgn(value) == 0) {
        return 0.0;
    }
    const Integer num = abs(value.get_num());
    const Integer& den = value.get_den();
    const long shift = 55 - (static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)) -
                             static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2)));
    Integer scaled_num = num;
    Integer scaled_den = den;
    if (shift >= 0) {
        mpz_mul_2exp(scaled_num.get_mpz_t(), scaled_num.get_mpz_t(), static_cast<unsigned long>(shift));
    } else {
        mpz_mul_2exp(scaled_den.get_mpz_t(), scaled_den.get_mpz_t(), static_cast<unsigned long>(-shift));
    }
    Integer quotient;
    Integer remainder;
    mpz_tdiv_qr(quotient.get_mpz_t(), remainder.get_mpz_t(), scaled_num.get_mpz_t(),
                scaled_den.get_mpz_t());
    const long extra = static_cast<long>(mpz_sizeinbase(quotient.get_mpz_t(), 2)) - 53;
    Integer mantissa;
    mpz_tdiv_q_2exp(mantissa.get_mpz_t(), quotient.get_mpz_t(), static_cast<unsigned long>(extra));
    const bool half = mpz_tstbit(quotient.get_mpz_t(), static_cast<unsigned long>(extra - 1)) != 0;
    bool below_half_nonzero = sgn(remainder) != 0;
    for (long bit = 0; bit < extra - 1 && !below_half_nonzero; ++bit) {
        below_half_nonzero = mpz_tstbit(quotient.get_mpz_t(), static_cast<unsigned long>(bit)) != 0;
    }
    if (half && (below_half_nonzero || mpz_odd_p(mantissa.get_mpz_t()))) {
        mantissa += 1;
    }
    const double magnitude = std::ldexp(mantissa.get_d(), static_cast<int>(extra - shift));
    return sgn(value) < 0 ? -magnitude : magnitude;
}

double log_abs(const Rational& value)
{
    if (sgn(value) == 0) {
        return -std::numeric_limits<double>::infinity();
    }
    long num_exp = 0;
    long den_exp = 0;
    const double num = mpz_get_d_2exp(&num_exp, value.get_num_mpz_t());
    const double den = mpz_get_d_2exp(&den_exp, value.get_den_mpz_t());
    return std::log(std::abs(num)) - std::log(den) +
           static_cast<double>(num_exp - den_exp) * std::log(2.0);
}

Rational pow(const Rational& base, unsigned long exponent)
{
    Integer num;
    Integer den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
    // Powers of a canonical fraction stay canonical.
    Rational out;
    mpq_set_num(out.get_mpq_t(), num.get_mpz_t());
    mpq_set_den(out.get_mpq_t(), den.get_mpz_t());
    return out;
}

std::optional<Rational> exact_sqrt(const Rational& value)
{
    if (sgn(value) < 0) {
        return std::nullopt;
    }
    if (!mpz_perfect_square_p(value.get_num_mpz_t()) ||
        !mpz_perfect_square_p(value.get_den_mpz_t())) {
        return std::nullopt;
    }
    Integer num;
    Integer den;
    mpz_sqrt(num.get_mpz_t(), value.get_num_mpz_t());
    mpz_sqrt(den.get_mpz_t(), value.get_den_mpz_t());
    return Rational(num, den);
}

std::string to_string(const Rational& value) { return value.get_str(); }

Rational parse_rational(const std::string& text)
{
    if (text.empty()) {
        throw std::invalid_argument("empty rational literal");
    }
    const auto dot = text.find_first_of(".eE");
    if (dot == std::string::npos) {
        Rational out;
        if (out.set_str(text, 10) != 0) {
            throw std::invalid_argument("malformed rational literal '" + text + "'");
        }
        if (out.get_den() == 0) {
            throw std::invalid_argument("zero denominator in '" + text + "'");
        }
        out.canonicalize();
        return out;
    }
    // Decimal literal: read it as the exact decimal value, not the nearest double.
    std::string mantissa = text;
    long exponent = 0;
    if (const auto e = text.find_first_of("eE"); e != std::string::npos) {
        mantissa = text.substr(0, e);
        try {
            exponent = std::stol(text.substr(e + 1));
        } catch (const std::exception&) {
            throw std::invalid_argument("malformed rational literal '" + text + "'");
        }
    }
    std::string digits;
    long fraction_digits = 0;
    bool seen_dot = false;
    for (char c : mantissa) {
        if (c == '.') {
            if (seen_dot) {
                throw std::invalid_argument("malformed rational literal '" + text + "'");
            }
            seen_dot = true;
        } else {
            digits.push_back(c);
            if (seen_dot) {
                ++fraction_digits;
            }
        }
    }
    Integer num;
    if (digits.empty() || digits == "-" || digits == "+" || num.set_str(digits, 10) != 0) {
        throw std::invalid_argument("malformed rational literal '" + text + "'");
    }
    const long scale = exponent - fraction_digits;
    Integer ten_pow;
    mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(scale)));
    Rational out = scale >= 0 ? Rational(num * ten_pow) : Rational(num, ten_pow);
    out.canonicalize();
    return out;
}

Integer binomial(unsigned long n, unsigned long k)
{
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

Integer factorial(unsigned long n)
{
    Integer out;
    mpz_fac_ui(out.get_mpz_t(), n);
    return out;
}

}  // namespace rproj

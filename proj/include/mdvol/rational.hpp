#pragma once

#include <gmpxx.h>

#include <cctype>
#include <optional>
#include <string>
#include <string_view>

namespace mdvol {

/// Arbitrary precision rational, always canonical (lowest terms, positive
/// denominator) once it leaves this library.
using Rational = mpq_class;
using BigInt = mpz_class;

inline Rational make_rational(const BigInt& num, const BigInt& den)
{
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational pow(const Rational& base, unsigned long exponent)
{
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
    return r;
}

inline BigInt pow(const BigInt& base, unsigned long exponent)
{
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
    return r;
}

inline BigInt factorial(unsigned long n)
{
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline BigInt lcm(const BigInt& a, const BigInt& b)
{
    BigInt r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

/// "p/q" with an explicit denominator, also for integers ("2/1").
inline std::string to_fraction_string(const Rational& r)
{
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

namespace detail {

inline std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline bool all_digits(std::string_view s)
{
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

inline std::optional<BigInt> parse_integer(std::string_view s)
{
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) return std::nullopt;
    BigInt v(std::string(s), 10);
    return negative ? BigInt(-v) : v;
}

} // namespace detail

/// Accepts "p/q", "p" and finite decimals such as "0.25" or "-.5"; the
/// decimal form is converted exactly. Surrounding whitespace (and around
/// the slash) is ignored.
inline std::optional<Rational> parse_rational(std::string_view text)
{
    auto s = detail::trim(text);
    if (s.empty()) return std::nullopt;

    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        auto num = detail::parse_integer(detail::trim(s.substr(0, slash)));
        auto den_text = detail::trim(s.substr(slash + 1));
        if (!num || !detail::all_digits(den_text)) return std::nullopt;
        BigInt den(std::string(den_text), 10);
        if (den == 0) return std::nullopt;
        return make_rational(*num, den);
    }

    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        auto int_part = s.substr(0, dot);
        auto frac_part = s.substr(dot + 1);
        bool negative = false;
        if (!int_part.empty() && (int_part.front() == '+' || int_part.front() == '-')) {
            negative = int_part.front() == '-';
            int_part.remove_prefix(1);
        }
        if (int_part.empty() && frac_part.empty()) return std::nullopt;
        if (!int_part.empty() && !detail::all_digits(int_part)) return std::nullopt;
        if (!frac_part.empty() && !detail::all_digits(frac_part)) return std::nullopt;
        std::string digits = std::string(int_part) + std::string(frac_part);
        BigInt num(digits.empty() ? std::string("0") : digits, 10);
        BigInt den = pow(BigInt(10), frac_part.size());
        return make_rational(negative ? BigInt(-num) : num, den);
    }

    auto v = detail::parse_integer(s);
    if (!v) return std::nullopt;
    return Rational(*v);
}

} // namespace mdvol

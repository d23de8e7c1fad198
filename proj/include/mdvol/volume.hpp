#pragma once

#include "mdvol/rational.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <type_traits>

namespace mdvol {

/// coefficient * pi^pi_power, exactly. For n points pi_power = n - 3.
struct VolumeValue {
    Rational coefficient;
    unsigned pi_power = 0;

    friend bool operator==(const VolumeValue& a, const VolumeValue& b)
    {
        return a.pi_power == b.pi_power && a.coefficient == b.coefficient;
    }
};

inline std::string to_string(const VolumeValue& v)
{
    std::string s = v.coefficient.get_str();
    if (v.pi_power == 1) s += "*pi";
    else if (v.pi_power > 1) s += "*pi^" + std::to_string(v.pi_power);
    return s;
}

namespace detail {

using i128 = __int128;

inline std::optional<i128> to_i128(const BigInt& v)
{
    if (mpz_fits_slong_p(v.get_mpz_t())) return static_cast<i128>(mpz_get_si(v.get_mpz_t()));
    if (mpz_sizeinbase(v.get_mpz_t(), 2) > 126) return std::nullopt;
    BigInt mag = abs(v);
    BigInt hi = mag >> 64;
    BigInt lo = mag - (hi << 64);
    unsigned __int128 u = (static_cast<unsigned __int128>(mpz_get_ui(hi.get_mpz_t())) << 64) |
                          static_cast<unsigned __int128>(mpz_get_ui(lo.get_mpz_t()));
    i128 r = static_cast<i128>(u);
    return sgn(v) < 0 ? -r : r;
}

inline BigInt from_i128(i128 v)
{
    const bool negative = v < 0;
    unsigned __int128 u = negative ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
    BigInt hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
    BigInt lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
    BigInt r = (hi << 64) + lo;
    return negative ? BigInt(-r) : r;
}

template <class Int>
Int ipow(Int base, unsigned exponent)
{
    Int r = 1;
    while (exponent) {
        if (exponent & 1u) r *= base;
        base *= base;
        exponent >>= 1;
    }
    return r;
}

template <>
inline BigInt ipow<BigInt>(BigInt base, unsigned exponent)
{
    return pow(base, exponent);
}

template <class Int>
BigInt to_big(const Int& v)
{
    if constexpr (std::is_same_v<Int, BigInt>) return v;
    else return from_i128(v);
}

/// True when every intermediate bounded by `bound` is safe in a signed
/// 128-bit accumulator.
inline bool fits_i128(const BigInt& bound)
{
    static const BigInt limit = BigInt(1) << 125;
    return bound < limit;
}

} // namespace detail

} // namespace mdvol

#pragma once

// Torus fixed-point (Jeffrey-Kirwan) volume. A fixed point sends the points
// indexed by F to infinity and the rest to 0; its moment value is
//
//   mu(F) = sum_{i not in F} d_i - sum_{i in F} d_i,
//
// which is also the Donaldson-Futaki invariant of the test configuration
// colliding the points of F. For sum(d) <= 2 and a nonempty stable locus,
//
//   Vol = -(2 pi)^{n-3} / (2 (n-3)!) * sum_{mu(F) > 0} (-1)^{|F|} mu(F)^{n-3}.

#include "mdvol/combinatorics.hpp"
#include "mdvol/error.hpp"
#include "mdvol/rational.hpp"
#include "mdvol/volume.hpp"
#include "mdvol/weights.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

namespace mdvol {

struct FixedPoint {
    IndexSubset flipped;
    Rational moment;
};

struct TermBreakdown {
    struct Term {
        FixedPoint point;
        int sign = 1;
        Rational contribution; // moment^{n-3}
    };
    std::vector<Term> terms;
    Rational total = 0; // sum of sign * contribution
};

inline Rational moment_value(const WeightVector& w, const IndexSubset& flipped)
{
    Rational in = 0;
    for (int i : flipped) in += w.at(i);
    return w.sum() - 2 * in;
}

/// Donaldson-Futaki invariant of the test configuration in which the points
/// of `colliding` come together. Numerically it is the moment value.
inline Rational df_invariant(const WeightVector& w, const IndexSubset& colliding)
{
    return moment_value(w, colliding);
}

namespace detail {

inline void check_subset_size(int n, const EnumerationLimits& limits)
{
    if (n > limits.subset_cap || n > 62)
        throw Error(Errc::UnsupportedSize, "fixed-point sweep for n = " + std::to_string(n) + " exceeds cap " +
                                               std::to_string(limits.subset_cap));
}

inline void check_localization_domain(const WeightVector& w, const EnumerationLimits& limits)
{
    if (w.sum() > 2)
        throw Error(Errc::GeneralTypeUnsupported,
                    "sum of weights " + w.sum().get_str() + " > 2; the fixed-point formula covers sum <= 2 only");
    if (!git_nonempty(w)) throw Error(Errc::EmptyQuotient, "some weight is at least the sum of the others");
    check_subset_size(w.n(), limits);
}

/// Visits every subset mask in Gray-code order together with its numerator
/// sum and parity of |F|.
template <class Int, class Fn>
void for_each_subset_sum(const std::vector<Int>& a, Fn&& fn)
{
    const int n = static_cast<int>(a.size());
    const std::uint64_t count = std::uint64_t{1} << n;
    std::uint64_t mask = 0;
    Int sum = 0;
    bool odd = false;
    fn(mask, sum, odd);
    for (std::uint64_t i = 1; i < count; ++i) {
        const int bit = std::countr_zero(i);
        const std::uint64_t flip = std::uint64_t{1} << bit;
        if (mask & flip) sum -= a[bit];
        else sum += a[bit];
        mask ^= flip;
        odd = !odd;
        fn(mask, sum, odd);
    }
}

/// sum over F of (-1)^{|F|} (A - 2 a_F)^{k}, positive bases only.
template <class Int>
BigInt fixed_point_sum(const std::vector<Int>& a, const Int& total, unsigned k)
{
    Int acc = 0;
    for_each_subset_sum(a, [&](std::uint64_t, const Int& s, bool odd) {
        Int m = total - 2 * s;
        if (m <= 0) return;
        Int p = ipow<Int>(m, k);
        if (odd) acc -= p;
        else acc += p;
    });
    return to_big(acc);
}

/// sum over I of (-1)^{|I|+1} (L - a_I)^{k}, positive bases only.
template <class Int>
BigInt reduced_sum(const std::vector<Int>& a, const Int& den, unsigned k)
{
    Int acc = 0;
    for_each_subset_sum(a, [&](std::uint64_t, const Int& s, bool odd) {
        Int m = den - s;
        if (m <= 0) return;
        Int p = ipow<Int>(m, k);
        if (odd) acc += p;
        else acc -= p;
    });
    return to_big(acc);
}

template <class Sum>
BigInt dispatch_integer_sum(const CommonDenominator& cd, const BigInt& base_bound, const BigInt& base, unsigned k,
                            Sum&& sum)
{
    const int n = static_cast<int>(cd.numerators.size());
    const BigInt bound = (BigInt(1) << n) * pow(base_bound, k);
    if (fits_i128(bound) && fits_i128(base_bound)) {
        std::vector<i128> a;
        for (const auto& v : cd.numerators) a.push_back(*to_i128(v));
        return sum(a, *to_i128(base), k);
    }
    return sum(cd.numerators, base, k);
}

} // namespace detail

/// Coefficient c with Vol = c * pi^{n-3} * sum_{F+} (-1)^{|F|} mu(F)^{n-3}.
inline Rational localization_prefactor(int n)
{
    const auto k = static_cast<unsigned long>(n - 3);
    return make_rational(-pow(BigInt(2), k), 2 * factorial(k));
}

inline std::vector<FixedPoint> positive_fixed_points(const WeightVector& w, const EnumerationLimits& limits = {})
{
    detail::check_subset_size(w.n(), limits);
    const auto cd = common_denominator(w);
    std::vector<std::uint64_t> masks;
    detail::for_each_subset_sum(cd.numerators, [&](std::uint64_t mask, const BigInt& s, bool) {
        if (cd.numerator_sum - 2 * s > 0) masks.push_back(mask);
    });
    std::sort(masks.begin(), masks.end(), [](std::uint64_t x, std::uint64_t y) {
        const int px = std::popcount(x), py = std::popcount(y);
        if (px != py) return px < py;
        return mask_to_subset(x) < mask_to_subset(y);
    });
    std::vector<FixedPoint> out;
    out.reserve(masks.size());
    for (auto m : masks) {
        auto subset = mask_to_subset(m);
        Rational mu = moment_value(w, subset);
        out.push_back({std::move(subset), std::move(mu)});
    }
    return out;
}

inline VolumeValue localization_volume(const WeightVector& w, const EnumerationLimits& limits = {})
{
    detail::check_localization_domain(w, limits);
    const int n = w.n();
    // three points: the moduli space is a point
    if (n == 3) return {1, 0};

    const auto cd = common_denominator(w);
    const auto k = static_cast<unsigned>(n - 3);
    BigInt scaled = detail::dispatch_integer_sum(
        cd, cd.numerator_sum, cd.numerator_sum, k,
        [](const auto& a, const auto& total, unsigned e) { return detail::fixed_point_sum(a, total, e); });
    Rational coefficient = localization_prefactor(n) * make_rational(scaled, pow(cd.denominator, k));
    return {coefficient, k};
}

/// Calabi-Yau specialization, mu(I) = 2 (1 - sum_I d):
///   Vol = 2^{2n-7} / (n-3)! * pi^{n-3} * sum_I (-1)^{|I|+1} max(0, 1 - sum_I d)^{n-3}.
inline VolumeValue cy_reduced_volume(const WeightVector& w, const EnumerationLimits& limits = {})
{
    if (w.sum() != 2) throw Error(Errc::NotCalabiYau, "sum of weights is " + w.sum().get_str() + ", not 2");
    detail::check_subset_size(w.n(), limits);
    const int n = w.n();
    const auto cd = common_denominator(w);
    const auto k = static_cast<unsigned>(n - 3);
    BigInt scaled = detail::dispatch_integer_sum(
        cd, cd.denominator, cd.denominator, k,
        [](const auto& a, const auto& den, unsigned e) { return detail::reduced_sum(a, den, e); });
    const int two_power = 2 * n - 7;
    Rational prefactor = two_power >= 0 ? Rational(pow(BigInt(2), static_cast<unsigned long>(two_power)))
                                        : make_rational(1, pow(BigInt(2), static_cast<unsigned long>(-two_power)));
    prefactor /= factorial(k);
    return {prefactor * make_rational(scaled, pow(cd.denominator, k)), k};
}

inline TermBreakdown localization_breakdown(const WeightVector& w, const EnumerationLimits& limits = {})
{
    detail::check_localization_domain(w, limits);
    const auto k = static_cast<unsigned long>(w.n() - 3);
    TermBreakdown out;
    for (auto& fp : positive_fixed_points(w, limits)) {
        TermBreakdown::Term term;
        term.sign = fp.flipped.size() % 2 ? -1 : 1;
        term.contribution = pow(fp.moment, k);
        out.total += term.sign * term.contribution;
        term.point = std::move(fp);
        out.terms.push_back(std::move(term));
    }
    return out;
}

} // namespace mdvol

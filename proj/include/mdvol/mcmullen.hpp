#pragma once

// Set-partition volume formula for weights summing to exactly 2:
//
//   Vol = C_{n-3} * sum_P (-1)^{|P|+1} (|P|-3)! * prod_{B in P} alpha_B,
//   alpha_B = max(0, 1 - sum_{i in B} d_i)^{|B|-1},  C_k = (-4 pi)^k / (k+1)!
//
// with P running over partitions of {1..n} into at least three blocks.

#include "mdvol/combinatorics.hpp"
#include "mdvol/error.hpp"
#include "mdvol/rational.hpp"
#include "mdvol/volume.hpp"
#include "mdvol/weights.hpp"

#include <vector>

namespace mdvol {

inline VolumeValue c_constant(int k)
{
    if (k < 0) throw Error(Errc::InvalidArgs, "C_k needs k >= 0");
    BigInt num = pow(BigInt(-4), static_cast<unsigned long>(k));
    return {make_rational(num, factorial(static_cast<unsigned long>(k) + 1)), static_cast<unsigned>(k)};
}

/// max(0, 1 - sum_B d)^{|B|-1}; a singleton gives 1.
inline Rational block_factor(const WeightVector& w, const std::vector<int>& block)
{
    if (block.size() <= 1) return 1;
    Rational s = 1;
    for (int i : block) s -= w.at(i);
    if (s <= 0) return 0;
    return pow(s, block.size() - 1);
}

namespace detail {

/// Walk visitor for the partition sum over integer weights a_i / L. A block
/// of size >= 2 whose numerator sum has reached L contributes a zero factor
/// forever after, so the branch is cut as soon as that happens.
template <class Int>
class McMullenVisitor {
public:
    McMullenVisitor(std::vector<Int> numerators, Int denominator)
        : a_(std::move(numerators)), den_(std::move(denominator)), sums_(a_.size(), Int(0)),
          sizes_(a_.size(), 0), per_block_count_(a_.size() + 1, Int(0))
    {
    }

    bool place(int element, int block, bool /*fresh*/)
    {
        sums_[block] += a_[element];
        ++sizes_[block];
        return sizes_[block] < 2 || sums_[block] < den_;
    }

    void unplace(int element, int block, bool /*fresh*/)
    {
        sums_[block] -= a_[element];
        --sizes_[block];
    }

    void leaf(int blocks)
    {
        if (blocks < 3) return;
        Int product = 1;
        for (int b = 0; b < blocks; ++b)
            if (sizes_[b] > 1) product *= ipow<Int>(den_ - sums_[b], static_cast<unsigned>(sizes_[b] - 1));
        per_block_count_[blocks] += product;
    }

    /// sum_k (-1)^{k+1} (k-3)! acc_k L^{k-3}, i.e. the partition sum times L^{n-3}.
    BigInt scaled_sum() const
    {
        const int n = static_cast<int>(a_.size());
        BigInt total = 0;
        BigInt den = to_big(den_);
        for (int k = 3; k <= n; ++k) {
            BigInt term = factorial(static_cast<unsigned long>(k - 3)) * to_big(per_block_count_[k]) *
                          pow(den, static_cast<unsigned long>(k - 3));
            if ((k + 1) % 2) total -= term;
            else total += term;
        }
        return total;
    }

private:
    std::vector<Int> a_;
    Int den_;
    std::vector<Int> sums_;
    std::vector<int> sizes_;
    std::vector<Int> per_block_count_;
};

template <class Int>
BigInt mcmullen_scaled_sum(const CommonDenominator& cd, std::vector<Int> numerators, Int den)
{
    McMullenVisitor<Int> visitor(std::move(numerators), std::move(den));
    walk_partitions(static_cast<int>(cd.numerators.size()), 3, visitor);
    return visitor.scaled_sum();
}

} // namespace detail

inline VolumeValue mcmullen_volume(const WeightVector& w, const EnumerationLimits& limits = {})
{
    if (w.sum() != 2) throw Error(Errc::NotCalabiYau, "sum of weights is " + w.sum().get_str() + ", not 2");
    const int n = w.n();
    if (n > limits.partition_cap)
        throw Error(Errc::UnsupportedSize,
                    "partition sum for n = " + std::to_string(n) + " exceeds cap " + std::to_string(limits.partition_cap));

    const auto cd = common_denominator(w);
    const unsigned k = static_cast<unsigned>(n - 3);

    // each partial product is at most L^{n-3}; weighted count bounded by (n-3)! B(n)
    const BigInt bound = factorial(k) * bell(n) * pow(cd.denominator, k);
    BigInt scaled;
    if (detail::fits_i128(bound)) {
        std::vector<detail::i128> a;
        for (const auto& v : cd.numerators) a.push_back(*detail::to_i128(v));
        scaled = detail::mcmullen_scaled_sum<detail::i128>(cd, std::move(a), *detail::to_i128(cd.denominator));
    } else {
        scaled = detail::mcmullen_scaled_sum<BigInt>(cd, cd.numerators, cd.denominator);
    }

    const auto c = c_constant(static_cast<int>(k));
    Rational coefficient = c.coefficient * make_rational(scaled, pow(cd.denominator, k));
    return {coefficient, k};
}

/// Closed four-point form 2 pi (1 - sum over pairs of max(0, 1 - d_i - d_j)).
inline VolumeValue mcmullen_four_point(const WeightVector& w)
{
    if (w.n() != 4) throw Error(Errc::DimensionMismatch, "four-point formula needs exactly 4 weights");
    if (w.sum() != 2) throw Error(Errc::NotCalabiYau, "sum of weights is " + w.sum().get_str() + ", not 2");
    Rational clamps = 0;
    for (int i = 1; i <= 4; ++i)
        for (int j = i + 1; j <= 4; ++j) {
            Rational r = 1 - w.at(i) - w.at(j);
            if (r > 0) clamps += r;
        }
    return {2 * (1 - clamps), 1};
}

} // namespace mdvol

#pragma once

#include "mdvol/combinatorics.hpp"
#include "mdvol/error.hpp"
#include "mdvol/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mdvol {

/// Weights d_1..d_n of n >= 3 marked points, each strictly inside (0,1).
class WeightVector {
public:
    std::size_t size() const noexcept { return values_.size(); }
    int n() const noexcept { return static_cast<int>(values_.size()); }

    /// 1-based, matching the index convention of subsets and partitions.
    const Rational& at(int index) const { return values_.at(static_cast<std::size_t>(index - 1)); }
    std::span<const Rational> values() const noexcept { return values_; }
    const Rational& sum() const noexcept { return sum_; }

    friend bool operator==(const WeightVector& a, const WeightVector& b) { return a.values_ == b.values_; }

    friend WeightVector validate_weights(std::span<const Rational> raw);

private:
    explicit WeightVector(std::vector<Rational> values) : values_(std::move(values))
    {
        for (const auto& v : values_) sum_ += v;
    }

    std::vector<Rational> values_;
    Rational sum_ = 0;
};

inline WeightVector validate_weights(std::span<const Rational> raw)
{
    if (raw.size() < 3)
        throw Error(Errc::DimensionTooSmall, "need at least 3 weights, got " + std::to_string(raw.size()));
    std::vector<Rational> values(raw.begin(), raw.end());
    for (std::size_t i = 0; i < values.size(); ++i) {
        values[i].canonicalize();
        if (values[i] <= 0 || values[i] >= 1)
            throw Error(Errc::WeightOutOfRange,
                        "d_" + std::to_string(i + 1) + " = " + values[i].get_str() + " is not in (0,1)");
    }
    return WeightVector(std::move(values));
}

inline WeightVector validate_weights(std::initializer_list<Rational> raw)
{
    return validate_weights(std::span<const Rational>(raw.begin(), raw.size()));
}

/// Comma-separated list of "p/q" or finite decimal entries.
inline std::vector<Rational> parse_rational_list(std::string_view text)
{
    std::vector<Rational> out;
    std::size_t start = 0;
    while (true) {
        auto comma = text.find(',', start);
        auto item = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        auto r = parse_rational(item);
        if (!r) throw Error(Errc::NonRational, "cannot parse '" + std::string(detail::trim(item)) + "' as a rational");
        out.push_back(*r);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

inline WeightVector parse_weights(std::string_view text)
{
    auto raw = parse_rational_list(text);
    return validate_weights(raw);
}

// ---------------------------------------------------------------------------

enum class GeometryClass { LogFano, LogCalabiYau, LogGeneralType };

constexpr std::string_view geometry_name(GeometryClass g) noexcept
{
    switch (g) {
    case GeometryClass::LogFano: return "log-fano";
    case GeometryClass::LogCalabiYau: return "log-calabi-yau";
    case GeometryClass::LogGeneralType: return "log-general-type";
    }
    return "unknown";
}

/// Trichotomy of sum(d) against a threshold; 2 for points on the line,
/// dim+1 for hyperplane arrangements in P^dim.
inline GeometryClass classify_sum(const Rational& total, const Rational& threshold)
{
    const int c = cmp(total, threshold);
    if (c < 0) return GeometryClass::LogFano;
    if (c == 0) return GeometryClass::LogCalabiYau;
    return GeometryClass::LogGeneralType;
}

inline GeometryClass classify_geometry(const WeightVector& w) { return classify_sum(w.sum(), 2); }

/// Stable locus is nonempty iff every weight is below the sum of the others.
inline bool git_nonempty(const WeightVector& w)
{
    for (const auto& d : w.values())
        if (2 * d >= w.sum()) return false;
    return true;
}

// ---------------------------------------------------------------------------

/// Weights over a common denominator: d_i = numerators[i] / denominator.
/// The volume engines run on these integers.
struct CommonDenominator {
    std::vector<BigInt> numerators;
    BigInt denominator;
    BigInt numerator_sum;
};

inline CommonDenominator common_denominator(const WeightVector& w)
{
    CommonDenominator out;
    out.denominator = 1;
    for (const auto& d : w.values()) out.denominator = lcm(out.denominator, d.get_den());
    out.numerator_sum = 0;
    for (const auto& d : w.values()) {
        BigInt a = d.get_num() * (out.denominator / d.get_den());
        out.numerator_sum += a;
        out.numerators.push_back(std::move(a));
    }
    return out;
}

// ---------------------------------------------------------------------------

struct WallReport {
    std::vector<IndexSubset> hassett_walls;      // sum over I equals 1
    std::vector<IndexSubset> localization_walls; // sum over F equals sum(d)/2
    bool on_wall = false;
};

inline WallReport wall_report(const WeightVector& w, const EnumerationLimits& limits = {})
{
    const int n = w.n();
    if (n > limits.subset_cap)
        throw Error(Errc::UnsupportedSize, "wall report for n = " + std::to_string(n));
    const auto cd = common_denominator(w);
    // sum_I d = 1  <=>  a_I = L;  sum_F d = sum/2  <=>  2 a_F = A
    WallReport report;
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    for (std::uint64_t mask = 1; mask < full; ++mask) {
        BigInt a = 0;
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1u) a += cd.numerators[i];
        if (a == cd.denominator) report.hassett_walls.push_back(mask_to_subset(mask));
        if (2 * a == cd.numerator_sum) report.localization_walls.push_back(mask_to_subset(mask));
    }
    auto by_size = [](const IndexSubset& x, const IndexSubset& y) {
        return x.size() != y.size() ? x.size() < y.size() : x < y;
    };
    std::sort(report.hassett_walls.begin(), report.hassett_walls.end(), by_size);
    std::sort(report.localization_walls.begin(), report.localization_walls.end(), by_size);
    report.on_wall = !report.hassett_walls.empty() || !report.localization_walls.empty();
    return report;
}

// ---------------------------------------------------------------------------

enum class HassettCase { NoCollision, CollisionNeedsBlowup, Other };

constexpr std::string_view hassett_case_name(HassettCase c) noexcept
{
    switch (c) {
    case HassettCase::NoCollision: return "no-collision";
    case HassettCase::CollisionNeedsBlowup: return "collision-needs-blowup";
    case HassettCase::Other: return "other";
    }
    return "unknown";
}

/// Four points: 1,2,3 fixed, 4 moving along the diagonal.
inline HassettCase hassett_case(const WeightVector& w)
{
    if (w.n() != 4) throw Error(Errc::DimensionMismatch, "Hassett case analysis needs exactly 4 weights");
    const auto& d4 = w.at(4);

    bool fixed_pairs_apart = true;
    for (int i = 1; i <= 3; ++i)
        for (int j = i + 1; j <= 3; ++j)
            if (w.at(i) + w.at(j) <= 1) fixed_pairs_apart = false;
    bool moving_apart = true;
    for (int k = 1; k <= 4; ++k)
        if (w.at(k) + d4 >= 1) moving_apart = false;
    if (fixed_pairs_apart && moving_apart) return HassettCase::NoCollision;

    for (int i = 1; i <= 3; ++i)
        if (w.at(i) + d4 > 1) return HassettCase::CollisionNeedsBlowup;
    return HassettCase::Other;
}

// ---------------------------------------------------------------------------

/// Normalizes integer draws to weights summing to 2, or returns nothing when
/// some entry would reach 1.
inline std::optional<WeightVector> normalize_cy_draw(std::span<const long> draws)
{
    long total = 0;
    for (long v : draws) total += v;
    std::vector<Rational> values;
    values.reserve(draws.size());
    for (long v : draws) {
        Rational d = make_rational(2 * v, total);
        if (d >= 1) return std::nullopt;
        values.push_back(d);
    }
    return validate_weights(values);
}

/// splitmix64 finalizer; used to derive independent seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Rejection sampler: n integers uniform in [1,30], scaled to sum 2, redrawn
/// until every weight is below 1. Deterministic in (n, seed).
inline WeightVector random_cy_weights(int n, std::uint64_t seed)
{
    if (n < 3) throw Error(Errc::DimensionTooSmall, "need n >= 3, got " + std::to_string(n));
    std::mt19937_64 rng(mix_seed(seed));
    std::uniform_int_distribution<long> draw(1, 30);
    std::vector<long> draws(static_cast<std::size_t>(n));
    while (true) {
        for (auto& v : draws) v = draw(rng);
        if (auto w = normalize_cy_draw(draws)) return *std::move(w);
    }
}

inline std::string format_weights(const WeightVector& w)
{
    std::string out = "(";
    for (int i = 1; i <= w.n(); ++i) {
        if (i > 1) out += ",";
        out += w.at(i).get_str();
    }
    return out + ")";
}

} // namespace mdvol

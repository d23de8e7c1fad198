#pragma once

#include "mdvol/error.hpp"
#include "mdvol/localization.hpp"
#include "mdvol/mcmullen.hpp"
#include "mdvol/rational.hpp"
#include "mdvol/volume.hpp"
#include "mdvol/weights.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <thread>
#include <vector>

namespace mdvol {

// ---------------------------------------------------------------------------
// Randomized cross-formula test
// ---------------------------------------------------------------------------

struct Anomaly {
    int n = 0;
    std::size_t trial = 0; // index within its n
    WeightVector weights;
    VolumeValue mcmullen;
    VolumeValue localization;
};

struct AnomalyReport {
    std::uint64_t seed = 0;
    std::vector<int> n_values;
    std::vector<std::size_t> trials_per_n;
    std::size_t trials = 0;
    std::vector<Anomaly> anomalies;
    std::chrono::duration<double> elapsed{};
};

struct AnomalyOptions {
    unsigned jobs = 1;
    EnumerationLimits limits;
    /// Test hook: may alter the partition-side value before comparison.
    std::function<void(int n, std::size_t trial, VolumeValue& mcmullen)> perturb;
};

inline std::size_t default_trials(int n) { return n <= 7 ? 10000 : 1000; }

/// Seed of trial `trial` for size n; independent of scheduling.
inline std::uint64_t trial_seed(std::uint64_t seed, int n, std::size_t trial)
{
    return mix_seed(seed ^ mix_seed((static_cast<std::uint64_t>(n) << 40) ^ static_cast<std::uint64_t>(trial)));
}

inline AnomalyReport anomaly_test(std::span<const int> n_values, std::optional<std::size_t> trials_per_n,
                                  std::uint64_t seed, const AnomalyOptions& options = {})
{
    for (int n : n_values) {
        if (n > options.limits.partition_cap)
            throw Error(Errc::UnsupportedSize, "n = " + std::to_string(n) + " exceeds partition cap " +
                                                   std::to_string(options.limits.partition_cap));
        if (n < 4) throw Error(Errc::InvalidArgs, "anomaly test needs n >= 4, got " + std::to_string(n));
    }

    AnomalyReport report;
    report.seed = seed;
    report.n_values.assign(n_values.begin(), n_values.end());

    struct Job {
        int n;
        std::size_t trial;
    };
    std::vector<Job> jobs;
    for (int n : n_values) {
        const std::size_t count = trials_per_n.value_or(default_trials(n));
        report.trials_per_n.push_back(count);
        report.trials += count;
        for (std::size_t t = 0; t < count; ++t) jobs.push_back({n, t});
    }

    const auto start = std::chrono::steady_clock::now();
    std::vector<std::optional<Anomaly>> results(jobs.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        try {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= jobs.size()) return;
                const auto [n, trial] = jobs[i];
                WeightVector w = random_cy_weights(n, trial_seed(seed, n, trial));
                VolumeValue partition_side = mcmullen_volume(w, options.limits);
                VolumeValue fixed_point_side = localization_volume(w, options.limits);
                if (options.perturb) options.perturb(n, trial, partition_side);
                if (!(partition_side == fixed_point_side))
                    results[i] = Anomaly{n, trial, std::move(w), std::move(partition_side), std::move(fixed_point_side)};
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next.store(jobs.size());
        }
    };

    const unsigned threads = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(jobs.size())));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    for (auto& r : results)
        if (r) report.anomalies.push_back(std::move(*r));
    report.elapsed = std::chrono::steady_clock::now() - start;
    return report;
}

/// First index carrying the smallest weight.
inline int min_weight_index(const WeightVector& w)
{
    int m = 1;
    for (int i = 2; i <= w.n(); ++i)
        if (w.at(i) < w.at(m)) m = i;
    return m;
}

// ---------------------------------------------------------------------------
// Continuity from the Fano side towards sum(d) = 2
// ---------------------------------------------------------------------------

struct ContinuityRow {
    Rational epsilon;
    Rational coefficient;
    Rational deviation; // |coefficient - base coefficient|
};

struct ContinuityTable {
    WeightVector base;
    std::string direction;
    Rational base_coefficient;
    unsigned pi_power = 0;
    std::vector<ContinuityRow> rows;
};

namespace detail {

inline WeightVector require_cy(const WeightVector& w)
{
    if (w.sum() != 2) throw Error(Errc::NotCalabiYau, "base weights sum to " + w.sum().get_str() + ", not 2");
    return w;
}

inline ContinuityTable probe(const WeightVector& base, std::string direction, std::span<const Rational> epsilons,
                             const std::function<WeightVector(const Rational&)>& path, const EnumerationLimits& limits)
{
    ContinuityTable table{require_cy(base), std::move(direction), 0, 0, {}};
    const auto reference = mcmullen_volume(base, limits);
    table.base_coefficient = reference.coefficient;
    table.pi_power = reference.pi_power;
    for (const auto& eps : epsilons) {
        if (eps < 0 || eps >= 1) throw Error(Errc::InvalidArgs, "epsilon " + eps.get_str() + " is not in [0,1)");
        const auto value = localization_volume(path(eps), limits);
        Rational diff = value.coefficient - table.base_coefficient;
        table.rows.push_back({eps, value.coefficient, abs(diff)});
    }
    return table;
}

} // namespace detail

/// Uniform scaling w(eps) = (1 - eps/2) w*, so that sum w(eps) = 2 - eps.
inline ContinuityTable continuity_probe(const WeightVector& w_star, std::span<const Rational> epsilons,
                                        const EnumerationLimits& limits = {})
{
    auto path = [&](const Rational& eps) {
        std::vector<Rational> scaled;
        const Rational factor = 1 - eps / 2;
        for (const auto& d : w_star.values()) scaled.push_back(factor * d);
        return validate_weights(scaled);
    };
    return detail::probe(w_star, "uniform-scaling", epsilons, path, limits);
}

/// Straight path w(eps) = w* + eps * direction. Every point must be a valid
/// weight vector with sum <= 2.
inline ContinuityTable continuity_probe_along(const WeightVector& w_star, std::span<const Rational> direction,
                                              std::span<const Rational> epsilons, std::string description,
                                              const EnumerationLimits& limits = {})
{
    if (direction.size() != w_star.size())
        throw Error(Errc::DimensionMismatch, "direction has " + std::to_string(direction.size()) + " entries, weights have " +
                                                 std::to_string(w_star.size()));
    auto path = [&](const Rational& eps) {
        std::vector<Rational> moved;
        for (std::size_t i = 0; i < direction.size(); ++i) moved.push_back(w_star.values()[i] + eps * direction[i]);
        return validate_weights(moved);
    };
    return detail::probe(w_star, std::move(description), epsilons, path, limits);
}

/// Direction that shrinks every weight except the smallest one equally and
/// lowers the total by 1 per unit of eps.
inline std::vector<Rational> shrink_all_but_min_direction(const WeightVector& w)
{
    const int min_index = min_weight_index(w);
    std::vector<Rational> dir(w.size(), make_rational(-1, w.n() - 1));
    dir[static_cast<std::size_t>(min_index - 1)] = 0;
    return dir;
}

struct LinearBound {
    Rational slope; // deviation / epsilon at the largest epsilon
    bool holds = false;
};

/// deviation(eps) <= K eps for every row, with K taken from the row with
/// the largest epsilon.
inline LinearBound linear_bound_from_largest_row(const ContinuityTable& table)
{
    LinearBound out;
    const ContinuityRow* largest = nullptr;
    for (const auto& row : table.rows)
        if (!largest || row.epsilon > largest->epsilon) largest = &row;
    if (!largest || largest->epsilon == 0) return out;
    out.slope = largest->deviation / largest->epsilon;
    out.holds = std::all_of(table.rows.begin(), table.rows.end(),
                            [&](const ContinuityRow& row) { return row.deviation <= out.slope * row.epsilon; });
    return out;
}

// ---------------------------------------------------------------------------
// Four-point chamber where only pairs containing the smallest weight have
// positive moment.
// ---------------------------------------------------------------------------

inline bool in_propordine_chamber(const WeightVector& w)
{
    if (w.n() != 4) return false;
    const int m = min_weight_index(w);
    for (int i = 1; i <= 4; ++i)
        for (int j = i + 1; j <= 4; ++j) {
            const int s = sgn(moment_value(w, {i, j}));
            const bool has_min = i == m || j == m;
            if (has_min ? s <= 0 : s >= 0) return false;
        }
    return true;
}

inline bool propordine_check(const WeightVector& w, const EnumerationLimits& limits = {})
{
    if (w.n() != 4) throw Error(Errc::DimensionMismatch, "chamber identity is stated for 4 weights");
    if (w.sum() > 2) throw Error(Errc::GeneralTypeUnsupported, "sum of weights exceeds 2");
    if (!in_propordine_chamber(w)) throw Error(Errc::ChamberMismatch, format_weights(w) + " is outside the chamber");
    const auto v = localization_volume(w, limits);
    return v.pi_power == 1 && v.coefficient == 4 * w.at(min_weight_index(w));
}

/// Rejection sampler for the chamber with sum(d) <= 2, weights k/60.
inline WeightVector random_propordine_weights(std::uint64_t seed)
{
    std::mt19937_64 rng(mix_seed(seed));
    std::uniform_int_distribution<long> draw(1, 59);
    while (true) {
        std::vector<Rational> raw;
        for (int i = 0; i < 4; ++i) raw.push_back(make_rational(draw(rng), 60));
        auto w = validate_weights(raw);
        if (w.sum() <= 2 && in_propordine_chamber(w)) return w;
    }
}

// ---------------------------------------------------------------------------

/// Rebuilds the volume from df_invariant over the positive fixed points and
/// compares it with localization_volume.
inline bool df_sum_check(const WeightVector& w, const EnumerationLimits& limits = {})
{
    const auto expected = localization_volume(w, limits);
    const auto k = static_cast<unsigned long>(w.n() - 3);
    Rational sum = 0;
    for (const auto& fp : positive_fixed_points(w, limits)) {
        Rational term = pow(df_invariant(w, fp.flipped), k);
        if (fp.flipped.size() % 2) sum -= term;
        else sum += term;
    }
    return expected == VolumeValue{localization_prefactor(w.n()) * sum, static_cast<unsigned>(k)};
}

} // namespace mdvol

// Acceptance driver: one [PASS]/[FAIL] line per criterion, nonzero exit on
// any failure.

#include "mdvol/mdvol.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace mdvol;
using Clock = std::chrono::steady_clock;

namespace {

struct Check {
    bool ok = true;
    std::vector<std::string> failures;

    void expect(bool cond, const std::string& what)
    {
        if (!cond) {
            ok = false;
            if (failures.size() < 5) failures.push_back(what);
        }
    }
};

double seconds_since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

std::string fixed(double x, int prec = 1)
{
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(prec);
    s << x;
    return s.str();
}

WeightVector w_of(const char* s) { return parse_weights(s); }

int report(int id, const std::string& title, const Check& c, const std::string& detail)
{
    std::cout << (c.ok ? "[PASS] " : "[FAIL] ") << "AC" << id << " " << title;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << '\n';
    for (const auto& f : c.failures) std::cout << "       " << f << '\n';
    std::cout.flush();
    return c.ok ? 0 : 1;
}

template <class Fn>
void guarded(Check& c, Fn&& fn)
{
    try {
        fn();
    } catch (const std::exception& e) {
        c.expect(false, std::string("exception: ") + e.what());
    }
}

int ac1()
{
    Check c;
    std::string detail;
    guarded(c, [&] {
        AnomalyOptions opts;
        opts.jobs = std::max(1u, std::thread::hardware_concurrency());
        const int ns[] = {4, 5, 6, 7, 8, 9};
        const auto start = Clock::now();
        const auto r = anomaly_test(ns, std::nullopt, 20240101, opts);
        const double secs = seconds_since(start);
        c.expect(r.trials == 4 * 10000 + 2 * 1000, "trial count " + std::to_string(r.trials));
        c.expect(r.anomalies.empty(), std::to_string(r.anomalies.size()) + " anomalies");
        c.expect(secs <= 300, "runtime " + fixed(secs) + " s exceeds 300 s");
        detail = std::to_string(r.trials) + " trials, " + std::to_string(r.anomalies.size()) + " anomalies, " +
                 fixed(secs) + " s on " + std::to_string(opts.jobs) + " threads";
    });
    return report(1, "cross-formula exactness", c, detail);
}

int ac2()
{
    Check c;
    guarded(c, [&] {
        struct Golden {
            const char* weights;
            Rational coefficient;
            unsigned pi_power;
        };
        const Golden table[] = {
            {"1/2,1/2,1/2,1/2", 2, 1},
            {"3/10,11/20,11/20,3/5", Rational(6, 5), 1},
            {"1/3,1/2,1/2,2/3", Rational(4, 3), 1},
            {"2/5,2/5,2/5,2/5,2/5", Rational(8, 5), 2},
            {"2/3,2/3,2/3", 1, 0},
        };
        for (const auto& g : table) {
            const auto w = w_of(g.weights);
            const VolumeValue want{g.coefficient, g.pi_power};
            c.expect(mcmullen_volume(w) == want, std::string("mcmullen ") + g.weights);
            c.expect(localization_volume(w) == want, std::string("localization ") + g.weights);
            c.expect(cy_reduced_volume(w) == want, std::string("cy-reduced ") + g.weights);
        }
        c.expect(localization_volume(w_of("1/5,1/2,1/2,1/2")) == VolumeValue{Rational(4, 5), 1}, "Fano 1/5,1/2,1/2,1/2");
    });
    return report(2, "golden values", c, "6 inputs, every applicable engine");
}

int ac3()
{
    Check c;
    guarded(c, [&] {
        for (std::uint64_t seed = 0; seed < 1000; ++seed) {
            const auto w = random_propordine_weights(seed);
            c.expect(w.sum() <= 2 && in_propordine_chamber(w), "sampler left the chamber: " + format_weights(w));
            c.expect(propordine_check(w), "coefficient != 4 d_min for " + format_weights(w));
        }
        for (const char* s : {"3/10,11/20,11/20,3/5", "1/5,1/2,1/2,1/2", "1/4,7/12,7/12,7/12"}) {
            const auto w = w_of(s);
            const int m = min_weight_index(w);
            const std::vector<Rational> raw(w.values().begin(), w.values().end());
            const Rational deg = cm_degree_fano(1, raw, m, Polarization::Anticanonical);
            c.expect(deg == 4 * w.at(m), std::string("cm degree != 4 d_min for ") + s);
            c.expect(localization_volume(w) == VolumeValue{deg, 1}, std::string("pi * cm degree != volume for ") + s);
        }
    });
    return report(3, "four-point chamber identity and CM bridge", c, "1000 sampled vectors, 3 bridge inputs");
}

int ac4()
{
    Check c;
    std::string detail;
    guarded(c, [&] {
        const std::vector<Rational> eps{Rational(1, 10), Rational(1, 100), Rational(1, 1000), Rational(1, 10000)};
        const std::vector<WeightVector> bases{w_of("1/2,1/2,1/2,1/2"), w_of("1/4,7/12,7/12,7/12"),
                                              random_cy_weights(5, 4242)};
        for (const auto& base : bases) {
            const auto table = continuity_probe(base, eps);
            const auto bound = linear_bound_from_largest_row(table);
            std::string rows;
            for (const auto& row : table.rows)
                rows += " " + to_fraction_string(row.epsilon) + ":" + to_fraction_string(row.deviation);
            c.expect(bound.holds, "K = " + to_fraction_string(bound.slope) + " from eps = 1/10 does not bound " +
                                      format_weights(base) + " deviations" + rows);
        }
        const auto chamber_base = w_of("1/4,7/12,7/12,7/12");
        const auto path = continuity_probe_along(chamber_base, shrink_all_but_min_direction(chamber_base), eps,
                                                 "shrink-non-minimal");
        for (const auto& row : path.rows)
            c.expect(row.deviation == 0, "chamber path deviation " + to_fraction_string(row.deviation) + " at eps " +
                                             to_fraction_string(row.epsilon));
        detail = "3 bases x 4 epsilons plus chamber path";
    });
    return report(4, "continuity towards sum 2", c, detail);
}

int ac5()
{
    Check c;
    guarded(c, [&] {
        std::mt19937_64 rng(mix_seed(55));
        std::uniform_int_distribution<int> dim_draw(1, 3);
        std::uniform_int_distribution<int> m_draw(4, 7);
        std::uniform_int_distribution<long> k_draw(1, 59);
        for (int trial = 0; trial < 100; ++trial) {
            const int dim = dim_draw(rng);
            const int m = m_draw(rng);
            std::vector<Rational> w;
            do {
                w.clear();
                Rational total = 0;
                for (int i = 0; i < m; ++i) total += w.emplace_back(make_rational(k_draw(rng), 60));
                if (total < dim + 1) break;
            } while (true);
            const auto minus = cm_multidegree(dim, w, Polarization::AnticanonicalMinusDivisor);
            const auto anti = cm_multidegree(dim, w, Polarization::Anticanonical);
            const Rational ratio = *minus.fiber_volume / (dim + 1);
            for (std::size_t j = 0; j < w.size(); ++j)
                c.expect(minus.degrees[j] / anti.degrees[j] == ratio,
                         "proportionality fails at trial " + std::to_string(trial) + " j = " + std::to_string(j + 1));
        }
        for (std::uint64_t seed = 0; seed < 100; ++seed)
            c.expect(cm_degree_general_type(random_cy_weights(4, seed)) == 0, "nonzero at sum 2, seed " + std::to_string(seed));
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<Rational> w;
            Rational total;
            do {
                w.clear();
                total = 0;
                for (int i = 0; i < 4; ++i) total += w.emplace_back(make_rational(k_draw(rng), 60));
            } while (total <= 2);
            const auto gt = validate_weights(w);
            c.expect(cm_degree_general_type(gt) > 0, "not positive for " + format_weights(gt));
        }
    });
    return report(5, "CM degree identities", c, "100 Fano inputs, 100 at sum 2, 100 above");
}

int ac6()
{
    Check c;
    std::string detail;
    guarded(c, [&] {
        for (int n = 1; n <= 12; ++n) {
            BigInt total = 0;
            for (int k = 1; k <= n; ++k) {
                BigInt count = 0;
                for (const auto& p : partitions_into_k_blocks(n, k)) {
                    (void)p;
                    ++count;
                }
                c.expect(count == stirling2(n, k), "count S(" + std::to_string(n) + "," + std::to_string(k) + ")");
                total += count;
            }
            c.expect(total == bell(n), "count B(" + std::to_string(n) + ")");
        }
        for (int n = 1; n <= 8; ++n)
            for (int k = 1; k <= n; ++k) {
                std::set<SetPartition> seen;
                std::size_t emitted = 0;
                for (const auto& p : partitions_into_k_blocks(n, k)) {
                    SetPartition canon = p;
                    for (auto& b : canon.blocks) std::sort(b.begin(), b.end());
                    std::sort(canon.blocks.begin(), canon.blocks.end());
                    seen.insert(std::move(canon));
                    ++emitted;
                }
                c.expect(seen.size() == emitted, "duplicate partition at n = " + std::to_string(n));
            }
        const auto start = Clock::now();
        std::size_t streamed = 0;
        for (int k = 1; k <= 12; ++k)
            for (const auto& p : partitions_into_k_blocks(12, k)) streamed += p.block_count() > 0;
        const double secs = seconds_since(start);
        c.expect(BigInt(static_cast<unsigned long>(streamed)) == bell(12), "streamed " + std::to_string(streamed));
        c.expect(secs <= 60, "B(12) stream took " + fixed(secs) + " s");
        detail = "B(12) = " + std::to_string(streamed) + " streamed in " + fixed(secs, 2) + " s";
    });
    return report(6, "combinatorics substrate", c, detail);
}

int ac7()
{
    Check c;
    guarded(c, [&] {
        std::mt19937_64 rng(mix_seed(77));
        std::uniform_int_distribution<int> n_draw(4, 8);
        for (int pair = 0; pair < 500; ++pair) {
            const int n = n_draw(rng);
            const auto w = random_cy_weights(n, rng());
            std::vector<Rational> shuffled(w.values().begin(), w.values().end());
            std::shuffle(shuffled.begin(), shuffled.end(), rng);
            const auto p = validate_weights(shuffled);
            const auto m = mcmullen_volume(w);
            const auto l = localization_volume(w);
            c.expect(mcmullen_volume(p) == m, "mcmullen not symmetric for " + format_weights(w));
            c.expect(localization_volume(p) == l, "localization not symmetric for " + format_weights(w));
            c.expect(m.coefficient > 0 && l.coefficient > 0, "non-positive volume for " + format_weights(w));
        }

        const auto centre = w_of("1/2,1/2,1/2,1/2");
        c.expect(wall_report(centre).on_wall, "centre should lie on a wall");
        const Rational centre_value = mcmullen_volume(centre).coefficient;
        Rational previous = -1;
        for (int e = 1; e <= 6; ++e) {
            Rational delta = 1;
            for (int i = 0; i < e; ++i) delta /= 10;
            // perturbation (3,1,-2,-2) delta has no vanishing pair sum, so
            // neither neighbour lies on a wall
            const auto cy = validate_weights({Rational(1, 2) + 3 * delta, Rational(1, 2) + delta,
                                              Rational(1, 2) - 2 * delta, Rational(1, 2) - 2 * delta});
            std::vector<Rational> scaled;
            for (const auto& d : cy.values()) scaled.push_back((1 - delta / 2) * d);
            const auto fano = validate_weights(scaled);
            c.expect(!wall_report(cy).on_wall && !wall_report(fano).on_wall, "neighbour lies on a wall");
            const Rational dev_cy = abs(mcmullen_volume(cy).coefficient - centre_value);
            const Rational dev_fano = abs(localization_volume(fano).coefficient - centre_value);
            c.expect(dev_cy <= 13 * delta && dev_fano <= 13 * delta,
                     "wall neighbour too far at delta 1e-" + std::to_string(e));
            if (previous >= 0) c.expect(dev_cy < previous, "deviation not shrinking");
            previous = dev_cy;
        }

        for (std::uint64_t seed = 0; seed < 1000; ++seed) {
            const auto w = random_cy_weights(4 + static_cast<int>(seed % 6), mix_seed(seed + 1));
            c.expect(df_sum_check(w), "df sum mismatch for " + format_weights(w));
        }
    });
    return report(7, "invariant suite", c, "500 permuted pairs, 12 wall neighbours, 1000 df sums");
}

} // namespace

int main()
{
    int failed = 0;
    failed += ac1();
    failed += ac2();
    failed += ac3();
    failed += ac4();
    failed += ac5();
    failed += ac6();
    failed += ac7();
    std::cout << (failed ? std::to_string(failed) + " of 7 criteria failed" : std::string("all 7 criteria passed")) << '\n';
    return failed ? 1 : 0;
}

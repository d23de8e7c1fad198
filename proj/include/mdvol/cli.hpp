#pragma once

// Command-line front end. Exit codes: 0 ok, 1 malformed input or domain
// error, 2 unsupported size, 3 anomaly (formulas disagree).

#include "mdvol/mdvol.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

namespace mdvol::cli {

enum ExitCode : int { kOk = 0, kBadInput = 1, kUnsupportedSize = 2, kAnomaly = 3 };

inline int exit_code_for(const Error& e) { return e.code() == Errc::UnsupportedSize ? kUnsupportedSize : kBadInput; }

/// "4..7", "4,5,9" or a mix such as "4..6,9".
inline std::vector<int> parse_n_list(const std::string& text)
{
    std::vector<int> out;
    std::size_t start = 0;
    auto to_int = [&](const std::string& s) {
        auto t = std::string(detail::trim(s));
        if (!detail::all_digits(t)) throw Error(Errc::InvalidArgs, "bad n value '" + t + "'");
        return std::stoi(t);
    };
    while (start <= text.size()) {
        auto comma = text.find(',', start);
        std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (auto dots = item.find(".."); dots != std::string::npos) {
            int lo = to_int(item.substr(0, dots));
            int hi = to_int(item.substr(dots + 2));
            if (hi < lo) throw Error(Errc::InvalidArgs, "empty range '" + item + "'");
            for (int v = lo; v <= hi; ++v) out.push_back(v);
        } else {
            out.push_back(to_int(item));
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

struct Options {
    int partition_cap = 12;

    std::string weights;
    std::string formula = "auto";
    bool json = false;

    int dim = 1;
    std::string polarization;
    std::optional<int> index;

    std::string n_list = "4..9";
    std::optional<std::size_t> trials;
    std::uint64_t seed = 0;
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    std::optional<std::size_t> inject_fault;

    std::string epsilons = "1/10,1/100,1/1000";
    std::string direction;
    std::string format = "csv";

    int scan_n = 4;
    std::string grid = "1/20";
    std::string output = "-";
};

namespace detail {

inline EnumerationLimits limits_of(const Options& o)
{
    EnumerationLimits l;
    l.partition_cap = o.partition_cap;
    return l;
}

inline VolumeValue compute(const std::string& formula, const WeightVector& w, const EnumerationLimits& limits)
{
    if (formula == "mcmullen") return mcmullen_volume(w, limits);
    if (formula == "localization") return localization_volume(w, limits);
    if (formula == "cy-reduced") return cy_reduced_volume(w, limits);
    throw Error(Errc::InvalidArgs, "unknown formula '" + formula + "'");
}

inline std::vector<std::string> formulas_for(const std::string& choice, const WeightVector& w,
                                             const EnumerationLimits& limits)
{
    if (choice == "both") return {"mcmullen", "localization"};
    if (choice == "all") return {"mcmullen", "localization", "cy-reduced"};
    if (choice == "auto") {
        if (w.sum() == 2 && w.n() <= limits.partition_cap) return {"mcmullen", "localization"};
        return {"localization"};
    }
    return {choice};
}

inline int cmd_volume(const Options& o, std::ostream& out, std::ostream& err)
{
    const auto w = parse_weights(o.weights);
    const auto limits = limits_of(o);
    const bool on_wall = wall_report(w, limits).on_wall;
    std::vector<VolumeRecord> records;
    for (const auto& f : formulas_for(o.formula, w, limits)) records.push_back(make_volume_record(w, f, compute(f, w, limits), on_wall));

    if (o.json) {
        Json arr = Json::array();
        for (const auto& r : records) arr.push_back(to_json(r));
        out << arr.dump(2) << '\n';
    } else {
        for (const auto& r : records)
            out << r.formula << ": " << to_fraction_string(r.coefficient) << " * pi^" << r.pi_power << " ~ " << r.approx
                << (r.on_wall ? " (on wall)" : "") << '\n';
    }
    for (std::size_t i = 1; i < records.size(); ++i) {
        if (!(records[i].value() == records[0].value())) {
            err << "anomaly: " << records[0].formula << " and " << records[i].formula << " disagree\n";
            return kAnomaly;
        }
    }
    return kOk;
}

inline int cmd_classify(const Options& o, std::ostream& out, std::ostream&)
{
    const auto w = parse_weights(o.weights);
    const auto walls = wall_report(w, limits_of(o));
    const auto geometry = classify_geometry(w);
    std::optional<HassettCase> hc;
    if (w.n() == 4) hc = hassett_case(w);

    if (o.json) {
        Json j;
        j["n"] = w.n();
        j["weights"] = weights_to_json(w);
        j["sum"] = to_fraction_string(w.sum());
        j["geometry"] = std::string(geometry_name(geometry));
        j["git_nonempty"] = git_nonempty(w);
        j["walls"] = to_json(walls);
        j["hassett_case"] = hc ? Json(std::string(hassett_case_name(*hc))) : Json(nullptr);
        out << j.dump(2) << '\n';
        return kOk;
    }
    out << "weights: " << format_weights(w) << "\n";
    out << "sum: " << w.sum().get_str() << "\n";
    out << "geometry: " << geometry_name(geometry) << "\n";
    out << "git_nonempty: " << (git_nonempty(w) ? "true" : "false") << "\n";
    out << "hassett_walls:";
    for (const auto& s : walls.hassett_walls) out << ' ' << format_subset(s);
    out << "\nlocalization_walls:";
    for (const auto& s : walls.localization_walls) out << ' ' << format_subset(s);
    out << "\non_wall: " << (walls.on_wall ? "true" : "false") << "\n";
    if (hc) out << "hassett_case: " << hassett_case_name(*hc) << "\n";
    return kOk;
}

inline int cmd_cm_degree(const Options& o, std::ostream& out, std::ostream&)
{
    const auto pol = parse_polarization(o.polarization);
    if (!pol) throw Error(Errc::InvalidArgs, "unknown polarization '" + o.polarization + "'");
    const auto weights = parse_rational_list(o.weights);
    auto report = cm_report(o.dim, weights, *pol);
    if (o.index) {
        auto it = std::find(report.indices.begin(), report.indices.end(), *o.index);
        if (it == report.indices.end())
            throw Error(Errc::InvalidArgs, "no degree for index " + std::to_string(*o.index));
        const auto pos = static_cast<std::size_t>(it - report.indices.begin());
        report.degrees = {report.degrees[pos]};
        report.indices = {*o.index};
    }
    if (o.json) {
        out << to_json(report).dump(2) << '\n';
        return kOk;
    }
    out << "polarization: " << polarization_name(report.polarization) << "\n";
    out << "geometry: " << geometry_name(report.geometry) << "\n";
    out << "fiber_volume: " << (report.fiber_volume ? to_fraction_string(*report.fiber_volume) : "n/a") << "\n";
    for (std::size_t i = 0; i < report.degrees.size(); ++i)
        out << "r_" << report.indices[i] << " = " << to_fraction_string(report.degrees[i]) << "\n";
    return kOk;
}

inline int cmd_anomaly_test(const Options& o, std::ostream& out, std::ostream& err)
{
    const auto ns = parse_n_list(o.n_list);
    AnomalyOptions opts;
    opts.jobs = std::max(1u, o.jobs);
    opts.limits = limits_of(o);
    if (o.inject_fault) {
        const std::size_t target = *o.inject_fault;
        const int first_n = ns.front();
        opts.perturb = [target, first_n](int n, std::size_t trial, VolumeValue& v) {
            if (n == first_n && trial == target) v.coefficient += Rational(1, 1000003);
        };
    }
    const auto report = anomaly_test(ns, o.trials, o.seed, opts);
    out << to_json(report).dump(2) << '\n';
    err << "trials: " << report.trials << ", anomalies: " << report.anomalies.size()
        << ", elapsed: " << report.elapsed.count() << " s\n";
    return report.anomalies.empty() ? kOk : kAnomaly;
}

inline int cmd_continuity(const Options& o, std::ostream& out, std::ostream&)
{
    const auto w = parse_weights(o.weights);
    const auto eps = parse_rational_list(o.epsilons);
    ContinuityTable table = o.direction.empty()
                                ? continuity_probe(w, eps, limits_of(o))
                                : continuity_probe_along(w, parse_rational_list(o.direction), eps,
                                                         "direction(" + o.direction + ")", limits_of(o));
    if (o.format == "json") out << to_json(table).dump(2) << '\n';
    else out << continuity_csv(table);
    return kOk;
}

inline int cmd_scan(const Options& o, std::ostream& out, std::ostream&)
{
    const int n = o.scan_n;
    if (n < 3) throw Error(Errc::DimensionTooSmall, "scan needs n >= 3");
    const auto step = parse_rational(o.grid);
    if (!step || *step <= 0 || *step >= 1) throw Error(Errc::InvalidArgs, "grid step must be a rational in (0,1)");
    const auto limits = limits_of(o);
    const std::string formula = o.formula == "auto" ? "localization" : o.formula;
    if (formula != "mcmullen" && formula != "localization" && formula != "cy-reduced")
        throw Error(Errc::InvalidArgs, "scan formula must be mcmullen, localization or cy-reduced");
    if (n > limits.subset_cap || (formula == "mcmullen" && n > limits.partition_cap))
        throw Error(Errc::UnsupportedSize, "scan for n = " + std::to_string(n));

    std::ofstream file;
    std::ostream* sink = &out;
    if (o.output != "-") {
        file.open(o.output);
        if (!file) throw Error(Errc::InvalidArgs, "cannot open '" + o.output + "' for writing");
        sink = &file;
    }

    // slice: d1 = x, d2 = y, the other n-2 weights share 2 - x - y equally
    *sink << volume_csv_header(n) << '\n';
    for (Rational x = *step; x < 1; x += *step) {
        for (Rational y = *step; y < 1; y += *step) {
            Rational rest = 2 - x - y;
            Rational each = rest / (n - 2);
            if (each <= 0 || each >= 1) continue;
            std::vector<Rational> raw{x, y};
            for (int i = 2; i < n; ++i) raw.push_back(each);
            const auto w = validate_weights(raw);
            const auto v = compute(formula, w, limits);
            *sink << volume_csv_row(make_volume_record(w, formula, v, wall_report(w, limits).on_wall)) << '\n';
        }
    }
    return kOk;
}

} // namespace detail

/// Runs one invocation; `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact volumes of moduli spaces of weighted points on the projective line", "mdvol"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--partition-cap", o.partition_cap, "Largest n for set-partition sums")->check(CLI::Range(3, 20));

    auto* volume = app.add_subcommand("volume", "Volume by one or more formulas");
    volume->add_option("--weights", o.weights, "Comma-separated weights, p/q or decimal")->required();
    volume->add_option("--formula", o.formula, "mcmullen|localization|cy-reduced|both|all|auto")
        ->check(CLI::IsMember({"mcmullen", "localization", "cy-reduced", "both", "all", "auto"}));
    volume->add_flag("--json", o.json, "JSON output");

    auto* classify = app.add_subcommand("classify", "Geometry class, walls and Hassett case");
    classify->add_option("--weights", o.weights)->required();
    classify->add_flag("--json", o.json);

    auto* cm = app.add_subcommand("cm-degree", "CM line bundle degrees");
    cm->add_option("--dim", o.dim, "Dimension of the projective space")->check(CLI::PositiveNumber);
    cm->add_option("--weights", o.weights)->required();
    cm->add_option("--polarization", o.polarization, "anti-minus-div|anti|log-canonical")
        ->required()
        ->check(CLI::IsMember({"anti-minus-div", "anti", "log-canonical"}));
    cm->add_option("--index", o.index, "Report only r_j for this 1-based index");
    cm->add_flag("--json", o.json);

    auto* anomaly = app.add_subcommand("anomaly-test", "Randomized exact comparison of the two volume formulas");
    anomaly->add_option("--n", o.n_list, "Sizes, e.g. 4..7 or 4,5,8");
    anomaly->add_option("--trials", o.trials, "Trials per n (default 10000 for n <= 7, else 1000)");
    anomaly->add_option("--seed", o.seed);
    anomaly->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
    anomaly->add_option("--inject-fault", o.inject_fault, "Perturb the given trial of the first n (harness self-test)");

    auto* continuity = app.add_subcommand("continuity", "Approach sum = 2 from the Fano side");
    continuity->add_option("--weights", o.weights, "Base weights summing to 2")->required();
    continuity->add_option("--epsilons", o.epsilons);
    continuity->add_option("--direction", o.direction, "Path direction; default is uniform scaling");
    continuity->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));

    auto* scan = app.add_subcommand("scan", "Grid over a two-parameter slice of the sum-2 simplex (CSV)");
    scan->add_option("--n", o.scan_n)->check(CLI::Range(3, 30));
    scan->add_option("--grid", o.grid, "Grid step, e.g. 1/20");
    scan->add_option("--output", o.output, "Output file, - for stdout");
    scan->add_option("--formula", o.formula)->check(CLI::IsMember({"mcmullen", "localization", "cy-reduced", "auto"}));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kBadInput;
    }

    try {
        if (*volume) return detail::cmd_volume(o, out, err);
        if (*classify) return detail::cmd_classify(o, out, err);
        if (*cm) return detail::cmd_cm_degree(o, out, err);
        if (*anomaly) return detail::cmd_anomaly_test(o, out, err);
        if (*continuity) return detail::cmd_continuity(o, out, err);
        if (*scan) return detail::cmd_scan(o, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
    return kBadInput;
}

} // namespace mdvol::cli

#pragma once

// JSON and CSV forms of the library's results. JSON objects are emitted with
// a fixed key order (nlohmann::ordered_json) so outputs are byte-stable;
// rationals are always "p/q" strings.

#include "mdvol/cm_degree.hpp"
#include "mdvol/equivalence_lab.hpp"
#include "mdvol/error.hpp"
#include "mdvol/rational.hpp"
#include "mdvol/volume.hpp"
#include "mdvol/weights.hpp"

#include <json.hpp>

#include <gmpxx.h>

#include <sstream>
#include <string>
#include <vector>

namespace mdvol {

using Json = nlohmann::ordered_json;

inline constexpr const char* kPi64 = "3.141592653589793238462643383279502884197169399375105820974944592";

/// Decimal rendering of coefficient * pi^pi_power with `digits` significant
/// digits (presentation only; not used by any computation).
inline std::string approx_decimal(const VolumeValue& v, int digits = 20)
{
    constexpr mp_bitcnt_t precision = 320;
    mpf_class pi(kPi64, precision, 10);
    mpf_class value(v.coefficient, precision);
    for (unsigned i = 0; i < v.pi_power; ++i) value *= pi;
    if (value == 0) return "0";

    mp_exp_t exp = 0;
    std::string raw = value.get_str(exp, 10, static_cast<std::size_t>(digits));
    std::string sign;
    if (!raw.empty() && raw.front() == '-') {
        sign = "-";
        raw.erase(0, 1);
    }
    raw.resize(static_cast<std::size_t>(digits), '0');
    if (exp > 0 && exp <= digits) {
        std::string out = raw.substr(0, static_cast<std::size_t>(exp));
        if (static_cast<std::size_t>(exp) < raw.size()) out += "." + raw.substr(static_cast<std::size_t>(exp));
        return sign + out;
    }
    if (exp <= 0 && exp > -8) return sign + "0." + std::string(static_cast<std::size_t>(-exp), '0') + raw;
    return sign + raw.substr(0, 1) + "." + raw.substr(1) + "e" + std::to_string(static_cast<long>(exp) - 1);
}

inline Rational rational_from_json(const Json& j)
{
    if (!j.is_string()) throw Error(Errc::NonRational, "expected a \"p/q\" string");
    auto r = parse_rational(j.get<std::string>());
    if (!r) throw Error(Errc::NonRational, "cannot parse '" + j.get<std::string>() + "'");
    return *r;
}

inline Json subsets_to_json(const std::vector<IndexSubset>& subsets)
{
    Json arr = Json::array();
    for (const auto& s : subsets) arr.push_back(s);
    return arr;
}

// ---------------------------------------------------------------------------
// VolumeRecord: n, weights, geometry, formula, coefficient, pi_power,
// on_wall, approx
// ---------------------------------------------------------------------------

struct VolumeRecord {
    int n = 0;
    std::vector<Rational> weights;
    GeometryClass geometry = GeometryClass::LogCalabiYau;
    std::string formula; // "mcmullen" | "localization" | "cy-reduced"
    Rational coefficient;
    unsigned pi_power = 0;
    bool on_wall = false;
    std::string approx;

    VolumeValue value() const { return {coefficient, pi_power}; }
};

inline VolumeRecord make_volume_record(const WeightVector& w, std::string formula, const VolumeValue& v, bool on_wall)
{
    VolumeRecord r;
    r.n = w.n();
    r.weights.assign(w.values().begin(), w.values().end());
    r.geometry = classify_geometry(w);
    r.formula = std::move(formula);
    r.coefficient = v.coefficient;
    r.pi_power = v.pi_power;
    r.on_wall = on_wall;
    r.approx = approx_decimal(v);
    return r;
}

inline Json to_json(const VolumeRecord& r)
{
    Json j;
    j["n"] = r.n;
    Json weights = Json::array();
    for (const auto& d : r.weights) weights.push_back(to_fraction_string(d));
    j["weights"] = weights;
    j["geometry"] = std::string(geometry_name(r.geometry));
    j["formula"] = r.formula;
    j["coefficient"] = to_fraction_string(r.coefficient);
    j["pi_power"] = r.pi_power;
    j["on_wall"] = r.on_wall;
    j["approx"] = r.approx;
    return j;
}

inline GeometryClass geometry_from_name(const std::string& s)
{
    for (auto g : {GeometryClass::LogFano, GeometryClass::LogCalabiYau, GeometryClass::LogGeneralType})
        if (geometry_name(g) == s) return g;
    throw Error(Errc::InvalidArgs, "unknown geometry '" + s + "'");
}

inline VolumeRecord volume_record_from_json(const Json& j)
{
    VolumeRecord r;
    try {
        r.n = j.at("n").get<int>();
        for (const auto& d : j.at("weights")) r.weights.push_back(rational_from_json(d));
        r.geometry = geometry_from_name(j.at("geometry").get<std::string>());
        r.formula = j.at("formula").get<std::string>();
        r.coefficient = rational_from_json(j.at("coefficient"));
        r.pi_power = j.at("pi_power").get<unsigned>();
        r.on_wall = j.at("on_wall").get<bool>();
        r.approx = j.value("approx", std::string{});
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::InvalidArgs, std::string("malformed volume record: ") + e.what());
    }
    if (static_cast<std::size_t>(r.n) != r.weights.size())
        throw Error(Errc::InvalidArgs, "volume record n does not match its weights");
    return r;
}

/// Header for records with a fixed n: n,d1..dn,geometry,formula,coefficient,pi_power,on_wall,approx
inline std::string volume_csv_header(int n)
{
    std::string h = "n";
    for (int i = 1; i <= n; ++i) h += ",d" + std::to_string(i);
    return h + ",geometry,formula,coefficient,pi_power,on_wall,approx";
}

inline std::string volume_csv_row(const VolumeRecord& r)
{
    std::string row = std::to_string(r.n);
    for (const auto& d : r.weights) row += "," + to_fraction_string(d);
    row += ",";
    row += geometry_name(r.geometry);
    row += "," + r.formula + "," + to_fraction_string(r.coefficient) + "," + std::to_string(r.pi_power) + "," +
           (r.on_wall ? "true" : "false") + "," + r.approx;
    return row;
}

// ---------------------------------------------------------------------------

inline Json to_json(const WallReport& walls)
{
    Json j;
    j["hassett_walls"] = subsets_to_json(walls.hassett_walls);
    j["localization_walls"] = subsets_to_json(walls.localization_walls);
    j["on_wall"] = walls.on_wall;
    return j;
}

inline Json to_json(const CMDegreeReport& r)
{
    Json j;
    j["polarization"] = std::string(polarization_name(r.polarization));
    j["dim"] = r.dim;
    j["geometry"] = std::string(geometry_name(r.geometry));
    j["fiber_volume"] = r.fiber_volume ? Json(to_fraction_string(*r.fiber_volume)) : Json(nullptr);
    Json degrees = Json::array();
    for (std::size_t i = 0; i < r.degrees.size(); ++i) {
        Json d;
        d["index"] = r.indices[i];
        d["degree"] = to_fraction_string(r.degrees[i]);
        degrees.push_back(d);
    }
    j["degrees"] = degrees;
    return j;
}

inline Json weights_to_json(const WeightVector& w)
{
    Json arr = Json::array();
    for (const auto& d : w.values()) arr.push_back(to_fraction_string(d));
    return arr;
}

/// Elapsed time is deliberately absent: the report is a pure function of its
/// inputs and seed.
inline Json to_json(const AnomalyReport& r)
{
    Json j;
    j["seed"] = r.seed;
    Json per_n = Json::array();
    for (std::size_t i = 0; i < r.n_values.size(); ++i) {
        Json e;
        e["n"] = r.n_values[i];
        e["trials"] = r.trials_per_n[i];
        per_n.push_back(e);
    }
    j["runs"] = per_n;
    j["trials"] = r.trials;
    j["anomaly_count"] = r.anomalies.size();
    Json anomalies = Json::array();
    for (const auto& a : r.anomalies) {
        Json e;
        e["n"] = a.n;
        e["trial"] = a.trial;
        e["weights"] = weights_to_json(a.weights);
        e["mcmullen"] = to_fraction_string(a.mcmullen.coefficient);
        e["localization"] = to_fraction_string(a.localization.coefficient);
        e["pi_power"] = a.localization.pi_power;
        anomalies.push_back(e);
    }
    j["anomalies"] = anomalies;
    return j;
}

inline Json to_json(const ContinuityTable& t)
{
    Json j;
    j["base_weights"] = weights_to_json(t.base);
    j["direction"] = t.direction;
    j["base_coefficient"] = to_fraction_string(t.base_coefficient);
    j["pi_power"] = t.pi_power;
    Json rows = Json::array();
    for (const auto& row : t.rows) {
        Json e;
        e["epsilon"] = to_fraction_string(row.epsilon);
        e["coefficient"] = to_fraction_string(row.coefficient);
        e["deviation"] = to_fraction_string(row.deviation);
        rows.push_back(e);
    }
    j["rows"] = rows;
    return j;
}

inline std::string continuity_csv(const ContinuityTable& t)
{
    std::ostringstream out;
    out << "epsilon,coefficient,deviation\n";
    for (const auto& row : t.rows)
        out << to_fraction_string(row.epsilon) << ',' << to_fraction_string(row.coefficient) << ','
            << to_fraction_string(row.deviation) << '\n';
    return out.str();
}

} // namespace mdvol

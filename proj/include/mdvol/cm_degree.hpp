#pragma once

// Degrees of the CM line bundle on the trivial family P^dim x P^1 -> P^1
// carrying m weighted hyperplanes, one of which moves along the diagonal.

#include "mdvol/error.hpp"
#include "mdvol/rational.hpp"
#include "mdvol/weights.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mdvol {

enum class Polarization {
    AnticanonicalMinusDivisor, // L = -K - D
    Anticanonical,             // L = -K
    LogCanonical,              // L = K + D
};

constexpr std::string_view polarization_name(Polarization p) noexcept
{
    switch (p) {
    case Polarization::AnticanonicalMinusDivisor: return "anti-minus-div";
    case Polarization::Anticanonical: return "anti";
    case Polarization::LogCanonical: return "log-canonical";
    }
    return "unknown";
}

inline std::optional<Polarization> parse_polarization(std::string_view s)
{
    if (s == "anti-minus-div") return Polarization::AnticanonicalMinusDivisor;
    if (s == "anti") return Polarization::Anticanonical;
    if (s == "log-canonical") return Polarization::LogCanonical;
    return std::nullopt;
}

struct CMDegreeReport {
    Polarization polarization = Polarization::Anticanonical;
    int dim = 1;
    std::vector<int> indices;      // 1-based index each degree belongs to
    std::vector<Rational> degrees; // r_j
    std::optional<Rational> fiber_volume;
    GeometryClass geometry = GeometryClass::LogFano;
};

namespace detail {

inline Rational check_arrangement(int dim, std::span<const Rational> w)
{
    if (dim < 1) throw Error(Errc::InvalidArgs, "dimension must be positive");
    if (w.empty()) throw Error(Errc::InvalidArgs, "need at least one hyperplane weight");
    Rational total = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] <= 0 || w[i] >= 1)
            throw Error(Errc::WeightOutOfRange, "d_" + std::to_string(i + 1) + " = " + w[i].get_str() + " is not in (0,1)");
        total += w[i];
    }
    return total;
}

/// The -K degree does not involve the fiber volume, so that polarization
/// also accepts the boundary sum d = dim + 1.
inline Rational check_log_fano(int dim, std::span<const Rational> w, Polarization pol = Polarization::AnticanonicalMinusDivisor)
{
    Rational total = check_arrangement(dim, w);
    if (pol == Polarization::Anticanonical ? total > dim + 1 : total >= dim + 1)
        throw Error(Errc::NotLogFano, "sum of weights " + total.get_str() + " is not below " + std::to_string(dim + 1));
    return total;
}

} // namespace detail

/// Volume of a fiber under -K - D: (dim + 1 - sum d)^dim.
inline Rational fiber_volume(int dim, std::span<const Rational> w)
{
    Rational total = detail::check_log_fano(dim, w);
    return pow(Rational(dim + 1 - total), static_cast<unsigned long>(dim));
}

inline Rational cm_degree_fano(int dim, std::span<const Rational> w, int j, Polarization pol)
{
    Rational total = detail::check_log_fano(dim, w, pol);
    if (j < 1 || j > static_cast<int>(w.size()))
        throw Error(Errc::InvalidArgs, "index " + std::to_string(j) + " out of range");
    const Rational& dj = w[static_cast<std::size_t>(j - 1)];
    switch (pol) {
    case Polarization::AnticanonicalMinusDivisor:
        return (dim + 1) * dj * pow(Rational(dim + 1 - total), static_cast<unsigned long>(dim));
    case Polarization::Anticanonical:
        return (dim + 1) * (dim + 1) * dj;
    case Polarization::LogCanonical:
        break;
    }
    throw Error(Errc::UnsupportedPolarization, "log-canonical polarization has no log Fano degree formula");
}

inline CMDegreeReport cm_multidegree(int dim, std::span<const Rational> w, Polarization pol)
{
    Rational total = detail::check_log_fano(dim, w, pol);
    if (pol == Polarization::LogCanonical)
        throw Error(Errc::UnsupportedPolarization, "log-canonical polarization has no log Fano degree formula");
    CMDegreeReport report;
    report.polarization = pol;
    report.dim = dim;
    report.fiber_volume = pow(Rational(dim + 1 - total), static_cast<unsigned long>(dim));
    report.geometry = classify_sum(total, dim + 1);
    for (int j = 1; j <= static_cast<int>(w.size()); ++j) {
        report.indices.push_back(j);
        report.degrees.push_back(cm_degree_fano(dim, w, j, pol));
    }
    return report;
}

/// Four points on the line with point 4 moving, polarized by K + D:
/// 2 d_4 (sum d - 2). The blow-ups needed when point 4 collides with a fixed
/// point do not change the value.
inline Rational cm_degree_general_type(const WeightVector& w)
{
    if (w.n() != 4) throw Error(Errc::DimensionMismatch, "general type degree needs exactly 4 weights");
    return 2 * w.at(4) * (w.sum() - 2);
}

/// Dispatch over the three polarizations. LogCanonical is only defined for
/// four points on P^1 and reports the single degree of the moving point 4.
inline CMDegreeReport cm_report(int dim, std::span<const Rational> w, Polarization pol)
{
    if (pol != Polarization::LogCanonical) return cm_multidegree(dim, w, pol);
    if (dim != 1 || w.size() != 4)
        throw Error(Errc::DimensionMismatch, "log-canonical degree needs dim 1 and exactly 4 weights");
    Rational total = detail::check_arrangement(dim, w);
    CMDegreeReport report;
    report.polarization = pol;
    report.dim = dim;
    report.geometry = classify_sum(total, 2);
    if (total < 2) report.fiber_volume = Rational(2 - total);
    report.indices.push_back(4);
    report.degrees.push_back(cm_degree_general_type(validate_weights(w)));
    return report;
}

} // namespace mdvol

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mdvol {

enum class Errc {
    DimensionTooSmall,
    WeightOutOfRange,
    NonRational,
    UnsupportedSize,
    InvalidArgs,
    DimensionMismatch,
    NotCalabiYau,
    EmptyQuotient,
    GeneralTypeUnsupported,
    NotLogFano,
    UnsupportedPolarization,
    ChamberMismatch,
};

constexpr std::string_view errc_name(Errc code) noexcept
{
    switch (code) {
    case Errc::DimensionTooSmall: return "DimensionTooSmall";
    case Errc::WeightOutOfRange: return "WeightOutOfRange";
    case Errc::NonRational: return "NonRational";
    case Errc::UnsupportedSize: return "UnsupportedSize";
    case Errc::InvalidArgs: return "InvalidArgs";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NotCalabiYau: return "NotCalabiYau";
    case Errc::EmptyQuotient: return "EmptyQuotient";
    case Errc::GeneralTypeUnsupported: return "GeneralTypeUnsupported";
    case Errc::NotLogFano: return "NotLogFano";
    case Errc::UnsupportedPolarization: return "UnsupportedPolarization";
    case Errc::ChamberMismatch: return "ChamberMismatch";
    }
    return "Unknown";
}

/// Every failure in the library is reported through this type; `code()`
/// is the stable, machine-readable part.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code)
    {
    }

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace mdvol

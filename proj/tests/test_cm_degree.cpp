#include "mdvol/cm_degree.hpp"
#include "mdvol/localization.hpp"

#include <gtest/gtest.h>

using namespace mdvol;

namespace {

std::vector<Rational> ws(const char* s) { return parse_rational_list(s); }

Errc error_of(auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return Errc::InvalidArgs;
}

} // namespace

TEST(FiberVolume, Examples)
{
    EXPECT_EQ(fiber_volume(1, ws("1/4,1/4,1/4,1/4")), 1);
    EXPECT_EQ(fiber_volume(1, ws("1/2,1/2,1/2,1/4")), Rational(1, 4));
    EXPECT_EQ(fiber_volume(2, ws("1/2,1/2,1/2")), Rational(9, 4));
    EXPECT_EQ(error_of([] { fiber_volume(1, ws("1/2,1/2,1/2,1/2")); }), Errc::NotLogFano);
    EXPECT_EQ(error_of([] { fiber_volume(1, ws("1,1/2")); }), Errc::WeightOutOfRange);
}

TEST(CmDegreeFano, Examples)
{
    const auto quarter = ws("1/4,1/4,1/4,1/4");
    for (int j = 1; j <= 4; ++j) {
        EXPECT_EQ(cm_degree_fano(1, quarter, j, Polarization::AnticanonicalMinusDivisor), Rational(1, 2));
        EXPECT_EQ(cm_degree_fano(1, quarter, j, Polarization::Anticanonical), 1);
    }
    // dim 2: (n+1) d_j (n+1-sum)^n = 3 * 1/2 * (3/2)^2
    EXPECT_EQ(cm_degree_fano(2, ws("1/2,1/2,1/2"), 1, Polarization::AnticanonicalMinusDivisor), Rational(27, 8));
    EXPECT_EQ(cm_degree_fano(2, ws("1/2,1/2,1/2"), 2, Polarization::Anticanonical), Rational(9, 2));
}

TEST(CmDegreeFano, AnticanonicalAcceptsAnyFanoWeights)
{
    EXPECT_EQ(cm_degree_fano(1, ws("1/10,1/5,3/10"), 3, Polarization::Anticanonical), Rational(6, 5));
}

TEST(CmDegreeFano, Errors)
{
    EXPECT_EQ(error_of([] { cm_degree_fano(1, ws("1/4,1/4,1/4,1/4"), 1, Polarization::LogCanonical); }),
              Errc::UnsupportedPolarization);
    EXPECT_EQ(error_of([] { cm_degree_fano(1, ws("9/10,9/10,9/10"), 1, Polarization::Anticanonical); }), Errc::NotLogFano);
    EXPECT_EQ(error_of([] { cm_degree_fano(1, ws("1/2,1/2,1/2,1/2"), 1, Polarization::AnticanonicalMinusDivisor); }),
              Errc::NotLogFano);
    EXPECT_EQ(cm_degree_fano(1, ws("1/2,1/2,1/2,1/2"), 1, Polarization::Anticanonical), 2);
    EXPECT_EQ(error_of([] { cm_degree_fano(1, ws("1/4,1/4"), 3, Polarization::Anticanonical); }), Errc::InvalidArgs);
}

TEST(CmMultidegree, ProportionalToPrequantumDegrees)
{
    const auto w = ws("1/10,1/5,3/10,1/4,1/8");
    for (int dim = 1; dim <= 3; ++dim) {
        auto minus = cm_multidegree(dim, w, Polarization::AnticanonicalMinusDivisor);
        auto anti = cm_multidegree(dim, w, Polarization::Anticanonical);
        ASSERT_TRUE(minus.fiber_volume);
        ASSERT_EQ(minus.degrees.size(), w.size());
        for (std::size_t j = 0; j < w.size(); ++j) {
            EXPECT_EQ(minus.degrees[j], *minus.fiber_volume * (dim + 1) * w[j]);
            EXPECT_EQ(anti.degrees[j], Rational(dim + 1) * (dim + 1) * w[j]);
            EXPECT_EQ(minus.degrees[j] / anti.degrees[j], *minus.fiber_volume / (dim + 1));
        }
    }
}

TEST(CmMultidegree, QuarterWeights)
{
    auto r = cm_multidegree(1, ws("1/4,1/4,1/4,1/4"), Polarization::AnticanonicalMinusDivisor);
    EXPECT_EQ(r.degrees, std::vector<Rational>(4, Rational(1, 2)));
    EXPECT_EQ(r.geometry, GeometryClass::LogFano);
    auto a = cm_multidegree(1, ws("1/4,1/4,1/4,1/4"), Polarization::Anticanonical);
    EXPECT_EQ(a.degrees, std::vector<Rational>(4, Rational(1)));
}

TEST(CmDegreeGeneralType, Examples)
{
    EXPECT_EQ(cm_degree_general_type(parse_weights("9/10,9/10,9/10,1/20")), Rational(3, 40));
    EXPECT_EQ(cm_degree_general_type(parse_weights("7/10,7/10,7/10,1/2")), Rational(3, 5));
    EXPECT_EQ(cm_degree_general_type(parse_weights("1/2,1/2,1/2,1/2")), 0);
    EXPECT_EQ(error_of([] { cm_degree_general_type(parse_weights("1/2,1/2,1/2")); }), Errc::DimensionMismatch);
}

TEST(CmDegreeGeneralType, SignAcrossCalabiYau)
{
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        auto w = random_cy_weights(4, seed);
        EXPECT_EQ(cm_degree_general_type(w), 0);
    }
    for (const char* s : {"3/5,3/5,3/5,1/4", "3/5,3/5,3/5,9/20", "99/100,99/100,99/100,1/100"})
        EXPECT_GT(cm_degree_general_type(parse_weights(s)), 0) << s;
}

TEST(CmDegree, FourPointBridge)
{
    // 4 d_4 with point 4 moving equals the volume coefficient in the chamber
    auto w = parse_weights("11/20,11/20,3/5,3/10");
    auto deg = cm_degree_fano(1, std::vector<Rational>(w.values().begin(), w.values().end()), 4, Polarization::Anticanonical);
    EXPECT_EQ(deg, Rational(6, 5));
    EXPECT_EQ(localization_volume(w).coefficient, deg);
    auto first = cm_degree_fano(1, ws("3/10,11/20,11/20,3/5"), 1, Polarization::Anticanonical);
    EXPECT_EQ(first, Rational(6, 5));
}

TEST(CmReport, LogCanonical)
{
    auto r = cm_report(1, ws("9/10,9/10,9/10,1/20"), Polarization::LogCanonical);
    EXPECT_EQ(r.indices, std::vector<int>{4});
    EXPECT_EQ(r.degrees, std::vector<Rational>{Rational(3, 40)});
    EXPECT_FALSE(r.fiber_volume.has_value());
    EXPECT_EQ(r.geometry, GeometryClass::LogGeneralType);
    EXPECT_EQ(error_of([] { cm_report(2, ws("1/2,1/2,1/2,1/2"), Polarization::LogCanonical); }), Errc::DimensionMismatch);
}

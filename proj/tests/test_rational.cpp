#include "mdvol/rational.hpp"

#include <gtest/gtest.h>

using mdvol::parse_rational;
using mdvol::Rational;

TEST(ParseRational, Fractions)
{
    EXPECT_EQ(*parse_rational("1/2"), Rational(1, 2));
    EXPECT_EQ(*parse_rational(" 6 / 8 "), Rational(3, 4));
    EXPECT_EQ(*parse_rational("-3/9"), Rational(-1, 3));
    EXPECT_EQ(*parse_rational("7"), Rational(7));
}

TEST(ParseRational, DecimalsAreExact)
{
    EXPECT_EQ(*parse_rational("0.25"), Rational(1, 4));
    EXPECT_EQ(*parse_rational(".1"), Rational(1, 10));
    EXPECT_EQ(*parse_rational("1."), Rational(1));
    EXPECT_EQ(*parse_rational("-0.125"), Rational(-1, 8));
    EXPECT_EQ(*parse_rational("0.3333"), Rational(3333, 10000));
}

TEST(ParseRational, RejectsGarbage)
{
    for (const char* s : {"", " ", "abc", "1/0", "1/", "/2", "1/2/3", "0.5e3", ".", "1.2.3", "1/-2", "nan"})
        EXPECT_FALSE(parse_rational(s).has_value()) << s;
}

TEST(FractionString, AlwaysHasDenominator)
{
    EXPECT_EQ(mdvol::to_fraction_string(Rational(2)), "2/1");
    EXPECT_EQ(mdvol::to_fraction_string(Rational(-8, 5)), "-8/5");
    EXPECT_EQ(mdvol::to_fraction_string(Rational(0)), "0/1");
}

TEST(RationalPow, MatchesRepeatedProduct)
{
    Rational base(-2, 3);
    Rational expected = 1;
    for (unsigned e = 0; e < 8; ++e) {
        EXPECT_EQ(mdvol::pow(base, e), expected);
        expected *= base;
    }
}

#include "hkcone/arith.hpp"

#include <gtest/gtest.h>

using namespace hkcone;

TEST(Arith, ParseRationalStrict) {
  EXPECT_EQ(parse_rational("-5/4"), Rational(-5, 4));
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_EQ(parse_rational("-0"), Rational(0));
  EXPECT_THROW(parse_rational("2/4"), io_error);
  EXPECT_THROW(parse_rational("3/1"), io_error);
  EXPECT_THROW(parse_rational("1/-2"), io_error);
  EXPECT_THROW(parse_rational("1/0"), io_error);
  EXPECT_THROW(parse_rational(""), io_error);
  EXPECT_THROW(parse_rational("1.5"), io_error);
}

TEST(Arith, ParseRationalLenient) {
  EXPECT_EQ(parse_rational_lenient("2/4"), Rational(1, 2));
  EXPECT_EQ(parse_rational_lenient(" -6/-4 "), Rational(3, 2));
  EXPECT_THROW(parse_rational_lenient("1/0"), io_error);
}

TEST(Arith, ToStringRoundTrips) {
  for (const char* s : {"0", "-1", "5/7", "-36", "123456789012345678901234567891/7"})
    EXPECT_EQ(to_string(parse_rational(s)), s);
}

TEST(Arith, IntegerHelpers) {
  EXPECT_EQ(gcd(Integer(-12), Integer(18)), 6);
  EXPECT_EQ(lcm(Integer(4), Integer(6)), 12);
  IntVector v{Integer(4), Integer(-8), Integer(0)};
  EXPECT_EQ(content(v), 4);
  IntVector zeros{Integer(0), Integer(0)};
  EXPECT_EQ(content(zeros), 0);
  EXPECT_EQ(floor(Rational(-5, 4)), -2);
  EXPECT_EQ(floor(Rational(5, 4)), 1);
  EXPECT_EQ(floor_sqrt(Rational(99, 4)), 4);
  Integer r;
  EXPECT_TRUE(exact_sqrt(Integer(144), r));
  EXPECT_EQ(r, 12);
  EXPECT_FALSE(exact_sqrt(Integer(143), r));
}

TEST(Arith, SplitList) {
  auto items = split_list("1/3, 0,-2");
  ASSERT_EQ(items.size(), 3u);
  EXPECT_EQ(items[0], "1/3");
  EXPECT_EQ(items[1], "0");
  EXPECT_EQ(items[2], "-2");
}

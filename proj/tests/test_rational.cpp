#include "exclust/rational.hpp"

#include "doctest.h"

using namespace exclust;

TEST_CASE("parse and serialize round-trip in lowest terms") {
  CHECK(rational_to_string(parse_rational("6/4")) == "3/2");
  CHECK(rational_to_string(parse_rational("-10/5")) == "-2");
  CHECK(rational_to_string(parse_rational("0/7")) == "0");
  CHECK(parse_rational("7") == Rational(7));
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
}

TEST_CASE("pow, floor, ceil") {
  CHECK(rational_pow(parse_rational("5/2"), 3) == parse_rational("125/8"));
  CHECK(rational_pow(parse_rational("-2"), 2) == Rational(4));
  CHECK(rational_floor(parse_rational("7/2")) == 3);
  CHECK(rational_floor(parse_rational("-7/2")) == -4);
  CHECK(rational_ceil(parse_rational("7/2")) == 4);
  CHECK(rational_ceil(Rational(3)) == 3);
}

TEST_CASE("ceil_sqrt on squared values") {
  CHECK(ceil_sqrt(Rational(0)) == 0);
  CHECK(ceil_sqrt(Rational(1)) == 1);
  CHECK(ceil_sqrt(Rational(2)) == 2);   // sqrt(2) = 1.41..
  CHECK(ceil_sqrt(Rational(4)) == 2);
  CHECK(ceil_sqrt(parse_rational("1/4")) == 1);
  CHECK(ceil_sqrt(Rational(10000)) == 100);
  CHECK(ceil_sqrt(Rational(10001)) == 101);
  CHECK_THROWS_AS(ceil_sqrt(Rational(-1)), std::domain_error);
}

#include "exclust/radical.hpp"

#include <random>

#include "doctest.h"

using namespace exclust;

namespace {

RadicalSum sqrtn(long n, long coeff = 1) {
  return RadicalSum::sqrt_of(Rational(n), Rational(coeff));
}

}  // namespace

TEST_CASE("canonicalization identities") {
  CHECK(compare(sqrtn(8), sqrtn(2, 2)) == Ordering::Equal);
  CHECK(sqrtn(8) == sqrtn(2, 2));
  CHECK(sqrtn(4) == RadicalSum(Rational(2)));
  CHECK(RadicalSum::sqrt_of(parse_rational("9/4")) ==
        RadicalSum(parse_rational("3/2")));
  // sqrt(1/2) = sqrt(2)/2
  CHECK(RadicalSum::sqrt_of(parse_rational("1/2")) ==
        RadicalSum::sqrt_of(Rational(2), parse_rational("1/2")));
  CHECK((sqrtn(2) + sqrtn(8) - sqrtn(2, 3)).is_zero());
}

TEST_CASE("basic orderings") {
  CHECK(compare(sqrtn(2), RadicalSum(1)) == Ordering::Greater);
  // sqrt(2)+sqrt(3) = 3.14626... < sqrt(10) = 3.16227...
  // (both sides evaluated to 50 digits with directed rounding)
  CHECK(compare(sqrtn(2) + sqrtn(3), sqrtn(10)) == Ordering::Less);
  CHECK(compare(sqrtn(3) - sqrtn(2), RadicalSum(0)) == Ordering::Greater);
  CHECK(RadicalSum(0).is_zero());
}

TEST_CASE("rational fast paths") {
  RadicalSum v = RadicalSum(parse_rational("7/3"));
  CHECK(v.is_rational());
  CHECK(v.rational_value() == parse_rational("7/3"));
  CHECK_FALSE(sqrtn(5).is_rational());
  CHECK_THROWS_AS(sqrtn(5).rational_value(), std::domain_error);
}

TEST_CASE("two-term cross-squaring handles uncertified radicands") {
  auto saved = radical_options();
  radical_options().factor_bound = 1;
  RadicalSum a = sqrtn(8);       // stays atomic at this bound
  RadicalSum b = sqrtn(2, 2);    // 2 is prime, certified
  CHECK(compare(a, b) == Ordering::Equal);
  CHECK(compare(sqrtn(12), sqrtn(3, 2)) == Ordering::Equal);
  radical_options() = saved;
}

TEST_CASE("indeterminate zero with three atomic terms is an error") {
  auto saved = radical_options();
  radical_options().factor_bound = 1;
  radical_options().max_precision_bits = 512;
  // sqrt(8) + sqrt(18) - 5 sqrt(2) == 0, but 8 and 18 stay atomic.
  RadicalSum z = sqrtn(8) + sqrtn(18) - sqrtn(2, 5);
  CHECK_THROWS_AS(z.sign(), IndeterminateComparison);
  radical_options() = saved;
}

TEST_CASE("total order properties on random sums") {
  std::mt19937_64 rng(42);
  auto random_sum = [&] {
    RadicalSum s;
    int terms = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < terms; ++i) {
      long coeff = static_cast<long>(rng() % 19) - 9;
      long rad = 1 + static_cast<long>(rng() % 50);
      s += RadicalSum::sqrt_of(Rational(rad), Rational(coeff));
    }
    return s;
  };
  for (int trial = 0; trial < 300; ++trial) {
    RadicalSum a = random_sum(), b = random_sum(), c = random_sum();
    Ordering ab = compare(a, b);
    Ordering ba = compare(b, a);
    // antisymmetry
    if (ab == Ordering::Less) CHECK(ba == Ordering::Greater);
    if (ab == Ordering::Greater) CHECK(ba == Ordering::Less);
    if (ab == Ordering::Equal) {
      CHECK(ba == Ordering::Equal);
      CHECK(a == b);  // Equal implies identical canonical form
    }
    // transitivity
    if (ab != Ordering::Greater && compare(b, c) != Ordering::Greater)
      CHECK(compare(a, c) != Ordering::Greater);
    // consistency with floating evaluation when clearly separated
    double da = a.to_double(), db = b.to_double();
    if (std::abs(da - db) > 1e-6)
      CHECK((ab == Ordering::Less) == (da < db));
  }
}

TEST_CASE("enclosures bracket the value and shrink") {
  RadicalSum v = sqrtn(2) + sqrtn(3) - sqrtn(5);
  Rational lo64, hi64, lo256, hi256;
  v.enclose(lo64, hi64, 64);
  v.enclose(lo256, hi256, 256);
  CHECK(lo64 <= hi64);
  CHECK(lo64 <= lo256);
  CHECK(hi256 <= hi64);
  CHECK(hi256 - lo256 < parse_rational("1/1000000000000"));
  double mid = (lo64.get_d() + hi64.get_d()) / 2;
  CHECK(mid == doctest::Approx(v.to_double()).epsilon(1e-12));
}

TEST_CASE("rational_between separates radical endpoints") {
  RadicalSum lo = sqrtn(2);
  RadicalSum hi = sqrtn(2) + RadicalSum(parse_rational("1/1000000"));
  Rational nu = rational_between(lo, hi);
  CHECK(compare(lo, RadicalSum(nu)) == Ordering::Less);
  CHECK(compare(RadicalSum(nu), hi) == Ordering::Less);
  CHECK_THROWS_AS(rational_between(hi, lo), std::invalid_argument);

  Rational above = rational_above(lo);
  Rational below = rational_below(lo);
  CHECK(compare(RadicalSum(above), lo) == Ordering::Greater);
  CHECK(compare(RadicalSum(below), lo) == Ordering::Less);
}

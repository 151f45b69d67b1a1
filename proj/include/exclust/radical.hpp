#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "exclust/rational.hpp"

namespace exclust {

enum class Ordering { Less, Equal, Greater };

// Raised when interval refinement hits the precision cap before the sign
// of a difference is determined and the difference is not symbolically zero.
struct IndeterminateComparison : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RadicalOptions {
  // Trial-division bound for squarefree extraction of radicands.
  unsigned long factor_bound = 100000;
  // Interval refinement starts here and doubles up to the cap.
  unsigned start_precision_bits = 64;
  unsigned max_precision_bits = 4096;
};

RadicalOptions& radical_options();

// A finite formal sum  sum_i coeff_i * sqrt(radicand_i)  with rational
// coefficients and positive integer radicands.
//
// Canonical form: radicands carry no square factor below the trial-division
// bound, radicand 1 terms are merged into a single rational term, no two
// terms share a radicand, and no coefficient is zero. A term whose radicand
// could not be certified squarefree (a leftover cofactor above the bound)
// is marked atomic; Equal is only ever reported when the difference
// canonicalizes to the empty sum.
class RadicalSum {
 public:
  struct Term {
    Rational coeff;
    Integer radicand;   // >= 1, canonical
    bool certified;     // radicand certified squarefree
  };

  RadicalSum() = default;
  RadicalSum(const Rational& value);  // NOLINT: rational term, radicand 1
  RadicalSum(long value) : RadicalSum(Rational(value)) {}

  // coeff * sqrt(radicand) for rational radicand >= 0.
  static RadicalSum sqrt_of(const Rational& radicand,
                            const Rational& coeff = Rational(1));

  // Canonical sum of many values; one sort instead of per-term insertion,
  // for accumulations over thousands of clients.
  static RadicalSum sum(const std::vector<RadicalSum>& parts);

  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const;
  // The rational value; throws unless is_rational().
  Rational rational_value() const;

  const std::vector<Term>& terms() const { return terms_; }

  RadicalSum& operator+=(const RadicalSum& o);
  RadicalSum& operator-=(const RadicalSum& o);
  RadicalSum& operator*=(const Rational& c);
  friend RadicalSum operator+(RadicalSum a, const RadicalSum& b) { return a += b; }
  friend RadicalSum operator-(RadicalSum a, const RadicalSum& b) { return a -= b; }
  friend RadicalSum operator*(RadicalSum a, const Rational& c) { return a *= c; }
  friend RadicalSum operator*(const Rational& c, RadicalSum a) { return a *= c; }
  RadicalSum operator-() const;

  bool operator==(const RadicalSum& o) const;

  // Exact sign of the represented real value: -1, 0, +1.
  int sign() const;

  double to_double() const;

  // Enclosure [lo, hi] with outward rounding at the given precision.
  void enclose(Rational& lo, Rational& hi, unsigned precision_bits) const;

 private:
  void insert_term(const Rational& coeff, const Integer& radicand,
                   bool certified);
  std::vector<Term> terms_;  // sorted by radicand, radicand 1 first
};

// Exact ordering of the represented real values.
Ordering compare(const RadicalSum& a, const RadicalSum& b);

inline bool radical_less(const RadicalSum& a, const RadicalSum& b) {
  return compare(a, b) == Ordering::Less;
}
inline bool radical_leq(const RadicalSum& a, const RadicalSum& b) {
  return compare(a, b) != Ordering::Greater;
}

// A rational strictly between lo and hi; requires lo < hi.
Rational rational_between(const RadicalSum& lo, const RadicalSum& hi);

// A rational strictly above v (resp. strictly below, requires v > 0 not
// needed). Tight up to the refinement step.
Rational rational_above(const RadicalSum& v);
Rational rational_below(const RadicalSum& v);

}  // namespace exclust

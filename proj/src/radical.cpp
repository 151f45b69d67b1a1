#include "exclust/radical.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>

namespace exclust {

RadicalOptions& radical_options() {
  static RadicalOptions opts;
  return opts;
}

RadicalSum::RadicalSum(const Rational& value) {
  if (value != 0) insert_term(value, Integer(1), true);
}

namespace {

// Primes up to the trial-division bound, rebuilt when the bound changes.
const std::vector<unsigned long>& primes_up_to(unsigned long bound) {
  static unsigned long cached = static_cast<unsigned long>(-1);
  static std::vector<unsigned long> primes;
  if (bound != cached) {
    primes.clear();
    std::vector<bool> composite(bound + 1, false);
    for (unsigned long p = 2; p <= bound; ++p) {
      if (composite[p]) continue;
      primes.push_back(p);
      for (unsigned long q = p * p; q <= bound; q += p) composite[q] = true;
    }
    cached = bound;
  }
  return primes;
}

// Splits n = square * rest with rest free of square factors below the
// trial-division bound. Returns false when rest could not be certified
// squarefree (some cofactor with all prime factors above the bound remains).
bool extract_square_part(Integer n, Integer& square_root, Integer& rest,
                         unsigned long bound) {
  square_root = 1;
  rest = 1;
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    mpz_sqrt(square_root.get_mpz_t(), n.get_mpz_t());
    return true;
  }
  const std::vector<unsigned long>& primes = primes_up_to(bound);
  bool tested_all = false;  // every prime <= sqrt(remaining) was tried
  if (mpz_fits_ulong_p(n.get_mpz_t())) {
    // Native fast path; factors fit comfortably in 64 bits.
    unsigned long v = mpz_get_ui(n.get_mpz_t());
    unsigned long sq = 1, rs = 1;
    for (unsigned long p : primes) {
      if (p * p > v) {
        tested_all = true;
        break;
      }
      if (v % p == 0) {
        unsigned exp = 0;
        while (v % p == 0) {
          v /= p;
          ++exp;
        }
        for (unsigned i = 0; i + 1 < exp; i += 2) sq *= p;
        if (exp % 2 == 1) rs *= p;
      }
    }
    square_root = sq;
    rest = rs;
    n = v;
  } else {
    for (unsigned long p : primes) {
      if (Integer(p) * p > n) {
        tested_all = true;
        break;
      }
      if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
        unsigned exp = 0;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
          mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
          ++exp;
        }
        for (unsigned i = 0; i + 1 < exp; i += 2) square_root *= p;
        if (exp % 2 == 1) rest *= p;
      }
    }
  }
  if (n == 1) return true;
  if (!tested_all && Integer(bound + 1) * (bound + 1) > n) tested_all = true;
  if (tested_all) {
    // n is prime.
    rest *= n;
    return true;
  }
  // Cofactor with all prime factors above the bound. A perfect square
  // would have been caught up front only for the full input, so re-check.
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    Integer s;
    mpz_sqrt(s.get_mpz_t(), n.get_mpz_t());
    square_root *= s;
    return true;
  }
  rest *= n;
  return false;
}

}  // namespace

RadicalSum RadicalSum::sqrt_of(const Rational& radicand, const Rational& coeff) {
  if (radicand < 0) throw std::domain_error("sqrt of negative radicand");
  RadicalSum r;
  if (radicand == 0 || coeff == 0) return r;
  Integer num(radicand.get_num());
  Integer den(radicand.get_den());
  Integer n;
  Rational c = coeff;
  if (mpz_perfect_square_p(den.get_mpz_t())) {
    // sqrt(a/s^2) = sqrt(a)/s
    Integer s;
    mpz_sqrt(s.get_mpz_t(), den.get_mpz_t());
    n = num;
    c /= Rational(s);
  } else {
    // sqrt(a/b) = sqrt(a*b)/b
    n = num * den;
    c /= Rational(den);
  }
  Integer square_root, rest;
  bool certified =
      extract_square_part(n, square_root, rest, radical_options().factor_bound);
  c *= Rational(square_root);
  r.insert_term(c, rest, certified || rest == 1);
  return r;
}

RadicalSum RadicalSum::sum(const std::vector<RadicalSum>& parts) {
  std::vector<Term> all;
  size_t total = 0;
  for (const RadicalSum& p : parts) total += p.terms_.size();
  all.reserve(total);
  for (const RadicalSum& p : parts)
    all.insert(all.end(), p.terms_.begin(), p.terms_.end());
  std::sort(all.begin(), all.end(),
            [](const Term& a, const Term& b) { return a.radicand < b.radicand; });
  RadicalSum r;
  r.terms_.reserve(all.size());
  for (Term& t : all) {
    if (!r.terms_.empty() && r.terms_.back().radicand == t.radicand) {
      r.terms_.back().coeff += t.coeff;
      r.terms_.back().certified = r.terms_.back().certified && t.certified;
    } else {
      r.terms_.push_back(std::move(t));
    }
  }
  std::erase_if(r.terms_, [](const Term& t) { return t.coeff == 0; });
  return r;
}

bool RadicalSum::is_rational() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].radicand == 1);
}

Rational RadicalSum::rational_value() const {
  if (terms_.empty()) return Rational(0);
  if (terms_.size() == 1 && terms_[0].radicand == 1) return terms_[0].coeff;
  throw std::domain_error("RadicalSum is not rational");
}

void RadicalSum::insert_term(const Rational& coeff, const Integer& radicand,
                             bool certified) {
  if (coeff == 0) return;
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), radicand,
      [](const Term& t, const Integer& r) { return t.radicand < r; });
  if (it != terms_.end() && it->radicand == radicand) {
    it->coeff += coeff;
    it->certified = it->certified && certified;
    if (it->coeff == 0) terms_.erase(it);
  } else {
    terms_.insert(it, Term{coeff, radicand, certified});
  }
}

RadicalSum& RadicalSum::operator+=(const RadicalSum& o) {
  for (const Term& t : o.terms_) insert_term(t.coeff, t.radicand, t.certified);
  return *this;
}

RadicalSum& RadicalSum::operator-=(const RadicalSum& o) {
  for (const Term& t : o.terms_) insert_term(-t.coeff, t.radicand, t.certified);
  return *this;
}

RadicalSum& RadicalSum::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (Term& t : terms_) t.coeff *= c;
  return *this;
}

RadicalSum RadicalSum::operator-() const {
  RadicalSum r(*this);
  for (Term& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

bool RadicalSum::operator==(const RadicalSum& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].radicand != o.terms_[i].radicand ||
        terms_[i].coeff != o.terms_[i].coeff)
      return false;
  }
  return true;
}

double RadicalSum::to_double() const {
  double s = 0;
  for (const Term& t : terms_)
    s += t.coeff.get_d() * std::sqrt(t.radicand.get_d());
  return s;
}

void RadicalSum::enclose(Rational& lo, Rational& hi,
                         unsigned precision_bits) const {
  mpfr_t acc_lo, acc_hi, root, term;
  mpfr_inits2(precision_bits, acc_lo, acc_hi, root, term, (mpfr_ptr) nullptr);
  mpfr_set_zero(acc_lo, 1);
  mpfr_set_zero(acc_hi, 1);
  mpfr_t rad;
  mpfr_init2(rad, precision_bits);
  for (const Term& t : terms_) {
    const bool pos = t.coeff > 0;
    // lower bound of coeff * sqrt(radicand)
    mpfr_set_z(rad, t.radicand.get_mpz_t(), pos ? MPFR_RNDD : MPFR_RNDU);
    mpfr_sqrt(root, rad, pos ? MPFR_RNDD : MPFR_RNDU);
    mpfr_mul_q(term, root, t.coeff.get_mpq_t(), MPFR_RNDD);
    mpfr_add(acc_lo, acc_lo, term, MPFR_RNDD);
    // upper bound
    mpfr_set_z(rad, t.radicand.get_mpz_t(), pos ? MPFR_RNDU : MPFR_RNDD);
    mpfr_sqrt(root, rad, pos ? MPFR_RNDU : MPFR_RNDD);
    mpfr_mul_q(term, root, t.coeff.get_mpq_t(), MPFR_RNDU);
    mpfr_add(acc_hi, acc_hi, term, MPFR_RNDU);
  }
  mpfr_get_q(lo.get_mpq_t(), acc_lo);
  mpfr_get_q(hi.get_mpq_t(), acc_hi);
  mpfr_clears(acc_lo, acc_hi, root, term, rad, (mpfr_ptr) nullptr);
}

int RadicalSum::sign() const {
  if (terms_.empty()) return 0;
  bool any_pos = false, any_neg = false;
  for (const Term& t : terms_) (t.coeff > 0 ? any_pos : any_neg) = true;
  if (!any_neg) return 1;
  if (!any_pos) return -1;
  if (terms_.size() == 2) {
    // c1*sqrt(q1) + c2*sqrt(q2) with opposite signs: cross-square.
    const Term& a = terms_[0];
    const Term& b = terms_[1];
    Rational a2 = a.coeff * a.coeff * Rational(a.radicand);
    Rational b2 = b.coeff * b.coeff * Rational(b.radicand);
    int mag = (a2 > b2) ? 1 : (a2 < b2 ? -1 : 0);
    if (mag == 0) return 0;
    return (mag > 0) ? ((a.coeff > 0) ? 1 : -1) : ((b.coeff > 0) ? 1 : -1);
  }
  const RadicalOptions& opts = radical_options();
  Rational lo, hi;
  for (unsigned prec = opts.start_precision_bits;
       prec <= opts.max_precision_bits; prec *= 2) {
    enclose(lo, hi, prec);
    if (lo > 0) return 1;
    if (hi < 0) return -1;
  }
  throw IndeterminateComparison(
      "radical sign undetermined at precision cap");
}

Ordering compare(const RadicalSum& a, const RadicalSum& b) {
  if (a == b) return Ordering::Equal;
  switch ((a - b).sign()) {
    case -1:
      return Ordering::Less;
    case 1:
      return Ordering::Greater;
    default:
      return Ordering::Equal;
  }
}

Rational rational_between(const RadicalSum& lo, const RadicalSum& hi) {
  if (compare(lo, hi) != Ordering::Less)
    throw std::invalid_argument("rational_between requires lo < hi");
  if (lo.is_rational() && hi.is_rational())
    return (lo.rational_value() + hi.rational_value()) / 2;
  const RadicalOptions& opts = radical_options();
  Rational llo, lhi, hlo, hhi;
  for (unsigned prec = opts.start_precision_bits;
       prec <= opts.max_precision_bits; prec *= 2) {
    lo.enclose(llo, lhi, prec);
    hi.enclose(hlo, hhi, prec);
    if (lhi < hlo) return (lhi + hlo) / 2;
  }
  throw IndeterminateComparison(
      "could not separate values at precision cap");
}

Rational rational_above(const RadicalSum& v) {
  Rational lo, hi;
  v.enclose(lo, hi, 128);
  Rational step = hi - lo;
  Rational tiny(1);
  tiny >>= 128;  // 2^-128
  return hi + step + tiny;
}

Rational rational_below(const RadicalSum& v) {
  Rational lo, hi;
  v.enclose(lo, hi, 128);
  Rational step = hi - lo;
  Rational tiny(1);
  tiny >>= 128;
  return lo - step - tiny;
}

}  // namespace exclust

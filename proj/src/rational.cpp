#include "exclust/rational.hpp"

namespace exclust {

Rational parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  mpq_class q;
  if (q.set_str(s, 10) != 0) {
    throw std::invalid_argument("malformed rational literal: " + s);
  }
  if (q.get_den() == 0) {
    throw std::invalid_argument("zero denominator in rational literal: " + s);
  }
  q.canonicalize();
  return q;
}

std::string rational_to_string(const Rational& q) {
  return q.get_str();
}

Rational rational_pow(const Rational& q, unsigned long e) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), q.get_num_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), q.get_den_mpz_t(), e);
  return r;
}

Integer rational_floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer rational_ceil(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil_sqrt(const Rational& squared) {
  if (squared < 0) throw std::domain_error("ceil_sqrt of negative value");
  if (squared == 0) return 0;
  // floor(sqrt(num/den)) as a first guess, then adjust: t = ceil(sqrt(x))
  // is the unique integer with (t-1)^2 < x <= t^2.
  Integer num = Integer(squared.get_num());
  Integer den = Integer(squared.get_den());
  Integer t;
  mpz_sqrt(t.get_mpz_t(), mpz_class(num / den).get_mpz_t());
  while (t * t * den < num) ++t;
  while (t > 0 && (t - 1) * (t - 1) * den >= num) --t;
  return t;
}

}  // namespace exclust

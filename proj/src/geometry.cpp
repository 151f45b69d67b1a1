#include "exclust/geometry.hpp"

#include <utility>

namespace exclust {

Point::Point(std::vector<Rational> coords) : coords_(std::move(coords)) {
  int d = dimension();
  if (d < 2 || d > 4)
    throw std::invalid_argument("point dimension must be 2, 3 or 4");
}

Point::Point(Rational x, Rational y)
    : coords_{std::move(x), std::move(y)} {}
Point::Point(Rational x, Rational y, Rational z)
    : coords_{std::move(x), std::move(y), std::move(z)} {}
Point::Point(Rational x, Rational y, Rational z, Rational w)
    : coords_{std::move(x), std::move(y), std::move(z), std::move(w)} {}

Rational squared_distance(const Point& a, const Point& b) {
  if (a.dimension() != b.dimension())
    throw std::invalid_argument("dimension mismatch");
  Rational s(0);
  for (int i = 0; i < a.dimension(); ++i) {
    Rational d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

RadicalSum distance(const Point& a, const Point& b) {
  return RadicalSum::sqrt_of(squared_distance(a, b));
}

RadicalSum distance_pow(const Point& a, const Point& b, int p) {
  if (p < 1) throw std::invalid_argument("power must be >= 1");
  Rational d2 = squared_distance(a, b);
  if (p % 2 == 0) return RadicalSum(rational_pow(d2, p / 2));
  return RadicalSum::sqrt_of(d2, rational_pow(d2, (p - 1) / 2));
}

Point moment_point(const Rational& t, int d) {
  if (d < 2 || d > 4) throw std::invalid_argument("unsupported dimension");
  if (t <= 0) throw std::domain_error("moment curve parameter must be > 0");
  std::vector<Rational> c;
  c.reserve(d);
  Rational acc(1);
  for (int i = 0; i < d; ++i) {
    acc *= t;
    c.push_back(acc);
  }
  return Point(std::move(c));
}

namespace {

// Solves A x = b over the rationals by clearing denominators and running
// fraction-free (Bareiss) elimination. Throws on a singular system.
std::vector<Rational> solve_linear(std::vector<std::vector<Rational>> a,
                                   std::vector<Rational> b) {
  const int n = static_cast<int>(b.size());
  // Integer augmented matrix.
  std::vector<std::vector<Integer>> m(n, std::vector<Integer>(n + 1));
  for (int i = 0; i < n; ++i) {
    Integer lcm(1);
    for (int j = 0; j < n; ++j)
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), a[i][j].get_den_mpz_t());
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), b[i].get_den_mpz_t());
    for (int j = 0; j < n; ++j) {
      Rational v = a[i][j] * Rational(lcm);
      m[i][j] = Integer(v.get_num());
    }
    Rational v = b[i] * Rational(lcm);
    m[i][n] = Integer(v.get_num());
  }
  Integer prev(1);
  for (int k = 0; k < n; ++k) {
    int pivot = -1;
    for (int i = k; i < n; ++i)
      if (m[i][k] != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) throw std::invalid_argument("singular linear system");
    std::swap(m[k], m[pivot]);
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j <= n; ++j) {
        Integer num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  // Back substitution over rationals.
  std::vector<Rational> x(n);
  for (int i = n - 1; i >= 0; --i) {
    Rational s(m[i][n]);
    for (int j = i + 1; j < n; ++j) s -= Rational(m[i][j]) * x[j];
    x[i] = s / Rational(m[i][i]);
  }
  return x;
}

}  // namespace

Sphere circumsphere(std::span<const Point> points) {
  if (points.empty()) throw std::invalid_argument("no points");
  const int d = points[0].dimension();
  if (static_cast<int>(points.size()) != d + 1)
    throw std::invalid_argument("circumsphere needs d+1 points");
  for (const Point& p : points)
    if (p.dimension() != d) throw std::invalid_argument("dimension mismatch");

  // Perpendicular bisector of p0 and pi: 2(pi - p0) . x = |pi|^2 - |p0|^2.
  auto sqnorm = [&](const Point& p) {
    Rational s(0);
    for (int i = 0; i < d; ++i) s += p[i] * p[i];
    return s;
  };
  Rational n0 = sqnorm(points[0]);
  std::vector<std::vector<Rational>> a(d, std::vector<Rational>(d));
  std::vector<Rational> b(d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) a[i][j] = 2 * (points[i + 1][j] - points[0][j]);
    b[i] = sqnorm(points[i + 1]) - n0;
  }
  std::vector<Rational> x;
  try {
    x = solve_linear(std::move(a), std::move(b));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("affinely dependent circumsphere input");
  }
  Point center{std::vector<Rational>(x.begin(), x.end())};
  return Sphere{center, squared_distance(center, points[0])};
}

SphereSide sphere_side(const Sphere& s, const Point& p) {
  Rational d2 = squared_distance(s.center, p);
  if (d2 < s.squared_radius) return SphereSide::Inside;
  if (d2 == s.squared_radius) return SphereSide::On;
  return SphereSide::Outside;
}

}  // namespace exclust

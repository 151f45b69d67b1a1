#include "exclust/geometry.hpp"

#include <array>
#include <random>
#include <vector>

#include "doctest.h"

using namespace exclust;

namespace {

// Independent check: plain rational Gaussian elimination with full pivoting,
// used to cross-validate the fraction-free path inside circumsphere().
Point circumcenter_reference(const std::vector<Point>& pts) {
  const int d = pts[0].dimension();
  std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d + 1));
  auto sqnorm = [&](const Point& p) {
    Rational s(0);
    for (int i = 0; i < d; ++i) s += p[i] * p[i];
    return s;
  };
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) m[i][j] = 2 * (pts[i + 1][j] - pts[0][j]);
    m[i][d] = sqnorm(pts[i + 1]) - sqnorm(pts[0]);
  }
  for (int k = 0; k < d; ++k) {
    int piv = k;
    while (m[piv][k] == 0) ++piv;
    std::swap(m[k], m[piv]);
    for (int i = 0; i < d; ++i) {
      if (i == k) continue;
      Rational f = m[i][k] / m[k][k];
      for (int j = k; j <= d; ++j) m[i][j] -= f * m[k][j];
    }
  }
  std::vector<Rational> x(d);
  for (int i = 0; i < d; ++i) x[i] = m[i][d] / m[i][i];
  return Point(x);
}

}  // namespace

TEST_CASE("moment_point") {
  Point p = moment_point(Rational(3), 4);
  CHECK(p == Point(Rational(3), Rational(9), Rational(27), Rational(81)));
  CHECK(moment_point(Rational(1), 4) ==
        Point(Rational(1), Rational(1), Rational(1), Rational(1)));
  CHECK(moment_point(parse_rational("5/2"), 3) ==
        Point(parse_rational("5/2"), parse_rational("25/4"),
              parse_rational("125/8")));
  CHECK_THROWS_AS(moment_point(Rational(0), 3), std::domain_error);
  CHECK_THROWS_AS(moment_point(Rational(-2), 3), std::domain_error);
  CHECK_THROWS_AS(moment_point(Rational(1), 5), std::invalid_argument);
}

TEST_CASE("circumsphere on symmetric inputs") {
  std::vector<Point> tri{Point(Rational(0), Rational(0)),
                         Point(Rational(4), Rational(0)),
                         Point(Rational(0), Rational(4))};
  Sphere s = circumsphere(tri);
  CHECK(s.center == Point(Rational(2), Rational(2)));
  CHECK(s.squared_radius == Rational(8));

  std::vector<Point> tet{Point(Rational(1), Rational(0), Rational(0)),
                         Point(Rational(0), Rational(1), Rational(0)),
                         Point(Rational(0), Rational(0), Rational(1)),
                         Point(Rational(1), Rational(1), Rational(1))};
  Sphere t = circumsphere(tet);
  CHECK(t.center == Point(parse_rational("1/2"), parse_rational("1/2"),
                          parse_rational("1/2")));
  CHECK(t.squared_radius == parse_rational("3/4"));
}

TEST_CASE("circumsphere of 3D moment points matches reference solver") {
  std::vector<Point> pts;
  for (long t : {2, 3, 4, 5}) pts.push_back(moment_point(Rational(t), 3));
  Sphere s = circumsphere(pts);
  Point ref = circumcenter_reference(pts);
  CHECK(s.center == ref);
  for (const Point& p : pts)
    CHECK(squared_distance(s.center, p) == s.squared_radius);
}

TEST_CASE("circumsphere rejects degenerate input") {
  std::vector<Point> collinear{Point(Rational(0), Rational(0)),
                               Point(Rational(1), Rational(1)),
                               Point(Rational(2), Rational(2))};
  CHECK_THROWS_AS(circumsphere(collinear), std::invalid_argument);
}

TEST_CASE("sphere_side basics") {
  Sphere unit{Point(Rational(0), Rational(0)), Rational(1)};
  CHECK(sphere_side(unit, Point(Rational(0), Rational(0))) ==
        SphereSide::Inside);
  CHECK(sphere_side(unit, Point(Rational(1), Rational(0))) == SphereSide::On);
  CHECK(sphere_side(unit, Point(Rational(2), Rational(0))) ==
        SphereSide::Outside);
}

TEST_CASE("4D moment circumsphere: midpoint of (t2,t3) is inside") {
  std::vector<Point> pts;
  for (long t : {1, 2, 3, 4, 5}) pts.push_back(moment_point(Rational(t), 4));
  Sphere s = circumsphere(pts);
  for (const Point& p : pts) CHECK(sphere_side(s, p) == SphereSide::On);
  CHECK(sphere_side(s, moment_point(parse_rational("5/2"), 4)) ==
        SphereSide::Inside);
}

TEST_CASE("Descartes sign pattern, random parameters") {
  std::mt19937_64 rng(7);
  auto random_increasing = [&](int count) {
    std::vector<Rational> ts;
    while (static_cast<int>(ts.size()) < count) {
      Rational t(1 + static_cast<long>(rng() % 997),
                 1 + static_cast<long>(rng() % 10));
      t.canonicalize();
      if (std::find(ts.begin(), ts.end(), t) == ts.end()) ts.push_back(t);
    }
    std::sort(ts.begin(), ts.end());
    return ts;
  };
  auto sample_in = [&](const Rational& a, const Rational& b, int j,
                       int total) -> Rational {
    return a + (b - a) * Rational(j) / Rational(total + 1);
  };

  for (int trial = 0; trial < 20; ++trial) {
    // dim 4: outside on (t1,t2), (t3,t4), (t5, 2*t5]; inside on (t2,t3), (t4,t5)
    auto ts = random_increasing(5);
    std::vector<Point> pts;
    for (auto& t : ts) pts.push_back(moment_point(t, 4));
    Sphere s = circumsphere(pts);
    auto side_at = [&](const Rational& t) {
      return sphere_side(s, moment_point(t, 4));
    };
    for (int j = 1; j <= 3; ++j) {
      CHECK(side_at(sample_in(ts[0], ts[1], j, 3)) == SphereSide::Outside);
      CHECK(side_at(sample_in(ts[2], ts[3], j, 3)) == SphereSide::Outside);
      CHECK(side_at(sample_in(ts[4], 2 * ts[4], j, 3)) == SphereSide::Outside);
      CHECK(side_at(sample_in(ts[1], ts[2], j, 3)) == SphereSide::Inside);
      CHECK(side_at(sample_in(ts[3], ts[4], j, 3)) == SphereSide::Inside);
    }

    // dim 3: outside on (0,t1), (t2,t3), (t4, 2*t4]; inside on (t1,t2), (t3,t4)
    auto us = random_increasing(4);
    std::vector<Point> pts3;
    for (auto& t : us) pts3.push_back(moment_point(t, 3));
    Sphere s3 = circumsphere(pts3);
    auto side3_at = [&](const Rational& t) {
      return sphere_side(s3, moment_point(t, 3));
    };
    for (int j = 1; j <= 3; ++j) {
      CHECK(side3_at(sample_in(Rational(0), us[0], j, 3)) ==
            SphereSide::Outside);
      CHECK(side3_at(sample_in(us[1], us[2], j, 3)) == SphereSide::Outside);
      CHECK(side3_at(sample_in(us[3], 2 * us[3], j, 3)) == SphereSide::Outside);
      CHECK(side3_at(sample_in(us[0], us[1], j, 3)) == SphereSide::Inside);
      CHECK(side3_at(sample_in(us[2], us[3], j, 3)) == SphereSide::Inside);
    }
  }
}

TEST_CASE("distance_pow") {
  Point a(Rational(0), Rational(0));
  Point b(Rational(3), Rational(4));
  CHECK(distance_pow(a, b, 2) == RadicalSum(Rational(25)));
  CHECK(distance_pow(a, b, 1) == RadicalSum(Rational(5)));
  CHECK(distance_pow(a, b, 3) == RadicalSum(Rational(125)));
  Point c(Rational(1), Rational(1));
  // dist^3 = 2 * sqrt(2)
  CHECK(distance_pow(a, c, 3) ==
        RadicalSum::sqrt_of(Rational(2), Rational(2)));
}

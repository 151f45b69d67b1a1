#pragma once

#include <span>
#include <vector>

#include "exclust/radical.hpp"
#include "exclust/rational.hpp"

namespace exclust {

// A point with exact rational coordinates in dimension 2, 3 or 4.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<Rational> coords);
  Point(Rational x, Rational y);
  Point(Rational x, Rational y, Rational z);
  Point(Rational x, Rational y, Rational z, Rational w);

  int dimension() const { return static_cast<int>(coords_.size()); }
  const Rational& operator[](int i) const { return coords_[i]; }
  const std::vector<Rational>& coords() const { return coords_; }

  bool operator==(const Point& o) const { return coords_ == o.coords_; }
  bool operator<(const Point& o) const { return coords_ < o.coords_; }

 private:
  std::vector<Rational> coords_;
};

struct Sphere {
  Point center;
  Rational squared_radius;  // > 0
};

enum class SphereSide { Inside, On, Outside };

// Exact squared Euclidean distance; dimensions must match.
Rational squared_distance(const Point& a, const Point& b);

// Euclidean distance as an exact radical.
RadicalSum distance(const Point& a, const Point& b);

// dist(a,b)^p: rational for even p, single-term radical for odd p.
RadicalSum distance_pow(const Point& a, const Point& b, int p);

// (t, t^2, ..., t^d) for t > 0, d in {2,3,4}.
Point moment_point(const Rational& t, int d);

// Circumsphere of d+1 affinely independent points in dimension d, via the
// perpendicular-bisector linear system solved by fraction-free Gaussian
// elimination over the integers. Throws on affinely dependent input.
Sphere circumsphere(std::span<const Point> points);

// Exact classification of p against s by squared-distance comparison.
SphereSide sphere_side(const Sphere& s, const Point& p);

}  // namespace exclust

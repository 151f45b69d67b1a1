#include "exclust/polygon.hpp"

namespace exclust {

int orientation(const Point& a, const Point& b, const Point& c) {
  Rational det = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
  return det > 0 ? 1 : (det < 0 ? -1 : 0);
}

bool on_segment(const Point& a, const Point& b, const Point& q) {
  if (orientation(a, b, q) != 0) return false;
  return std::min(a[0], b[0]) <= q[0] && q[0] <= std::max(a[0], b[0]) &&
         std::min(a[1], b[1]) <= q[1] && q[1] <= std::max(a[1], b[1]);
}

bool segments_intersect(const Point& a, const Point& b, const Point& c,
                        const Point& d) {
  int o1 = orientation(a, b, c);
  int o2 = orientation(a, b, d);
  int o3 = orientation(c, d, a);
  int o4 = orientation(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

bool polyline_is_simple(std::span<const Point> v) {
  const int n = static_cast<int>(v.size());
  if (n < 3) throw std::invalid_argument("polygon needs at least 3 vertices");
  for (int i = 0; i < n; ++i)
    if (v[i] == v[(i + 1) % n])
      throw std::invalid_argument("consecutive vertices must be distinct");
  for (int i = 0; i < n; ++i) {
    const Point& a = v[i];
    const Point& b = v[(i + 1) % n];
    for (int j = i + 1; j < n; ++j) {
      const Point& c = v[j];
      const Point& d = v[(j + 1) % n];
      bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (adjacent) {
        // Adjacent edges share exactly one endpoint; any other contact is a
        // self-intersection (includes a doubled-back vertex).
        const Point& shared = (j == i + 1) ? b : a;
        const Point& afar = (j == i + 1) ? a : b;
        const Point& cfar = (j == i + 1) ? d : c;
        if (on_segment(c, d, afar) || on_segment(a, b, cfar)) return false;
        if (afar == cfar) return false;
        (void)shared;
      } else {
        if (segments_intersect(a, b, c, d)) return false;
      }
    }
  }
  return true;
}

RegionSide point_vs_polygon_unchecked(std::span<const Point> v,
                                      const Point& p) {
  const int n = static_cast<int>(v.size());
  for (int i = 0; i < n; ++i)
    if (on_segment(v[i], v[(i + 1) % n], p)) return RegionSide::On;
  // Crossing number of the horizontal ray to +infinity, half-open in y so
  // vertices are never hit ambiguously.
  int crossings = 0;
  for (int i = 0; i < n; ++i) {
    const Point& a = v[i];
    const Point& b = v[(i + 1) % n];
    bool a_below = a[1] <= p[1];
    bool b_below = b[1] <= p[1];
    if (a_below == b_below) continue;
    // Edge straddles the horizontal line through p; crossing is to the right
    // of p iff the triangle (a, b, p) has the matching orientation.
    int o = orientation(a, b, p);
    if (a_below ? (o > 0) : (o < 0)) ++crossings;
  }
  return (crossings % 2 == 1) ? RegionSide::Inside : RegionSide::Outside;
}

RegionSide point_vs_polygon(std::span<const Point> v, const Point& p) {
  if (!polyline_is_simple(v))
    throw std::invalid_argument("polygon is not simple");
  return point_vs_polygon_unchecked(v, p);
}

}  // namespace exclust

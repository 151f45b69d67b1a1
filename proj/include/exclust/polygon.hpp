#pragma once

#include <span>

#include "exclust/geometry.hpp"

namespace exclust {

enum class RegionSide { Inside, On, Outside };

// Sign of the cross product (b-a) x (c-a): +1 left turn, 0 collinear,
// -1 right turn. 2D only.
int orientation(const Point& a, const Point& b, const Point& c);

// True iff closed segments [a,b] and [c,d] share at least one point.
bool segments_intersect(const Point& a, const Point& b, const Point& c,
                        const Point& d);

// True iff q lies on the closed segment [a,b].
bool on_segment(const Point& a, const Point& b, const Point& q);

// True iff the closed polygon over the given cyclic vertex list has no
// self-intersections. Requires >= 3 vertices with consecutive vertices
// distinct (throws otherwise). Adjacent edges may meet only at the shared
// vertex.
bool polyline_is_simple(std::span<const Point> vertices);

// Exact Jordan classification of p against a simple closed polygon, by ray
// casting with exact predicates. Throws if the polygon is not simple.
RegionSide point_vs_polygon(std::span<const Point> polygon, const Point& p);

// Same classification without re-validating simplicity; for callers that
// already screened the polygon.
RegionSide point_vs_polygon_unchecked(std::span<const Point> polygon,
                                      const Point& p);

}  // namespace exclust

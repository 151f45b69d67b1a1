#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "exclust/instance.hpp"

namespace exclust {

struct SolveReport {
  Solution solution;
  CostValue cost;
  std::uint64_t nodes_explored = 0;    // candidate subsets / recursion nodes
  std::uint64_t curves_enumerated = 0; // separating curves tried (planar only)
  int max_curve_length = 0;            // longest curve used (planar only)
};

struct BruteOptions {
  // Screen subsets with a double-precision cost estimate before exact
  // evaluation. Every kept decision is still verified exactly; the filter
  // only skips subsets whose estimate exceeds the incumbent by a safety
  // margin of several orders of magnitude above double rounding error.
  bool double_filter = false;
  // Stop as soon as a solution of exact cost <= stop_below is found.
  std::optional<RadicalSum> stop_below;
};

// Exhaustive search over candidate subsets of size <= k, minimum cost under
// exact comparison, ties broken by lexicographically smallest sorted index
// vector. forced_open centers are always available and not counted in k.
SolveReport brute_force_solve(const ClusteringInstance& inst, int k,
                              const std::set<int>& forced_open = {},
                              const BruteOptions& opts = {});
SolveReport brute_force_solve(const MetricInstance& inst, int k);

struct PlanarOptions {
  int base_case_k = 2;  // brute force at and below this k
};

// The 2D separating-curve recursion: brute force below the base threshold,
// otherwise enumerate valid separating curves of length <= floor(sqrt(4.5 k)),
// split the instance at each curve and recurse over the admissible budget
// splits, keeping the cheapest combined solution. Cost is re-evaluated on
// the full client set for every merged candidate solution, so the reported
// cost always equals solution_cost of the reported solution.
SolveReport exact_planar_solve(const ClusteringInstance& inst, int k,
                               const std::set<int>& forced_open = {},
                               const PlanarOptions& opts = {});

// Circumcenters of all non-collinear candidate triples, deduplicated.
std::vector<Point> equidistant_points(const std::vector<Point>& candidates);

// Closed alternating curve c1,p1,...,cr,pr over candidate indices and
// equidistant-point indices.
struct SeparatingCurve {
  std::vector<int> candidate_indices;
  std::vector<int> equidistant_indices;
  // Vertex list c1,p1,c2,p2,... as points.
  std::vector<Point> vertices(const std::vector<Point>& candidates,
                              const std::vector<Point>& eq_points) const;
};

// Yields every valid (simple) separating curve with at most max_len
// candidate vertices, exactly once up to cyclic rotation and reflection.
// Returns the number of curves yielded.
std::uint64_t enumerate_separating_curves(
    const std::vector<Point>& candidates, const std::vector<Point>& eq_points,
    int max_len, const std::function<void(const SeparatingCurve&)>& yield);

// Detects four exactly cocircular candidates and, if present, applies a
// deterministic pseudorandom rational perturbation small enough to be
// cost-negligible, re-checking until generic or the retry budget runs out.
std::pair<ClusteringInstance, bool> perturb_if_degenerate(
    const ClusteringInstance& inst, std::uint64_t seed = 0,
    int max_retries = 32);

// True iff some four of the given 2D points lie on a common circle.
bool has_cocircular_quadruple(const std::vector<Point>& points);

}  // namespace exclust

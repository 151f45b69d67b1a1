#pragma once

#include "exclust/instance.hpp"

namespace exclust {

// Undirected simple graph given by an edge list.
struct Graph {
  int n = 0;                              // vertex count, vertices 0..n-1
  std::vector<std::pair<int, int>> edges; // i < j after validation
  void validate() const;  // range checks, no self-loops, no duplicates
};

// Text format: header "n m" followed by m lines "i j" (0-based).
Graph parse_edge_list(const std::string& text);
std::string to_edge_list(const Graph& g);

// Grid Tiling (Inequality) instance: k x k grid of nonempty sets of pairs
// with 1-based values in [1, n]. Horizontally adjacent chosen pairs must
// satisfy u <= u', vertically adjacent ones v <= v'.
struct GridTilingInstance {
  int n = 0;
  int k = 0;
  // sets[i][j] for grid cell (i+1, j+1), i indexing the horizontal axis.
  std::vector<std::vector<std::vector<std::pair<int, int>>>> sets;
  void validate() const;
};

// Per-edge construction record plus the calibration constants shared by the
// whole instance; check() re-verifies the multiplicity bounds exactly.
struct ReductionCertificate {
  struct EdgeRecord {
    int u = 0, v = 0;          // edge endpoints
    Point center;              // client location (perturbed for the 4D case)
    Rational squared_radius;   // r^2 (r'^2 for the 4D case)
    Integer multiplicity;      // n_{u,v}
    std::optional<RadicalSum> penalty;
  };
  std::vector<EdgeRecord> edges;
  Rational epsilon;
  Rational delta;
  Integer n_q;                 // replication base count, ceil(1/delta)
  Rational r_q_squared;        // largest squared radius
  RadicalSum mu;               // n_q * r_q
  Rational nu;
  int k = 0, s = 0;

  // mu <= multiplicity * r <= (1+delta) * mu for every edge, compared on
  // squared rational forms. Throws on violation.
  void check() const;
};

struct MetricReduction {
  MetricInstance instance;
  int k = 0;
  Rational nu;
};

// Vertex candidates, edge clients, distance 1 to an endpoint and 3
// otherwise, completed to a shortest-path metric; nu = s + 3(m - s).
MetricReduction reduce_pvc_metric(const Graph& g, int k, int s);

struct ClusteringReduction {
  ClusteringInstance instance;
  int k = 0;                   // budget for the reduced instance
  Rational nu;
  ReductionCertificate certificate;
};

// 3D k-median with penalties: candidates on the moment curve at t = 2i,
// one weighted client per edge at the circumcenter through the endpoints'
// moment points and their dummies at t = 2i+1, penalty r + eps/n.
ClusteringReduction reduce_pvc_3d_penalties(const Graph& g, int k, int s);

// 4D k-median without penalties: candidates z* = (1,1,1,1) plus moment
// points at t = 2i; per edge a perturbed circumcenter client, plus a heavy
// client block at z* forcing z* open. Budget becomes k + 1.
ClusteringReduction reduce_pvc_4d(const Graph& g, int k, int s);

struct PerturbedCenter {
  Point center;              // c'
  Rational squared_radius;   // d(c', v_i)^2 = d(c', v_j)^2
  Rational eps_lo, eps_hi;   // certified band: (1+lo) r' <= d(c', z*) <= (1+hi) r'
};

// Moves the circumcenter c along the bisector hyperplane of v_i, v_j away
// from z* until d(c', z*) lies in the band [(1+eps_lo) r', (1+eps_hi) r'],
// keeping every point in `others` at distance >= (1+eps_lo) r'. All
// conditions verified by exact squared comparisons. eps_lo = 0 returns c
// unchanged. Throws if the search or the `others` condition fails.
PerturbedCenter perturb_center(const Point& c, const Point& vi,
                               const Point& vj, const Point& zstar,
                               const std::vector<Point>& others,
                               const Rational& eps_lo,
                               const Rational& eps_hi);

struct ReplicationCounts {
  Integer n_q;
  std::vector<Integer> counts;  // aligned with the input radii
  RadicalSum mu;                // n_q * r_q, r_q the largest radius
};

// n_q = ceil(1/delta); each count is the smallest integer t with
// t^2 r^2 >= n_q^2 r_q^2, so that mu <= t r <= (1+delta) mu.
ReplicationCounts replication_counts(const std::vector<Rational>& squared_radii,
                                     const Rational& delta);

struct GridReduction {
  ClusteringInstance instance;
  int k = 0;  // k^2 of the source instance
  Rational nu;
};

// 2D k-median with penalties on an eps-grid of unit-penalty clients
// (eps = 1/n^3) and one unit-disk candidate per pair of each cell; nu
// separates the disjoint-disk cost from every overlapping configuration.
// Throws a size error when the client grid would exceed client_cap.
GridReduction reduce_gridtiling_2d(const GridTilingInstance& gt,
                                   std::size_t client_cap = 200000);

}  // namespace exclust

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "exclust/geometry.hpp"
#include "exclust/radical.hpp"

namespace exclust {

// A demand point. The weight is an integral multiplicity standing in for
// that many coincident unit clients; the optional penalty caps the client's
// contribution to the objective.
struct Client {
  Point location;
  Integer weight = 1;                 // >= 1
  std::optional<RadicalSum> penalty;  // > 0 when present
};

using CostValue = RadicalSum;

// Geometric k-median/k-means decision or optimization instance.
struct ClusteringInstance {
  int dimension = 2;                  // 2, 3 or 4
  int power = 1;                      // p = 1 median, p = 2 means
  std::vector<Point> candidates;
  std::vector<Client> clients;
  std::optional<RadicalSum> threshold;  // decision cost bound
  std::map<std::string, std::string> meta;

  void validate() const;  // throws on dimension/power/weight violations
};

// Finite-metric instance given by an explicit distance matrix over all
// points; candidates and clients are index sets into the matrix.
struct MetricInstance {
  int num_points = 0;
  std::vector<Rational> matrix;  // row-major, num_points^2
  std::vector<int> candidates;
  struct WeightedClient {
    int index;
    Integer weight = 1;
  };
  std::vector<WeightedClient> clients;
  std::optional<Rational> threshold;
  std::map<std::string, std::string> meta;

  const Rational& dist(int i, int j) const { return matrix[i * num_points + j]; }
  void validate() const;  // symmetry, zero diagonal, triangle inequality
};

// A set of opened candidate indices.
struct Solution {
  std::set<int> open;
};

// Total cost sum_clients weight * min(min_open dist^p, penalty), evaluated
// over open union forced_open. Throws if some client has no penalty and the
// combined open set is empty.
CostValue solution_cost(const ClusteringInstance& inst, const Solution& sol,
                        const std::set<int>& forced_open = {});

Rational metric_solution_cost(const MetricInstance& inst, const Solution& sol);

enum class SolverKind { Brute, Planar };

// True iff the optimal cost is <= the stored threshold (exact comparison).
// Throws when no threshold is present.
bool decide(const ClusteringInstance& inst, int k,
            SolverKind solver = SolverKind::Brute);
bool decide(const MetricInstance& inst, int k);

}  // namespace exclust

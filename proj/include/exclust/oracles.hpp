#pragma once

#include <cstdint>
#include <string>

#include "exclust/instance.hpp"
#include "exclust/reductions.hpp"

namespace exclust {

// Partial Vertex Cover decision by exhaustive k-subset enumeration: can k
// vertices cover at least s edges?
bool solve_pvc(const Graph& g, int k, int s);

// Grid Tiling (Inequality) decision by exhaustive search over one pair per
// cell with the row (u <= u') and column (v <= v') constraints.
bool solve_gridtiling_inequality(const GridTilingInstance& gt);

struct VerificationCase {
  std::string descriptor;
  bool source_answer = false;
  bool reduced_answer = false;
  bool match = false;
};

struct VerificationReport {
  std::string kind;
  std::vector<VerificationCase> cases;
  long samples_tested = 0;  // lemma/invariant checks performed
  long violations = 0;      // lemma/invariant checks failed
  double wall_time_seconds = 0;

  long mismatches() const;
  bool passed() const { return violations == 0 && mismatches() == 0; }
  // Stable field order for golden-file comparison.
  std::string to_json() const;
};

enum class ReductionKind { Metric, Pvc3d, Pvc4d, GridTiling };

// Case families for verify_reduction. Graph kinds enumerate every graph
// (connected graphs for Metric, nonempty edge sets otherwise) on up to
// exhaustive_max_vertices vertices with all s and k <= max_k, plus
// random_cases random graphs on random_vertices vertices. GridTiling
// enumerates all singleton n=2, k=2 instances when grid_exhaustive is set,
// plus random_cases random (grid_n, grid_k) instances.
struct ReductionCaseSpec {
  int exhaustive_max_vertices = 5;
  int max_k = 2;
  int random_cases = 0;
  int random_vertices = 6;
  bool grid_exhaustive = false;
  int grid_n = 3;
  int grid_k = 2;
  std::uint64_t seed = 1;
};

// Runs the source-problem oracle against decide() on the reduced instance
// for every generated case; also re-verifies each reduction's certificate
// and, for the 4D family, that some optimal solution opens the forced
// center on yes-cases and every perturbed center passes its exact band
// conditions.
VerificationReport verify_reduction(ReductionKind kind,
                                    const ReductionCaseSpec& spec);

// Seeded random 2D instance for the planar-vs-brute equivalence suite:
// up to max_candidates distinct integer-coordinate candidates and up to
// max_clients clients in [0,100]^2, power 1 or 2, optional penalties.
ClusteringInstance random_planar_instance(std::uint64_t seed,
                                          int max_candidates = 8,
                                          int max_clients = 20);

// Runs exact_planar_solve and brute_force_solve (k = 3) on `cases` seeded
// random 2D instances (degenerate ones perturbed first, both solvers then
// see the same instance) and records exact cost agreement; also tallies
// the curve-length bound floor(sqrt(4.5 k)) as an invariant check.
VerificationReport verify_oracle_equivalence(int cases, std::uint64_t seed);

// Property check for the moment-curve sphere-intersection pattern: random
// increasing rational tuples (dim+1 values below 100), the circumsphere of
// their moment points, and exact classification of samples from every open
// interval (the tail sampled in (t_max, 2 t_max]). Violations counts any
// deviation from the proven inside/outside pattern.
VerificationReport verify_descartes(int dim, int trials,
                                    int samples_per_interval,
                                    std::uint64_t seed);

}  // namespace exclust

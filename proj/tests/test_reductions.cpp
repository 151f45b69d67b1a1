#include "exclust/reductions.hpp"

#include <algorithm>

#include "doctest.h"
#include "exclust/oracles.hpp"
#include "exclust/solver.hpp"

using namespace exclust;

namespace {

Graph triangle() {
  Graph g;
  g.n = 3;
  g.edges = {{0, 1}, {0, 2}, {1, 2}};
  return g;
}

Graph single_edge() {
  Graph g;
  g.n = 2;
  g.edges = {{0, 1}};
  return g;
}

}  // namespace

TEST_CASE("edge list parsing round trip") {
  const std::string text = "4 3\n0 1\n1 2\n0 3\n";
  Graph g = parse_edge_list(text);
  CHECK(g.n == 4);
  CHECK(g.edges.size() == 3);
  CHECK(to_edge_list(g) == text);
  CHECK_THROWS_AS(parse_edge_list("3 2\n0 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_edge_list("2 1\n0 0\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_edge_list("2 2\n0 1\n1 0\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_edge_list("2 1\n0 5\n"), std::out_of_range);
}

TEST_CASE("metric reduction reproduces the triangle identity") {
  MetricReduction red = reduce_pvc_metric(triangle(), 1, 2);
  CHECK(red.nu == Rational(5));  // s + 3(m - s) = 2 + 3
  SolveReport r = brute_force_solve(red.instance, 1);
  CHECK(r.cost.rational_value() == Rational(5));
  CHECK(decide(red.instance, 1));

  // Opening all three candidates puts every edge at distance 1.
  Solution all{{0, 1, 2}};
  CHECK(metric_solution_cost(red.instance, all) == Rational(3));
}

TEST_CASE("metric reduction matches the source oracle on small graphs") {
  Graph path;
  path.n = 4;
  path.edges = {{0, 1}, {1, 2}, {2, 3}};
  for (int k = 1; k <= 2; ++k)
    for (int s = 0; s <= 3; ++s) {
      MetricReduction red = reduce_pvc_metric(path, k, s);
      CHECK(decide(red.instance, k) == solve_pvc(path, k, s));
    }
}

TEST_CASE("replication counts satisfy the multiplicity bound") {
  std::vector<Rational> radii2 = {Rational(2), Rational(5),
                                  parse_rational("9/4")};
  Rational delta(1, 7);
  ReplicationCounts reps = replication_counts(radii2, delta);
  CHECK(reps.n_q == 7);
  const Rational mu2 = Rational(reps.n_q) * Rational(reps.n_q) * Rational(5);
  for (size_t i = 0; i < radii2.size(); ++i) {
    Rational t2r2 =
        Rational(reps.counts[i]) * Rational(reps.counts[i]) * radii2[i];
    CHECK(t2r2 >= mu2);
    CHECK(t2r2 <= (1 + delta) * (1 + delta) * mu2);
  }
}

TEST_CASE("3D penalties reduction agrees with the oracle on the triangle") {
  Graph g = triangle();
  for (int k = 0; k <= 3; ++k)
    for (int s = 0; s <= 3; ++s) {
      ClusteringReduction red = reduce_pvc_3d_penalties(g, k, s);
      CHECK_NOTHROW(red.certificate.check());
      CHECK(decide(red.instance, red.k) == solve_pvc(g, k, s));
    }
}

TEST_CASE("3D reduction structure") {
  ClusteringReduction red = reduce_pvc_3d_penalties(single_edge(), 1, 1);
  CHECK(red.instance.dimension == 3);
  CHECK(red.instance.candidates.size() == 2);
  CHECK(red.instance.clients.size() == 1);
  REQUIRE(red.instance.clients[0].penalty.has_value());
  // The client sits at the circumcenter: equidistant from both endpoints.
  const Point& c = red.instance.clients[0].location;
  CHECK(squared_distance(c, red.instance.candidates[0]) ==
        squared_distance(c, red.instance.candidates[1]));
}

TEST_CASE("4D reduction agrees with the oracle on small graphs") {
  for (const Graph& g : {single_edge(), triangle()})
    for (int k = 0; k <= std::min(2, g.n); ++k)
      for (int s = 0; s <= static_cast<int>(g.edges.size()); ++s) {
        ClusteringReduction red = reduce_pvc_4d(g, k, s);
        CHECK_NOTHROW(red.certificate.check());
        CHECK(red.k == k + 1);
        CHECK(decide(red.instance, red.k) == solve_pvc(g, k, s));
      }
}

TEST_CASE("perturbed centers stay in the certified band") {
  ClusteringReduction red = reduce_pvc_4d(triangle(), 1, 2);
  const Point& zstar = red.instance.candidates[0];
  const Rational eps = red.certificate.epsilon;
  const int m = static_cast<int>(red.certificate.edges.size());
  const Rational eps_hi(eps * (Rational(1) + Rational(1, 4 * m)));
  for (const auto& e : red.certificate.edges) {
    const Rational dz2 = squared_distance(e.center, zstar);
    CHECK(dz2 >= (1 + eps) * (1 + eps) * e.squared_radius);
    CHECK(dz2 <= (1 + eps_hi) * (1 + eps_hi) * e.squared_radius);
    CHECK(squared_distance(e.center, red.instance.candidates[e.u + 1]) ==
          e.squared_radius);
    CHECK(squared_distance(e.center, red.instance.candidates[e.v + 1]) ==
          e.squared_radius);
  }
}

TEST_CASE("certificate check flags tampering") {
  ClusteringReduction red = reduce_pvc_3d_penalties(triangle(), 1, 1);
  ReductionCertificate bad = red.certificate;
  bad.edges[0].multiplicity *= 3;
  CHECK_THROWS_AS(bad.check(), std::runtime_error);
}

TEST_CASE("grid tiling reduction: trivial and singleton cases") {
  GridTilingInstance trivial;
  trivial.n = 1;
  trivial.k = 2;
  trivial.sets = {{{{1, 1}}, {{1, 1}}}, {{{1, 1}}, {{1, 1}}}};
  GridReduction red = reduce_gridtiling_2d(trivial);
  CHECK(decide(red.instance, red.k));

  // Satisfiable singleton instance: all cells pick (1,1).
  GridTilingInstance yes;
  yes.n = 2;
  yes.k = 2;
  yes.sets = {{{{1, 1}}, {{1, 1}}}, {{{1, 1}}, {{1, 1}}}};
  GridReduction ryes = reduce_gridtiling_2d(yes);
  CHECK(solve_gridtiling_inequality(yes));
  CHECK(decide(ryes.instance, ryes.k));

  // Unsatisfiable: row constraint 2 <= 1 fails.
  GridTilingInstance no = yes;
  no.sets[0][0] = {{2, 2}};
  GridReduction rno = reduce_gridtiling_2d(no);
  CHECK_FALSE(solve_gridtiling_inequality(no));
  CHECK_FALSE(decide(rno.instance, rno.k));
}

TEST_CASE("grid tiling client cap") {
  GridTilingInstance gt;
  gt.n = 2;
  gt.k = 2;
  gt.sets = {{{{1, 1}}, {{1, 1}}}, {{{1, 1}}, {{1, 1}}}};
  CHECK_THROWS_AS(reduce_gridtiling_2d(gt, 100), std::length_error);
}

TEST_CASE("graph and grid validation") {
  Graph g;
  g.n = 2;
  g.edges = {{0, 1}, {0, 1}};
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);

  GridTilingInstance gt;
  gt.n = 2;
  gt.k = 2;
  gt.sets = {{{{1, 1}}, {}}, {{{1, 1}}, {{1, 1}}}};
  CHECK_THROWS_AS(gt.validate(), std::invalid_argument);
  gt.sets[0][1] = {{3, 1}};
  CHECK_THROWS_AS(gt.validate(), std::out_of_range);
}

#include "exclust/instance.hpp"

#include <random>

#include "doctest.h"

using namespace exclust;

namespace {

Point p2(long x, long y) { return Point(Rational(x), Rational(y)); }

ClusteringInstance line_instance(int power) {
  ClusteringInstance inst;
  inst.dimension = 2;
  inst.power = power;
  inst.candidates = {p2(2, 0), p2(0, 0), p2(4, 0)};
  inst.clients.push_back({p2(0, 0), 1, std::nullopt});
  inst.clients.push_back({p2(4, 0), 1, std::nullopt});
  return inst;
}

}  // namespace

TEST_CASE("solution_cost on collinear clients") {
  ClusteringInstance inst = line_instance(1);
  Solution center{{0}};
  CHECK(solution_cost(inst, center) == RadicalSum(4));
  Solution both{{1, 2}};
  CHECK(solution_cost(inst, both).is_zero());
}

TEST_CASE("penalty binds with weight multiplier") {
  ClusteringInstance inst;
  inst.dimension = 2;
  inst.power = 1;
  inst.candidates = {p2(2, 0)};
  inst.clients.push_back({p2(0, 0), 3, RadicalSum(1)});
  CHECK(solution_cost(inst, Solution{{0}}) == RadicalSum(3));
}

TEST_CASE("forced_open augments the open set") {
  ClusteringInstance inst = line_instance(1);
  CHECK(solution_cost(inst, Solution{}, {1, 2}).is_zero());
  CHECK_THROWS_AS(solution_cost(inst, Solution{}), std::invalid_argument);
}

TEST_CASE("even power yields rational cost") {
  ClusteringInstance inst = line_instance(2);
  inst.clients.push_back({p2(1, 1), 1, std::nullopt});
  CostValue cost = solution_cost(inst, Solution{{0}});
  CHECK(cost.is_rational());
  CHECK(cost.rational_value() == Rational(4 + 4 + 2));
}

TEST_CASE("cost is monotone in the open set") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> coord(0, 30);
  for (int trial = 0; trial < 20; ++trial) {
    ClusteringInstance inst;
    inst.dimension = 2;
    inst.power = (trial % 2) + 1;
    for (int c = 0; c < 4; ++c)
      inst.candidates.push_back(p2(coord(rng), coord(rng)));
    for (int a = 0; a < 6; ++a)
      inst.clients.push_back({p2(coord(rng), coord(rng)), 1, std::nullopt});
    CostValue small = solution_cost(inst, Solution{{0}});
    CostValue larger = solution_cost(inst, Solution{{0, 1, 2}});
    CHECK(radical_leq(larger, small));
  }
}

TEST_CASE("weight linearity") {
  ClusteringInstance heavy;
  heavy.dimension = 2;
  heavy.power = 1;
  heavy.candidates = {p2(0, 0)};
  heavy.clients.push_back({p2(3, 4), 5, std::nullopt});

  ClusteringInstance split = heavy;
  split.clients.clear();
  for (int i = 0; i < 5; ++i)
    split.clients.push_back({p2(3, 4), 1, std::nullopt});
  CHECK(solution_cost(heavy, Solution{{0}}) ==
        solution_cost(split, Solution{{0}}));
}

TEST_CASE("removing a penalty never lowers the cost") {
  ClusteringInstance with = line_instance(1);
  with.clients[0].penalty = RadicalSum(Rational(1));
  ClusteringInstance without = line_instance(1);
  CHECK(radical_leq(solution_cost(with, Solution{{0}}),
                    solution_cost(without, Solution{{0}})));
}

TEST_CASE("instance validation") {
  ClusteringInstance inst = line_instance(1);
  CHECK_NOTHROW(inst.validate());
  inst.clients[0].weight = 0;
  CHECK_THROWS_AS(inst.validate(), std::invalid_argument);
  inst = line_instance(1);
  inst.clients[0].penalty = RadicalSum(Rational(0));
  CHECK_THROWS_AS(inst.validate(), std::invalid_argument);
  inst = line_instance(1);
  inst.dimension = 5;
  CHECK_THROWS_AS(inst.validate(), std::invalid_argument);
  inst = line_instance(1);
  inst.candidates.push_back(Point(Rational(1), Rational(1), Rational(1)));
  CHECK_THROWS_AS(inst.validate(), std::invalid_argument);
}

TEST_CASE("metric cost and validation") {
  MetricInstance inst;
  inst.num_points = 2;
  inst.matrix = {Rational(0), Rational(1), Rational(1), Rational(0)};
  inst.candidates = {0};
  inst.clients.push_back({1, 1});
  CHECK_NOTHROW(inst.validate());
  CHECK(metric_solution_cost(inst, Solution{{0}}) == Rational(1));
  CHECK_THROWS_AS(metric_solution_cost(inst, Solution{}),
                  std::invalid_argument);

  inst.matrix[1] = Rational(2);  // asymmetric
  CHECK_THROWS_AS(inst.validate(), std::invalid_argument);
}

TEST_CASE("triangle inequality enforcement") {
  MetricInstance inst;
  inst.num_points = 3;
  auto set = [&](int i, int j, long d) {
    inst.matrix[i * 3 + j] = Rational(d);
    inst.matrix[j * 3 + i] = Rational(d);
  };
  inst.matrix.assign(9, Rational(0));
  set(0, 1, 1);
  set(1, 2, 1);
  set(0, 2, 5);  // 5 > 1 + 1
  CHECK_THROWS_AS(inst.validate(), std::invalid_argument);
}

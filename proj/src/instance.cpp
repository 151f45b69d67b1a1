#include "exclust/instance.hpp"

namespace exclust {

void ClusteringInstance::validate() const {
  if (dimension < 2 || dimension > 4)
    throw std::invalid_argument("dimension must be 2, 3 or 4");
  if (power < 1) throw std::invalid_argument("power must be >= 1");
  for (const Point& c : candidates)
    if (c.dimension() != dimension)
      throw std::invalid_argument("candidate dimension mismatch");
  for (const Client& a : clients) {
    if (a.location.dimension() != dimension)
      throw std::invalid_argument("client dimension mismatch");
    if (a.weight < 1) throw std::invalid_argument("client weight must be >= 1");
    if (a.penalty && a.penalty->sign() <= 0)
      throw std::invalid_argument("client penalty must be > 0");
  }
}

void MetricInstance::validate() const {
  const int n = num_points;
  if (static_cast<int>(matrix.size()) != n * n)
    throw std::invalid_argument("matrix size mismatch");
  for (int i = 0; i < n; ++i) {
    if (dist(i, i) != 0) throw std::invalid_argument("nonzero diagonal");
    for (int j = 0; j < n; ++j) {
      if (dist(i, j) < 0) throw std::invalid_argument("negative distance");
      if (dist(i, j) != dist(j, i))
        throw std::invalid_argument("asymmetric matrix");
      for (int l = 0; l < n; ++l)
        if (dist(i, j) > dist(i, l) + dist(l, j))
          throw std::invalid_argument("triangle inequality violated");
    }
  }
  for (int c : candidates)
    if (c < 0 || c >= n) throw std::out_of_range("candidate index");
  for (const auto& a : clients) {
    if (a.index < 0 || a.index >= n) throw std::out_of_range("client index");
    if (a.weight < 1) throw std::invalid_argument("client weight must be >= 1");
  }
}

CostValue solution_cost(const ClusteringInstance& inst, const Solution& sol,
                        const std::set<int>& forced_open) {
  std::vector<int> open(sol.open.begin(), sol.open.end());
  for (int c : forced_open)
    if (!sol.open.count(c)) open.push_back(c);
  for (int c : open)
    if (c < 0 || c >= static_cast<int>(inst.candidates.size()))
      throw std::out_of_range("open candidate index");

  std::vector<RadicalSum> parts;
  parts.reserve(inst.clients.size());
  for (const Client& a : inst.clients) {
    bool have_dist = false;
    Rational best_d2;
    for (int c : open) {
      Rational d2 = squared_distance(a.location, inst.candidates[c]);
      if (!have_dist || d2 < best_d2) {
        best_d2 = d2;
        have_dist = true;
      }
    }
    RadicalSum contribution;
    if (!have_dist) {
      if (!a.penalty)
        throw std::invalid_argument(
            "client without penalty cannot be served by an empty open set");
      contribution = *a.penalty;
    } else {
      RadicalSum served = (inst.power % 2 == 0)
                              ? RadicalSum(rational_pow(best_d2, inst.power / 2))
                              : RadicalSum::sqrt_of(
                                    best_d2,
                                    rational_pow(best_d2, (inst.power - 1) / 2));
      if (a.penalty && radical_less(*a.penalty, served))
        contribution = *a.penalty;
      else
        contribution = served;
    }
    parts.push_back(contribution * Rational(a.weight));
  }
  return RadicalSum::sum(parts);
}

Rational metric_solution_cost(const MetricInstance& inst, const Solution& sol) {
  if (sol.open.empty()) throw std::invalid_argument("empty open set");
  for (int c : sol.open)
    if (c < 0 || c >= inst.num_points)
      throw std::out_of_range("open candidate index");
  Rational total(0);
  for (const auto& a : inst.clients) {
    bool first = true;
    Rational best;
    for (int c : sol.open) {
      const Rational& d = inst.dist(a.index, c);
      if (first || d < best) {
        best = d;
        first = false;
      }
    }
    total += best * Rational(a.weight);
  }
  return total;
}

}  // namespace exclust

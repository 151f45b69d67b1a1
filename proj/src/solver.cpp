#include "exclust/solver.hpp"

#include <algorithm>
#include <cmath>

namespace exclust {

namespace {

bool lex_less(const std::vector<int>& a, const std::vector<int>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Visits all sorted index subsets of {0..n-1} of size exactly r in
// lexicographic order.
template <typename F>
void for_each_combination(int n, int r, F&& visit) {
  std::vector<int> idx(r);
  for (int i = 0; i < r; ++i) idx[i] = i;
  if (r > n) return;
  while (true) {
    visit(idx);
    int i = r - 1;
    while (i >= 0 && idx[i] == n - r + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

SolveReport brute_force_solve(const ClusteringInstance& inst, int k,
                              const std::set<int>& forced_open,
                              const BruteOptions& opts) {
  const int n = static_cast<int>(inst.candidates.size());
  const int m = static_cast<int>(inst.clients.size());
  if (k < 0) throw std::invalid_argument("k must be >= 0");
  if (k > n) throw std::invalid_argument("k exceeds candidate count");

  // Exact per-(candidate, client) service terms and their double estimates.
  std::vector<std::vector<RadicalSum>> term(n, std::vector<RadicalSum>(m));
  std::vector<std::vector<double>> dterm;
  std::vector<double> dpen(m, std::numeric_limits<double>::infinity());
  std::vector<double> dweight(m);
  if (opts.double_filter) dterm.assign(n, std::vector<double>(m));
  for (int c = 0; c < n; ++c)
    for (int a = 0; a < m; ++a) {
      term[c][a] =
          distance_pow(inst.clients[a].location, inst.candidates[c], inst.power);
      if (opts.double_filter) dterm[c][a] = term[c][a].to_double();
    }
  for (int a = 0; a < m; ++a) {
    dweight[a] = inst.clients[a].weight.get_d();
    if (inst.clients[a].penalty && opts.double_filter)
      dpen[a] = inst.clients[a].penalty->to_double();
  }

  // Safety margin for the double filter: several orders of magnitude above
  // accumulated rounding error of a sum of ~n*m well-scaled terms.
  double scale = 0;
  if (opts.double_filter) {
    for (int a = 0; a < m; ++a) {
      double worst = std::isfinite(dpen[a]) ? dpen[a] : 0;
      for (int c = 0; c < n; ++c) worst = std::max(worst, dterm[c][a]);
      scale += dweight[a] * worst;
    }
  }
  const double margin = 1e-9 * std::max(scale, 1.0);

  auto exact_cost = [&](const std::vector<int>& subset) {
    std::vector<RadicalSum> parts;
    parts.reserve(m);
    for (int a = 0; a < m; ++a) {
      const RadicalSum* best = nullptr;
      for (int c : subset) {
        if (!best || radical_less(term[c][a], *best)) best = &term[c][a];
      }
      for (int c : forced_open) {
        if (!best || radical_less(term[c][a], *best)) best = &term[c][a];
      }
      const auto& pen = inst.clients[a].penalty;
      const RadicalSum* pick = best;
      if (pen && (!best || radical_less(*pen, *best))) pick = &*pen;
      if (!pick)
        throw std::invalid_argument(
            "client without penalty cannot be served by an empty open set");
      parts.push_back(*pick * Rational(inst.clients[a].weight));
    }
    return RadicalSum::sum(parts);
  };
  auto approx_cost = [&](const std::vector<int>& subset) {
    double total = 0;
    for (int a = 0; a < m; ++a) {
      double best = dpen[a];
      for (int c : subset) best = std::min(best, dterm[c][a]);
      for (int c : forced_open) best = std::min(best, dterm[c][a]);
      total += dweight[a] * best;
    }
    return total;
  };

  SolveReport report;
  bool have_best = false;
  double best_approx = std::numeric_limits<double>::infinity();
  std::vector<int> best_idx;
  bool stop = false;

  std::vector<int> forced(forced_open.begin(), forced_open.end());
  for (int r = 0; r <= k && !stop; ++r) {
    for_each_combination(n, r, [&](const std::vector<int>& idx) {
      if (stop) return;
      ++report.nodes_explored;
      if (r == 0 && forced.empty()) {
        // Only feasible when every client carries a penalty.
        for (const Client& a : inst.clients)
          if (!a.penalty) return;
      }
      if (opts.double_filter && have_best &&
          approx_cost(idx) > best_approx + 2 * margin)
        return;
      CostValue cost = exact_cost(idx);
      if (!have_best || radical_less(cost, report.cost) ||
          (cost == report.cost && lex_less(idx, best_idx))) {
        report.cost = cost;
        best_idx = idx;
        have_best = true;
        best_approx = cost.to_double();
        if (opts.stop_below && radical_leq(cost, *opts.stop_below)) stop = true;
      }
    });
  }
  if (!have_best)
    throw std::invalid_argument("no feasible solution (unservable client)");
  report.solution.open = std::set<int>(best_idx.begin(), best_idx.end());
  return report;
}

SolveReport brute_force_solve(const MetricInstance& inst, int k) {
  const int n = static_cast<int>(inst.candidates.size());
  if (k < 0) throw std::invalid_argument("k must be >= 0");
  if (k > n) throw std::invalid_argument("k exceeds candidate count");

  SolveReport report;
  bool have_best = false;
  Rational best_cost;
  std::vector<int> best_idx;
  for (int r = 1; r <= k; ++r) {
    for_each_combination(n, r, [&](const std::vector<int>& idx) {
      ++report.nodes_explored;
      Solution sol;
      for (int i : idx) sol.open.insert(inst.candidates[i]);
      Rational cost = metric_solution_cost(inst, sol);
      if (!have_best || cost < best_cost ||
          (cost == best_cost && lex_less(idx, best_idx))) {
        best_cost = cost;
        best_idx = idx;
        have_best = true;
      }
    });
  }
  if (!have_best) throw std::invalid_argument("k must be >= 1 for metric solve");
  for (int i : best_idx) report.solution.open.insert(inst.candidates[i]);
  report.cost = RadicalSum(best_cost);
  return report;
}

bool decide(const ClusteringInstance& inst, int k, SolverKind solver) {
  if (!inst.threshold) throw std::invalid_argument("instance has no threshold");
  if (solver == SolverKind::Planar) {
    SolveReport r = exact_planar_solve(inst, k);
    return radical_leq(r.cost, *inst.threshold);
  }
  BruteOptions opts;
  opts.stop_below = *inst.threshold;
  opts.double_filter =
      inst.candidates.size() * inst.clients.size() > 50000;
  SolveReport r = brute_force_solve(inst, k, {}, opts);
  return radical_leq(r.cost, *inst.threshold);
}

bool decide(const MetricInstance& inst, int k) {
  if (!inst.threshold) throw std::invalid_argument("instance has no threshold");
  SolveReport r = brute_force_solve(inst, k);
  return r.cost.rational_value() <= *inst.threshold;
}

}  // namespace exclust

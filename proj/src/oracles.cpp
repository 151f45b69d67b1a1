#include "exclust/oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "exclust/solver.hpp"
#include "json.hpp"

namespace exclust {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

template <typename F>
void for_each_subset(int n, int r, F&& visit) {
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

bool is_connected(const Graph& g) {
  if (g.n <= 1) return true;
  std::vector<std::vector<int>> adj(g.n);
  for (auto [i, j] : g.edges) {
    adj[i].push_back(j);
    adj[j].push_back(i);
  }
  std::vector<bool> seen(g.n, false);
  std::vector<int> stack{0};
  seen[0] = true;
  int reached = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v])
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        stack.push_back(w);
      }
  }
  return reached == g.n;
}

std::string graph_descriptor(const Graph& g, int k, int s) {
  std::ostringstream out;
  out << "n=" << g.n << " m=" << g.edges.size() << " edges=";
  for (size_t e = 0; e < g.edges.size(); ++e) {
    if (e) out << ',';
    out << g.edges[e].first << '-' << g.edges[e].second;
  }
  out << " k=" << k << " s=" << s;
  return out.str();
}

// All graphs on n vertices as edge subsets of K_n; visit may reject via
// the predicate (e.g. connectivity, nonempty edge set).
template <typename Pred, typename F>
void for_each_graph(int max_vertices, Pred&& keep, F&& visit) {
  for (int n = 1; n <= max_vertices; ++n) {
    std::vector<std::pair<int, int>> pool;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) pool.emplace_back(i, j);
    const std::uint64_t total = std::uint64_t(1) << pool.size();
    for (std::uint64_t mask = 0; mask < total; ++mask) {
      Graph g;
      g.n = n;
      for (size_t e = 0; e < pool.size(); ++e)
        if (mask >> e & 1) g.edges.push_back(pool[e]);
      if (keep(g)) visit(g);
    }
  }
}

Graph random_graph(int n, std::mt19937_64& rng) {
  Graph g;
  g.n = n;
  do {
    g.edges.clear();
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rng() & 1) g.edges.emplace_back(i, j);
  } while (g.edges.empty());
  return g;
}

// Threshold for coverage target s, recomputed from the calibration
// constants the reduction certifies; matches the reduction's own formula.
Rational nu_3d_for_s(const ReductionCertificate& cert, int m, int s) {
  const RadicalSum yes =
      (cert.mu * Rational(m) + RadicalSum(Rational(cert.epsilon * (m - s)))) *
      Rational(1 + cert.delta);
  const RadicalSum no_floor =
      cert.mu * Rational(m) + RadicalSum(Rational(cert.epsilon * (m - s + 1)));
  return rational_between(yes, no_floor);
}

Rational nu_4d_for_s(const ReductionCertificate& cert, int m, int s) {
  const Rational eps = cert.epsilon;
  const Rational eps_hi(eps * (Rational(1) + Rational(1, 4 * m)));
  const RadicalSum yes =
      cert.mu * Rational((1 + cert.delta) *
                         (Rational(s) + Rational(m - s) * (1 + eps_hi)));
  const RadicalSum no_floor =
      cert.mu * Rational(Rational(m) + Rational(m - s + 1) * eps);
  return rational_between(yes, no_floor);
}

void check_certificate(const ReductionCertificate& cert,
                       VerificationReport& report) {
  report.samples_tested += static_cast<long>(cert.edges.size());
  try {
    cert.check();
  } catch (const std::runtime_error&) {
    ++report.violations;
  }
}

void check_4d_band(const ClusteringInstance& inst,
                   const ReductionCertificate& cert,
                   VerificationReport& report) {
  const Point& zstar = inst.candidates[0];
  const Rational eps = cert.epsilon;
  const int m = static_cast<int>(cert.edges.size());
  const Rational eps_hi(eps * (Rational(1) + Rational(1, 4 * m)));
  const Rational lo2((1 + eps) * (1 + eps));
  const Rational hi2((1 + eps_hi) * (1 + eps_hi));
  for (const auto& e : cert.edges) {
    const Point& vi = inst.candidates[e.u + 1];
    const Point& vj = inst.candidates[e.v + 1];
    // (1) equidistance to the edge endpoints
    ++report.samples_tested;
    if (squared_distance(e.center, vi) != e.squared_radius ||
        squared_distance(e.center, vj) != e.squared_radius)
      ++report.violations;
    // (2) distance to z* inside the certified band
    ++report.samples_tested;
    const Rational dz2 = squared_distance(e.center, zstar);
    if (dz2 < lo2 * e.squared_radius || dz2 > hi2 * e.squared_radius)
      ++report.violations;
    // (3) every non-adjacent vertex candidate strictly outside
    ++report.samples_tested;
    for (size_t l = 1; l < inst.candidates.size(); ++l) {
      int vertex = static_cast<int>(l) - 1;
      if (vertex == e.u || vertex == e.v) continue;
      if (squared_distance(e.center, inst.candidates[l]) <= e.squared_radius) {
        ++report.violations;
        break;
      }
    }
  }
}

GridTilingInstance random_gridtiling(int n, int k, std::mt19937_64& rng) {
  GridTilingInstance gt;
  gt.n = n;
  gt.k = k;
  std::vector<std::pair<int, int>> pool;
  for (int u = 1; u <= n; ++u)
    for (int v = 1; v <= n; ++v) pool.emplace_back(u, v);
  std::uniform_int_distribution<int> size_dist(1, std::min<int>(3, pool.size()));
  gt.sets.assign(k, std::vector<std::vector<std::pair<int, int>>>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      std::vector<std::pair<int, int>> cell = pool;
      std::shuffle(cell.begin(), cell.end(), rng);
      cell.resize(size_dist(rng));
      std::sort(cell.begin(), cell.end());
      gt.sets[i][j] = cell;
    }
  return gt;
}

std::string grid_descriptor(const GridTilingInstance& gt) {
  std::ostringstream out;
  out << "n=" << gt.n << " k=" << gt.k << " sets=";
  for (int i = 0; i < gt.k; ++i)
    for (int j = 0; j < gt.k; ++j) {
      out << '{';
      for (size_t p = 0; p < gt.sets[i][j].size(); ++p) {
        if (p) out << ' ';
        out << gt.sets[i][j][p].first << ',' << gt.sets[i][j][p].second;
      }
      out << '}';
    }
  return out.str();
}

}  // namespace

bool solve_pvc(const Graph& g, int k, int s) {
  g.validate();
  const int m = static_cast<int>(g.edges.size());
  if (k < 0 || k > g.n) throw std::invalid_argument("k out of range");
  if (s < 0 || s > m) throw std::invalid_argument("s out of range");
  if (s == 0) return true;
  bool found = false;
  for_each_subset(g.n, k, [&](const std::vector<int>& verts) {
    if (found) return;
    std::vector<bool> in(g.n, false);
    for (int v : verts) in[v] = true;
    int covered = 0;
    for (auto [i, j] : g.edges)
      if (in[i] || in[j]) ++covered;
    if (covered >= s) found = true;
  });
  return found;
}

bool solve_gridtiling_inequality(const GridTilingInstance& gt) {
  gt.validate();
  const int k = gt.k;
  // choice[i][j], filled cell by cell in row-major order of (i, j).
  std::vector<std::vector<std::pair<int, int>>> choice(
      k, std::vector<std::pair<int, int>>(k));
  std::function<bool(int)> place = [&](int cell) -> bool {
    if (cell == k * k) return true;
    const int i = cell / k;
    const int j = cell % k;
    for (const auto& pair : gt.sets[i][j]) {
      if (i > 0 && !(choice[i - 1][j].first <= pair.first)) continue;
      if (j > 0 && !(choice[i][j - 1].second <= pair.second)) continue;
      choice[i][j] = pair;
      if (place(cell + 1)) return true;
    }
    return false;
  };
  return place(0);
}

long VerificationReport::mismatches() const {
  long count = 0;
  for (const VerificationCase& c : cases)
    if (!c.match) ++count;
  return count;
}

std::string VerificationReport::to_json() const {
  nlohmann::ordered_json doc;
  doc["kind"] = kind;
  doc["num_cases"] = cases.size();
  doc["mismatches"] = mismatches();
  doc["samples_tested"] = samples_tested;
  doc["violations"] = violations;
  doc["passed"] = passed();
  doc["wall_time_seconds"] = wall_time_seconds;
  doc["cases"] = nlohmann::ordered_json::array();
  for (const VerificationCase& c : cases) {
    nlohmann::ordered_json jc;
    jc["descriptor"] = c.descriptor;
    jc["source_answer"] = c.source_answer;
    jc["reduced_answer"] = c.reduced_answer;
    jc["match"] = c.match;
    doc["cases"].push_back(std::move(jc));
  }
  return doc.dump(2) + "\n";
}

VerificationReport verify_reduction(ReductionKind kind,
                                    const ReductionCaseSpec& spec) {
  VerificationReport report;
  const auto start = Clock::now();
  std::mt19937_64 rng(spec.seed);

  auto record = [&](std::string descriptor, bool source, bool reduced) {
    report.cases.push_back(
        {std::move(descriptor), source, reduced, source == reduced});
  };

  if (kind == ReductionKind::Metric) {
    report.kind = "metric";
    for_each_graph(
        spec.exhaustive_max_vertices,
        [](const Graph& g) { return is_connected(g); },
        [&](const Graph& g) {
          const int m = static_cast<int>(g.edges.size());
          for (int k = 1; k <= std::min(spec.max_k, g.n); ++k)
            for (int s = 0; s <= m; ++s) {
              MetricReduction red = reduce_pvc_metric(g, k, s);
              record(graph_descriptor(g, k, s), solve_pvc(g, k, s),
                     decide(red.instance, k));
            }
        });
  } else if (kind == ReductionKind::Pvc3d || kind == ReductionKind::Pvc4d) {
    const bool is3d = kind == ReductionKind::Pvc3d;
    report.kind = is3d ? "pvc3d" : "pvc4d";
    auto run_graph = [&](const Graph& g) {
      const int m = static_cast<int>(g.edges.size());
      for (int k = 0; k <= std::min(spec.max_k, g.n); ++k) {
        ClusteringReduction red = is3d ? reduce_pvc_3d_penalties(g, k, 0)
                                       : reduce_pvc_4d(g, k, 0);
        check_certificate(red.certificate, report);
        if (!is3d) check_4d_band(red.instance, red.certificate, report);
        SolveReport opt = brute_force_solve(red.instance, red.k, {}, {});
        // 4D: the heavy block makes any within-threshold solution open the
        // forced center, so the optimum of a yes-case must contain it.
        const bool zstar_optimal = is3d || opt.solution.open.count(0) > 0;
        for (int s = 0; s <= m; ++s) {
          const Rational nu = is3d ? nu_3d_for_s(red.certificate, m, s)
                                   : nu_4d_for_s(red.certificate, m, s);
          const bool source = solve_pvc(g, k, s);
          const bool reduced = radical_leq(opt.cost, RadicalSum(nu));
          record(graph_descriptor(g, k, s), source, reduced);
          if (!is3d && source && reduced) {
            // Some optimal solution must open the forced center z*.
            ++report.samples_tested;
            if (!zstar_optimal) ++report.violations;
          }
        }
      }
    };
    for_each_graph(
        spec.exhaustive_max_vertices,
        [](const Graph& g) { return !g.edges.empty(); }, run_graph);
    for (int c = 0; c < spec.random_cases; ++c)
      run_graph(random_graph(spec.random_vertices, rng));
  } else {
    report.kind = "gridtiling";
    auto run_case = [&](const GridTilingInstance& gt) {
      GridReduction red = reduce_gridtiling_2d(gt);
      record(grid_descriptor(gt), solve_gridtiling_inequality(gt),
             decide(red.instance, red.k));
    };
    if (spec.grid_exhaustive) {
      // Every singleton-set n=2, k=2 instance.
      std::vector<std::pair<int, int>> pool{{1, 1}, {1, 2}, {2, 1}, {2, 2}};
      for (size_t a = 0; a < pool.size(); ++a)
        for (size_t b = 0; b < pool.size(); ++b)
          for (size_t c = 0; c < pool.size(); ++c)
            for (size_t d = 0; d < pool.size(); ++d) {
              GridTilingInstance gt;
              gt.n = 2;
              gt.k = 2;
              gt.sets = {{{pool[a]}, {pool[b]}}, {{pool[c]}, {pool[d]}}};
              run_case(gt);
            }
    }
    for (int c = 0; c < spec.random_cases; ++c)
      run_case(random_gridtiling(spec.grid_n, spec.grid_k, rng));
  }

  report.wall_time_seconds = seconds_since(start);
  return report;
}

ClusteringInstance random_planar_instance(std::uint64_t seed,
                                          int max_candidates,
                                          int max_clients) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> ncand(3, max_candidates);
  std::uniform_int_distribution<int> nclients(1, max_clients);
  std::uniform_int_distribution<int> coord(0, 100);
  std::uniform_int_distribution<int> pen(1, 50);

  ClusteringInstance inst;
  inst.dimension = 2;
  inst.power = (rng() & 1) ? 2 : 1;
  const int n = ncand(rng);
  std::set<Point> used;
  while (static_cast<int>(inst.candidates.size()) < n) {
    Point p(Rational(coord(rng)), Rational(coord(rng)));
    if (used.insert(p).second) inst.candidates.push_back(p);
  }
  const bool with_penalties = rng() & 1;
  const int m = nclients(rng);
  for (int a = 0; a < m; ++a) {
    Client client;
    client.location = Point(Rational(coord(rng)), Rational(coord(rng)));
    if (with_penalties && (rng() & 1))
      client.penalty = RadicalSum(Rational(pen(rng)));
    inst.clients.push_back(std::move(client));
  }
  inst.validate();
  return inst;
}

VerificationReport verify_oracle_equivalence(int cases, std::uint64_t seed) {
  VerificationReport report;
  report.kind = "oracle-equivalence";
  const auto start = Clock::now();
  const int k = 3;
  const int length_bound =
      static_cast<int>(std::floor(std::sqrt(4.5 * k)));
  for (int c = 0; c < cases; ++c) {
    const std::uint64_t case_seed = seed + static_cast<std::uint64_t>(c);
    ClusteringInstance inst = random_planar_instance(case_seed);
    auto [generic, perturbed] = perturb_if_degenerate(inst, case_seed);
    SolveReport planar = exact_planar_solve(generic, k);
    SolveReport brute = brute_force_solve(generic, k);
    std::ostringstream desc;
    desc << "seed=" << case_seed << " |C|=" << generic.candidates.size()
         << " |A|=" << generic.clients.size() << " p=" << generic.power
         << (perturbed ? " perturbed" : "");
    const bool match = compare(planar.cost, brute.cost) == Ordering::Equal;
    report.cases.push_back({desc.str(), true, match, match});
    ++report.samples_tested;
    if (planar.max_curve_length > length_bound) ++report.violations;
  }
  report.wall_time_seconds = seconds_since(start);
  return report;
}

VerificationReport verify_descartes(int dim, int trials,
                                    int samples_per_interval,
                                    std::uint64_t seed) {
  if (dim != 3 && dim != 4) throw std::invalid_argument("dim must be 3 or 4");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  VerificationReport report;
  report.kind = dim == 3 ? "descartes3" : "descartes4";
  const auto start = Clock::now();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> draw(1, 10000);
  const int points = dim + 1;

  for (int trial = 0; trial < trials; ++trial) {
    std::vector<Rational> ts;
    while (static_cast<int>(ts.size()) < points) {
      Rational t(draw(rng), draw(rng));
      t.canonicalize();
      if (t >= 100) continue;
      if (std::find(ts.begin(), ts.end(), t) == ts.end()) ts.push_back(t);
    }
    std::sort(ts.begin(), ts.end());

    std::vector<Point> pts;
    for (const Rational& t : ts) pts.push_back(moment_point(t, dim));
    Sphere sph = circumsphere(pts);

    // Open intervals and the proven side pattern. In dimension 3 the
    // pattern starts at the origin; in dimension 4 it starts at t_1. The
    // unbounded tail is sampled in (t_max, 2 t_max].
    std::vector<Rational> bounds;
    if (dim == 3) bounds.push_back(Rational(0));
    for (const Rational& t : ts) bounds.push_back(t);
    bounds.push_back(Rational(2) * ts.back());
    // Alternates Outside, Inside, ... ending Outside past t_max.
    for (size_t iv = 0; iv + 1 < bounds.size(); ++iv) {
      const SphereSide expected = ((bounds.size() - 2 - iv) % 2 == 0)
                                      ? SphereSide::Outside
                                      : SphereSide::Inside;
      for (int j = 1; j <= samples_per_interval; ++j) {
        Rational frac(j, samples_per_interval + 1);
        frac.canonicalize();
        Rational t(bounds[iv] + (bounds[iv + 1] - bounds[iv]) * frac);
        ++report.samples_tested;
        if (sphere_side(sph, moment_point(t, dim)) != expected)
          ++report.violations;
      }
    }
  }
  report.wall_time_seconds = seconds_since(start);
  return report;
}

}  // namespace exclust

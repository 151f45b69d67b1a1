#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "exclust/polygon.hpp"
#include "exclust/solver.hpp"

namespace exclust {

namespace {

// ---------------------------------------------------------------------------
// Filtered 2D predicates: double-precision evaluation with a conservative
// error bound, falling back to the exact rational predicate when the bound
// does not separate the result from zero. Every returned sign is exact.

struct FPt {
  const Point* exact;
  double x, y;
};

FPt make_fpt(const Point& p) { return FPt{&p, p[0].get_d(), p[1].get_d()}; }

int orient_f(const FPt& a, const FPt& b, const FPt& c) {
  double l = (b.x - a.x) * (c.y - a.y);
  double r = (b.y - a.y) * (c.x - a.x);
  double det = l - r;
  double err = 1e-12 * (std::fabs(l) + std::fabs(r)) + 1e-290;
  if (det > err) return 1;
  if (det < -err) return -1;
  return orientation(*a.exact, *b.exact, *c.exact);
}

bool on_segment_f(const FPt& a, const FPt& b, const FPt& q) {
  if (orient_f(a, b, q) != 0) return false;
  const Point& pa = *a.exact;
  const Point& pb = *b.exact;
  const Point& pq = *q.exact;
  return std::min(pa[0], pb[0]) <= pq[0] && pq[0] <= std::max(pa[0], pb[0]) &&
         std::min(pa[1], pb[1]) <= pq[1] && pq[1] <= std::max(pa[1], pb[1]);
}

bool segments_intersect_f(const FPt& a, const FPt& b, const FPt& c,
                          const FPt& d) {
  double slack = 1e-9 * (std::fabs(a.x) + std::fabs(b.x) + std::fabs(c.x) +
                         std::fabs(d.x) + std::fabs(a.y) + std::fabs(b.y) +
                         std::fabs(c.y) + std::fabs(d.y) + 1.0);
  if (std::max(a.x, b.x) + slack < std::min(c.x, d.x) ||
      std::max(c.x, d.x) + slack < std::min(a.x, b.x) ||
      std::max(a.y, b.y) + slack < std::min(c.y, d.y) ||
      std::max(c.y, d.y) + slack < std::min(a.y, b.y))
    return false;
  int o1 = orient_f(a, b, c);
  int o2 = orient_f(a, b, d);
  int o3 = orient_f(c, d, a);
  int o4 = orient_f(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment_f(a, b, c)) return true;
  if (o2 == 0 && on_segment_f(a, b, d)) return true;
  if (o3 == 0 && on_segment_f(c, d, a)) return true;
  if (o4 == 0 && on_segment_f(c, d, b)) return true;
  return false;
}

bool points_equal(const FPt& a, const FPt& b) {
  if (std::fabs(a.x - b.x) > 1e-9 || std::fabs(a.y - b.y) > 1e-9) return false;
  return *a.exact == *b.exact;
}

// Exact point-vs-closed-curve classification with filtered orientation.
RegionSide point_vs_curve_f(const std::vector<FPt>& v, const FPt& p) {
  const int n = static_cast<int>(v.size());
  for (int i = 0; i < n; ++i)
    if (on_segment_f(v[i], v[(i + 1) % n], p)) return RegionSide::On;
  const Rational& py = (*p.exact)[1];
  int crossings = 0;
  for (int i = 0; i < n; ++i) {
    const FPt& a = v[i];
    const FPt& b = v[(i + 1) % n];
    bool a_below = (*a.exact)[1] <= py;
    bool b_below = (*b.exact)[1] <= py;
    if (a_below == b_below) continue;
    int o = orient_f(a, b, p);
    if (a_below ? (o > 0) : (o < 0)) ++crossings;
  }
  return (crossings % 2 == 1) ? RegionSide::Inside : RegionSide::Outside;
}

// Segments (a,b) and (b,v) share vertex b; they overlap beyond the shared
// vertex iff the three points are collinear and a, v lie on the same side.
bool folds_back(const FPt& a, const FPt& b, const FPt& v) {
  if (orient_f(a, b, v) != 0) return false;
  return on_segment_f(a, b, v) || on_segment_f(b, v, a);
}

// Can vertex v extend the open polyline verts while keeping it simple?
bool can_extend(const std::vector<FPt>& verts, const FPt& v) {
  const int t = static_cast<int>(verts.size());
  for (const FPt& u : verts)
    if (points_equal(u, v)) return false;
  if (t >= 2 && folds_back(verts[t - 2], verts[t - 1], v)) return false;
  // New segment (t-1, v) against all non-adjacent segments (i, i+1).
  for (int i = 0; i <= t - 3; ++i)
    if (segments_intersect_f(verts[i], verts[i + 1], verts[t - 1], v))
      return false;
  return true;
}

// Does the closing segment (last vertex -> first vertex) keep the cycle
// simple?
bool can_close(const std::vector<FPt>& verts) {
  const int n = static_cast<int>(verts.size());
  if (n < 3) return false;
  const FPt& a = verts[n - 1];
  const FPt& b = verts[0];
  if (folds_back(verts[n - 2], a, b)) return false;
  if (folds_back(a, b, verts[1])) return false;
  for (int i = 1; i + 1 < n - 1; ++i)  // skip both adjacent segments
    if (segments_intersect_f(verts[i], verts[i + 1], a, b)) return false;
  return true;
}

// Enumerates every simple closed alternating curve c1,p1,...,cL,pL with
// 2 <= L <= max_len, exactly once up to rotation and reflection: c1 is the
// smallest candidate index on the curve and p1 < pL fixes the direction.
template <typename Yield>
std::uint64_t enumerate_curves(const std::vector<FPt>& cand,
                               const std::vector<FPt>& eqp, int max_len,
                               Yield&& yield) {
  const int nc = static_cast<int>(cand.size());
  const int np = static_cast<int>(eqp.size());
  if (max_len < 2 || nc < 2 || np < 2) return 0;
  std::uint64_t count = 0;
  std::vector<int> cs, ps;
  std::vector<FPt> verts;
  std::vector<char> cused(nc, 0), pused(np, 0);

  // Invoked after a complete (c_i, p_i) pair has been appended.
  auto dfs = [&](auto&& self) -> void {
    const int len = static_cast<int>(cs.size());
    if (len >= 2 && ps[0] < ps.back() && can_close(verts)) {
      ++count;
      yield(cs, ps, verts);
    }
    if (len == max_len) return;
    for (int c = cs[0] + 1; c < nc; ++c) {
      if (cused[c] || !can_extend(verts, cand[c])) continue;
      cused[c] = 1;
      cs.push_back(c);
      verts.push_back(cand[c]);
      for (int p = 0; p < np; ++p) {
        if (pused[p] || !can_extend(verts, eqp[p])) continue;
        pused[p] = 1;
        ps.push_back(p);
        verts.push_back(eqp[p]);
        self(self);
        verts.pop_back();
        ps.pop_back();
        pused[p] = 0;
      }
      verts.pop_back();
      cs.pop_back();
      cused[c] = 0;
    }
  };

  for (int c0 = 0; c0 < nc; ++c0) {
    cused[c0] = 1;
    cs.push_back(c0);
    verts.push_back(cand[c0]);
    for (int p0 = 0; p0 < np; ++p0) {
      if (pused[p0] || !can_extend(verts, eqp[p0])) continue;
      pused[p0] = 1;
      ps.push_back(p0);
      verts.push_back(eqp[p0]);
      dfs(dfs);
      verts.pop_back();
      ps.pop_back();
      pused[p0] = 0;
    }
    verts.pop_back();
    cs.pop_back();
    cused[c0] = 0;
  }
  return count;
}

// ---------------------------------------------------------------------------
// Recursive solver.

using Mask = std::uint64_t;

int popcount(Mask m) { return __builtin_popcountll(m); }

struct MemoKey {
  Mask cands, clients, forced;
  int k;
  bool operator==(const MemoKey&) const = default;
};

struct MemoKeyHash {
  size_t operator()(const MemoKey& k) const {
    size_t h = std::hash<Mask>()(k.cands);
    auto mix = [&](size_t v) {
      h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    };
    mix(std::hash<Mask>()(k.clients));
    mix(std::hash<Mask>()(k.forced));
    mix(std::hash<int>()(k.k));
    return h;
  }
};

struct NodeResult {
  bool feasible = false;
  CostValue cost;
  std::vector<int> open;
};

struct Scene {
  const ClusteringInstance* inst;
  int n, m;
  std::vector<FPt> cand;
  std::vector<FPt> client;
  std::vector<std::vector<RadicalSum>> term;  // [cand][client] dist^p
  PlanarOptions opts;
  std::unordered_map<MemoKey, NodeResult, MemoKeyHash> memo;
  std::uint64_t nodes = 0;
  std::uint64_t curves = 0;
  int max_curve_len = 0;
};

std::optional<CostValue> cost_of(const Scene& s, const std::vector<int>& open,
                                 Mask forced, Mask client_mask) {
  CostValue total;
  for (int a = 0; a < s.m; ++a) {
    if (!(client_mask >> a & 1)) continue;
    const RadicalSum* best = nullptr;
    for (int c : open)
      if (!best || radical_less(s.term[c][a], *best)) best = &s.term[c][a];
    for (int c = 0; c < s.n; ++c)
      if (forced >> c & 1)
        if (!best || radical_less(s.term[c][a], *best)) best = &s.term[c][a];
    const auto& pen = s.inst->clients[a].penalty;
    const RadicalSum* pick = best;
    if (pen && (!best || radical_less(*pen, *best))) pick = &*pen;
    if (!pick) return std::nullopt;
    total += *pick * Rational(s.inst->clients[a].weight);
  }
  return total;
}

void consider(const Scene& s, NodeResult& best, const std::vector<int>& open,
              Mask forced, Mask client_mask) {
  auto c = cost_of(s, open, forced, client_mask);
  if (!c) return;
  if (!best.feasible || radical_less(*c, best.cost)) {
    best.feasible = true;
    best.cost = std::move(*c);
    best.open = open;
  }
}

NodeResult brute_node(Scene& s, Mask cand_mask, Mask client_mask, int k,
                      Mask forced) {
  std::vector<int> avail;
  for (int c = 0; c < s.n; ++c)
    if (cand_mask >> c & 1) avail.push_back(c);
  k = std::min<int>(k, static_cast<int>(avail.size()));
  NodeResult best;
  std::vector<int> chosen;
  auto rec = [&](auto&& self, int from, int remaining) -> void {
    ++s.nodes;
    consider(s, best, chosen, forced, client_mask);
    if (remaining == 0) return;
    for (int i = from; i < static_cast<int>(avail.size()); ++i) {
      chosen.push_back(avail[i]);
      self(self, i + 1, remaining - 1);
      chosen.pop_back();
    }
  };
  rec(rec, 0, k);
  return best;
}

// Fallback for recursion levels where no separating curve applies: grow a
// solution one cheapest center at a time.
NodeResult greedy_node(Scene& s, Mask cand_mask, Mask client_mask, int k,
                       Mask forced) {
  NodeResult best;
  std::vector<int> open;
  consider(s, best, open, forced, client_mask);
  for (int round = 0; round < k; ++round) {
    bool found = false;
    CostValue round_cost;
    int pick = -1;
    for (int c = 0; c < s.n; ++c) {
      if (!(cand_mask >> c & 1)) continue;
      if (std::find(open.begin(), open.end(), c) != open.end()) continue;
      open.push_back(c);
      auto cost = cost_of(s, open, forced, client_mask);
      open.pop_back();
      if (cost && (!found || radical_less(*cost, round_cost))) {
        found = true;
        round_cost = *cost;
        pick = c;
      }
    }
    if (pick < 0) break;
    open.push_back(pick);
    if (!best.feasible || radical_leq(round_cost, best.cost)) {
      best.feasible = true;
      best.cost = round_cost;
      best.open = open;
    }
  }
  return best;
}

struct PartitionKey {
  Mask ctilde, in_cands, out_cands, in_clients;
  bool operator==(const PartitionKey&) const = default;
};
struct PartitionKeyHash {
  size_t operator()(const PartitionKey& k) const {
    MemoKey mk{k.ctilde, k.in_cands, k.out_cands, 0};
    size_t h = MemoKeyHash()(mk);
    h ^= std::hash<Mask>()(k.in_clients) * 0x2545f4914f6cdd1dULL;
    return h;
  }
};

NodeResult solve_node(Scene& s, Mask cand_mask, Mask client_mask, int k,
                      Mask forced);

void recurse_on_curves(Scene& s, Mask cand_mask, Mask client_mask, int k,
                       Mask forced, NodeResult& best) {
  std::vector<int> avail;
  for (int c = 0; c < s.n; ++c)
    if (cand_mask >> c & 1) avail.push_back(c);
  if (avail.size() < 2) return;

  std::vector<Point> cand_pts;
  cand_pts.reserve(avail.size());
  for (int c : avail) cand_pts.push_back(*s.cand[c].exact);
  std::vector<Point> eq = equidistant_points(cand_pts);
  if (eq.size() < 2) return;
  std::vector<FPt> eqf(eq.size());
  for (size_t i = 0; i < eq.size(); ++i) eqf[i] = make_fpt(eq[i]);
  std::vector<FPt> cf(avail.size());
  for (size_t i = 0; i < avail.size(); ++i) cf[i] = s.cand[avail[i]];

  const int max_len =
      static_cast<int>(std::floor(std::sqrt(4.5 * static_cast<double>(k))));
  std::unordered_set<PartitionKey, PartitionKeyHash> seen;

  enumerate_curves(cf, eqf, max_len, [&](const std::vector<int>& cs,
                                         const std::vector<int>&,
                                         const std::vector<FPt>& verts) {
    ++s.curves;
    const int len = static_cast<int>(cs.size());
    s.max_curve_len = std::max(s.max_curve_len, len);
    Mask ctilde = 0;
    for (int ci : cs) ctilde |= Mask(1) << avail[ci];

    // Candidates classified On belong to both sides; clients on the curve
    // are assigned to the inside call.
    Mask in_cands = 0, out_cands = 0, in_clients = 0, out_clients = 0;
    for (int c = 0; c < s.n; ++c) {
      if (!(cand_mask >> c & 1) || (ctilde >> c & 1)) continue;
      RegionSide side = point_vs_curve_f(verts, s.cand[c]);
      if (side != RegionSide::Outside) in_cands |= Mask(1) << c;
      if (side != RegionSide::Inside) out_cands |= Mask(1) << c;
    }
    for (int a = 0; a < s.m; ++a) {
      if (!(client_mask >> a & 1)) continue;
      RegionSide side = point_vs_curve_f(verts, s.client[a]);
      if (side == RegionSide::Outside)
        out_clients |= Mask(1) << a;
      else
        in_clients |= Mask(1) << a;
    }
    if (!seen.insert({ctilde, in_cands, out_cands, in_clients}).second) return;

    int lo = std::max(0, (k + 2) / 3 - len);  // ceil(k/3) - len, clamped
    int hi = (2 * k) / 3;
    Mask new_forced = forced | ctilde;
    for (int kin = lo; kin <= hi; ++kin) {
      int kout = k - len - kin;
      if (kout < 0) continue;
      NodeResult rin = solve_node(s, in_cands, in_clients, kin, new_forced);
      if (!rin.feasible) continue;
      NodeResult rout = solve_node(s, out_cands, out_clients, kout, new_forced);
      if (!rout.feasible) continue;
      Mask mm = ctilde;
      for (int c : rin.open) mm |= Mask(1) << c;
      for (int c : rout.open) mm |= Mask(1) << c;
      std::vector<int> merged;
      for (int c = 0; c < s.n; ++c)
        if (mm >> c & 1) merged.push_back(c);
      consider(s, best, merged, forced, client_mask);
    }
  });
}

NodeResult solve_node(Scene& s, Mask cand_mask, Mask client_mask, int k,
                      Mask forced) {
  k = std::min(k, popcount(cand_mask));
  MemoKey key{cand_mask, client_mask, forced, k};
  auto it = s.memo.find(key);
  if (it != s.memo.end()) return it->second;
  ++s.nodes;

  NodeResult best;
  if (k <= s.opts.base_case_k) {
    best = brute_node(s, cand_mask, client_mask, k, forced);
  } else {
    best = greedy_node(s, cand_mask, client_mask, k, forced);
    recurse_on_curves(s, cand_mask, client_mask, k, forced, best);
  }
  s.memo.emplace(key, best);
  return best;
}

}  // namespace

std::vector<Point> equidistant_points(const std::vector<Point>& candidates) {
  const int n = static_cast<int>(candidates.size());
  std::set<Point> dedup;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int l = j + 1; l < n; ++l) {
        if (orientation(candidates[i], candidates[j], candidates[l]) == 0)
          continue;
        std::array<Point, 3> tri{candidates[i], candidates[j], candidates[l]};
        dedup.insert(circumsphere(tri).center);
      }
  return std::vector<Point>(dedup.begin(), dedup.end());
}

std::vector<Point> SeparatingCurve::vertices(
    const std::vector<Point>& candidates,
    const std::vector<Point>& eq_points) const {
  if (candidate_indices.size() != equidistant_indices.size())
    throw std::invalid_argument("curve index lists must have equal length");
  std::vector<Point> out;
  for (size_t i = 0; i < candidate_indices.size(); ++i) {
    out.push_back(candidates.at(candidate_indices[i]));
    out.push_back(eq_points.at(equidistant_indices[i]));
  }
  return out;
}

std::uint64_t enumerate_separating_curves(
    const std::vector<Point>& candidates, const std::vector<Point>& eq_points,
    int max_len, const std::function<void(const SeparatingCurve&)>& yield) {
  std::vector<FPt> cf(candidates.size()), pf(eq_points.size());
  for (size_t i = 0; i < candidates.size(); ++i) cf[i] = make_fpt(candidates[i]);
  for (size_t i = 0; i < eq_points.size(); ++i) pf[i] = make_fpt(eq_points[i]);
  return enumerate_curves(cf, pf, max_len,
                          [&](const std::vector<int>& cs,
                              const std::vector<int>& ps,
                              const std::vector<FPt>&) {
                            if (yield) yield(SeparatingCurve{cs, ps});
                          });
}

SolveReport exact_planar_solve(const ClusteringInstance& inst, int k,
                               const std::set<int>& forced_open,
                               const PlanarOptions& opts) {
  if (inst.dimension != 2)
    throw std::invalid_argument("planar solver requires dimension 2");
  const int n = static_cast<int>(inst.candidates.size());
  const int m = static_cast<int>(inst.clients.size());
  if (k < 0) throw std::invalid_argument("k must be >= 0");
  if (k > n) throw std::invalid_argument("k exceeds candidate count");
  if (n > 64 || m > 64)
    throw std::invalid_argument(
        "planar solver supports at most 64 candidates and 64 clients");

  Scene s;
  s.inst = &inst;
  s.n = n;
  s.m = m;
  s.opts = opts;
  s.cand.resize(n);
  for (int c = 0; c < n; ++c) s.cand[c] = make_fpt(inst.candidates[c]);
  s.client.resize(m);
  for (int a = 0; a < m; ++a) s.client[a] = make_fpt(inst.clients[a].location);
  s.term.assign(n, std::vector<RadicalSum>(m));
  for (int c = 0; c < n; ++c)
    for (int a = 0; a < m; ++a)
      s.term[c][a] =
          distance_pow(inst.clients[a].location, inst.candidates[c], inst.power);

  Mask forced = 0;
  for (int c : forced_open) {
    if (c < 0 || c >= n) throw std::out_of_range("forced candidate index");
    forced |= Mask(1) << c;
  }
  Mask all_cands = (n == 64) ? ~Mask(0) : ((Mask(1) << n) - 1);
  Mask all_clients = (m == 64) ? ~Mask(0) : ((Mask(1) << m) - 1);

  NodeResult res = solve_node(s, all_cands & ~forced, all_clients, k, forced);
  if (!res.feasible)
    throw std::invalid_argument("no feasible solution (unservable client)");

  SolveReport report;
  report.solution.open = std::set<int>(res.open.begin(), res.open.end());
  report.cost = res.cost;
  report.nodes_explored = s.nodes;
  report.curves_enumerated = s.curves;
  report.max_curve_length = s.max_curve_len;
  return report;
}

bool has_cocircular_quadruple(const std::vector<Point>& points) {
  const int n = static_cast<int>(points.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int l = j + 1; l < n; ++l) {
        if (orientation(points[i], points[j], points[l]) == 0) continue;
        std::array<Point, 3> tri{points[i], points[j], points[l]};
        Sphere sph = circumsphere(tri);
        for (int q = l + 1; q < n; ++q)
          if (sphere_side(sph, points[q]) == SphereSide::On) return true;
      }
  return false;
}

std::pair<ClusteringInstance, bool> perturb_if_degenerate(
    const ClusteringInstance& inst, std::uint64_t seed, int max_retries) {
  auto distinct = [](const std::vector<Point>& pts) {
    for (size_t i = 0; i < pts.size(); ++i)
      for (size_t j = i + 1; j < pts.size(); ++j)
        if (pts[i] == pts[j]) return false;
    return true;
  };
  if (distinct(inst.candidates) && !has_cocircular_quadruple(inst.candidates))
    return {inst, false};

  // Minimum positive coordinate gap between candidates bounds the
  // perturbation radius so that no ordering of distinct coordinates flips.
  Rational gap(0);
  bool have_gap = false;
  for (size_t i = 0; i < inst.candidates.size(); ++i)
    for (size_t j = i + 1; j < inst.candidates.size(); ++j)
      for (int d = 0; d < 2; ++d) {
        Rational diff = abs(inst.candidates[i][d] - inst.candidates[j][d]);
        if (diff > 0 && (!have_gap || diff < gap)) {
          gap = diff;
          have_gap = true;
        }
      }
  if (!have_gap) gap = 1;
  Rational rho = gap / 8;

  std::mt19937_64 rng(seed ^ 0x5bd1e995u);
  std::uniform_int_distribution<std::uint64_t> draw(0, (std::uint64_t(1) << 32) - 1);
  ClusteringInstance out = inst;
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    for (Point& p : out.candidates) {
      const Rational denom(Integer(Integer(1) << 32));
      std::vector<Rational> coords;
      for (int d = 0; d < 2; ++d) {
        Rational r(Integer(static_cast<unsigned long>(draw(rng))));
        r /= denom;
        coords.push_back(p[d] + rho * r);
      }
      p = Point(coords);
    }
    if (distinct(out.candidates) && !has_cocircular_quadruple(out.candidates))
      return {out, true};
    out.candidates = inst.candidates;  // fresh draws next attempt
  }
  throw std::runtime_error("degeneracy perturbation retry budget exhausted");
}

}  // namespace exclust

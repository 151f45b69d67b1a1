#include "exclust/reductions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <sstream>

namespace exclust {

namespace {

std::vector<Rational> coord_sub(const Point& a, const Point& b) {
  std::vector<Rational> r(a.dimension());
  for (int d = 0; d < a.dimension(); ++d) r[d] = a[d] - b[d];
  return r;
}

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational s(0);
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Point point_add_scaled(const Point& p, const std::vector<Rational>& dir,
                       const Rational& lambda) {
  std::vector<Rational> c(p.dimension());
  for (int d = 0; d < p.dimension(); ++d) c[d] = p[d] + lambda * dir[d];
  return Point(c);
}

std::string meta_str(const Rational& q) { return rational_to_string(q); }

}  // namespace

void Graph::validate() const {
  if (n < 1) throw std::invalid_argument("graph needs at least one vertex");
  std::set<std::pair<int, int>> seen;
  for (auto [i, j] : edges) {
    if (i < 0 || j < 0 || i >= n || j >= n)
      throw std::out_of_range("edge endpoint out of range");
    if (i == j) throw std::invalid_argument("self-loop");
    auto key = std::minmax(i, j);
    if (!seen.insert(key).second) throw std::invalid_argument("duplicate edge");
  }
}

Graph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  Graph g;
  int m = 0;
  if (!(in >> g.n >> m)) throw std::invalid_argument("missing edge-list header");
  for (int e = 0; e < m; ++e) {
    int i = 0, j = 0;
    if (!(in >> i >> j))
      throw std::invalid_argument("truncated edge list");
    auto [lo, hi] = std::minmax(i, j);
    g.edges.emplace_back(lo, hi);
  }
  g.validate();
  return g;
}

std::string to_edge_list(const Graph& g) {
  std::ostringstream out;
  out << g.n << ' ' << g.edges.size() << '\n';
  for (auto [i, j] : g.edges) out << i << ' ' << j << '\n';
  return out.str();
}

void GridTilingInstance::validate() const {
  if (n < 1 || k < 1) throw std::invalid_argument("grid tiling needs n, k >= 1");
  if (static_cast<int>(sets.size()) != k)
    throw std::invalid_argument("sets must be a k x k array");
  for (const auto& row : sets) {
    if (static_cast<int>(row.size()) != k)
      throw std::invalid_argument("sets must be a k x k array");
    for (const auto& cell : row) {
      if (cell.empty()) throw std::invalid_argument("empty tiling set");
      for (auto [u, v] : cell)
        if (u < 1 || v < 1 || u > n || v > n)
          throw std::out_of_range("tiling pair outside [1,n]^2");
    }
  }
}

void ReductionCertificate::check() const {
  const Rational mu2 = Rational(n_q) * Rational(n_q) * r_q_squared;
  const Rational cap = (1 + delta) * (1 + delta) * mu2;
  for (const EdgeRecord& e : edges) {
    Rational t2r2 = Rational(e.multiplicity) * Rational(e.multiplicity) *
                    e.squared_radius;
    if (t2r2 < mu2 || t2r2 > cap)
      throw std::runtime_error("certificate multiplicity bound violated");
  }
}

MetricReduction reduce_pvc_metric(const Graph& g, int k, int s) {
  g.validate();
  const int n = g.n;
  const int m = static_cast<int>(g.edges.size());
  if (k < 0 || k > n) throw std::invalid_argument("k out of range");
  if (s < 0 || s > m) throw std::invalid_argument("s out of range");

  // Points: one per vertex, then one per edge. Incident vertex-edge pairs
  // at distance 1, everything else starts at 3 and is completed to the
  // shortest-path metric.
  const int N = n + m;
  MetricReduction out;
  out.instance.num_points = N;
  out.instance.matrix.assign(static_cast<size_t>(N) * N, Rational(3));
  auto at = [&](int i, int j) -> Rational& {
    return out.instance.matrix[static_cast<size_t>(i) * N + j];
  };
  for (int i = 0; i < N; ++i) at(i, i) = 0;
  for (int e = 0; e < m; ++e) {
    at(g.edges[e].first, n + e) = 1;
    at(n + e, g.edges[e].first) = 1;
    at(g.edges[e].second, n + e) = 1;
    at(n + e, g.edges[e].second) = 1;
  }
  for (int l = 0; l < N; ++l)
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        if (at(i, l) + at(l, j) < at(i, j)) at(i, j) = at(i, l) + at(l, j);

  for (int i = 0; i < n; ++i) out.instance.candidates.push_back(i);
  for (int e = 0; e < m; ++e)
    out.instance.clients.push_back({n + e, Integer(1)});
  out.k = k;
  out.nu = Rational(s) + Rational(3) * (m - s);
  out.instance.threshold = out.nu;
  out.instance.meta["reduction"] = "pvc-metric";
  out.instance.meta["k"] = std::to_string(k);
  out.instance.meta["s"] = std::to_string(s);
  out.instance.meta["nu"] = meta_str(out.nu);
  out.instance.validate();
  return out;
}

ReplicationCounts replication_counts(const std::vector<Rational>& squared_radii,
                                     const Rational& delta) {
  if (delta <= 0) throw std::invalid_argument("delta must be > 0");
  ReplicationCounts out;
  out.n_q = rational_ceil(Rational(1) / delta);
  Rational r_q2(0);
  for (const Rational& r2 : squared_radii) {
    if (r2 <= 0) throw std::invalid_argument("squared radius must be > 0");
    r_q2 = std::max(r_q2, r2);
  }
  const Rational target = Rational(out.n_q) * Rational(out.n_q) * r_q2;
  for (const Rational& r2 : squared_radii)
    out.counts.push_back(ceil_sqrt(target / r2));
  out.mu = RadicalSum::sqrt_of(r_q2, Rational(out.n_q));
  return out;
}

ClusteringReduction reduce_pvc_3d_penalties(const Graph& g, int k, int s) {
  g.validate();
  const int n = g.n;
  const int m = static_cast<int>(g.edges.size());
  if (m == 0) throw std::invalid_argument("empty edge set");
  if (k < 0 || k > n) throw std::invalid_argument("k out of range");
  if (s < 0 || s > m) throw std::invalid_argument("s out of range");

  ClusteringReduction out;
  out.instance.dimension = 3;
  out.instance.power = 1;
  // Vertex i sits on the moment curve at t = 2(i+1); its construction-time
  // dummy at t = 2(i+1)+1 is never emitted as a candidate.
  auto vertex_t = [](int i) { return Rational(2 * (i + 1)); };
  for (int i = 0; i < n; ++i)
    out.instance.candidates.push_back(moment_point(vertex_t(i), 3));

  struct EdgeGeom {
    Point center;
    Rational r2;
  };
  std::vector<EdgeGeom> geom;
  std::optional<RadicalSum> min_margin;
  for (auto [u, v] : g.edges) {
    std::array<Point, 4> pts{
        moment_point(vertex_t(u), 3), moment_point(vertex_t(u) + 1, 3),
        moment_point(vertex_t(v), 3), moment_point(vertex_t(v) + 1, 3)};
    Sphere sph = circumsphere(pts);
    if (sphere_side(sph, out.instance.candidates[u]) != SphereSide::On ||
        sphere_side(sph, out.instance.candidates[v]) != SphereSide::On)
      throw std::logic_error("edge endpoints not on their circumsphere");
    RadicalSum r = RadicalSum::sqrt_of(sph.squared_radius);
    for (int l = 0; l < n; ++l) {
      if (l == u || l == v) continue;
      if (sphere_side(sph, out.instance.candidates[l]) != SphereSide::Outside)
        throw std::logic_error("non-adjacent candidate not outside sphere");
      RadicalSum margin = RadicalSum::sqrt_of(squared_distance(
                              sph.center, out.instance.candidates[l])) -
                          r;
      if (!min_margin || radical_less(margin, *min_margin)) min_margin = margin;
    }
    geom.push_back({sph.center, sph.squared_radius});
  }

  // Calibration. The cost gap requires delta * mu * m < eps with
  // mu = n_q * r_q ~ r_q / delta, which forces eps above m * r_q; the
  // penalty margin then only requires eps * delta below the smallest
  // non-adjacent clearance.
  Rational r_q2(0);
  for (const EdgeGeom& e : geom) r_q2 = std::max(r_q2, e.r2);
  const Rational r_q_ub = rational_above(RadicalSum::sqrt_of(r_q2));
  const Rational eps = Rational(4) * m * r_q_ub;
  Rational margin_lb(0);
  if (n > 2) {
    margin_lb = rational_between(RadicalSum(Rational(0)), *min_margin);
  } else {
    margin_lb = 1;  // no non-adjacent candidates to stay clear of
  }
  const Rational delta = std::min(Rational(Rational(1) / (2 * m)),
                                  Rational(margin_lb / (2 * eps)));

  std::vector<Rational> radii;
  for (const EdgeGeom& e : geom) radii.push_back(e.r2);
  ReplicationCounts reps = replication_counts(radii, delta);

  out.certificate.epsilon = eps;
  out.certificate.delta = delta;
  out.certificate.n_q = reps.n_q;
  out.certificate.r_q_squared = r_q2;
  out.certificate.mu = reps.mu;
  out.certificate.k = k;
  out.certificate.s = s;
  for (int e = 0; e < m; ++e) {
    const Rational pen_extra = eps / Rational(reps.counts[e]);
    RadicalSum penalty =
        RadicalSum::sqrt_of(geom[e].r2) + RadicalSum(pen_extra);
    out.instance.clients.push_back(
        {geom[e].center, reps.counts[e], penalty});
    out.certificate.edges.push_back({g.edges[e].first, g.edges[e].second,
                                     geom[e].center, geom[e].r2,
                                     reps.counts[e], penalty});
    // Penalty clearance: every non-adjacent candidate stays strictly
    // farther than r + eps/n, so uncovered edge clients always prefer
    // their penalty.
    for (int l = 0; l < n; ++l) {
      if (l == g.edges[e].first || l == g.edges[e].second) continue;
      RadicalSum dist = RadicalSum::sqrt_of(
          squared_distance(geom[e].center, out.instance.candidates[l]));
      if (!radical_less(penalty, dist))
        throw std::logic_error("penalty clearance violated");
    }
  }
  out.certificate.check();

  const RadicalSum yes_cost =
      (reps.mu * Rational(m) + RadicalSum(eps * (m - s))) *
      (Rational(1) + delta);
  const RadicalSum no_floor =
      reps.mu * Rational(m) + RadicalSum(eps * (m - s + 1));
  out.nu = rational_between(yes_cost, no_floor);
  out.k = k;
  out.certificate.nu = out.nu;
  out.instance.threshold = RadicalSum(out.nu);
  out.instance.meta["reduction"] = "pvc-3d-penalties";
  out.instance.meta["k"] = std::to_string(k);
  out.instance.meta["s"] = std::to_string(s);
  out.instance.meta["epsilon"] = meta_str(eps);
  out.instance.meta["delta"] = meta_str(delta);
  out.instance.meta["n_q"] = reps.n_q.get_str();
  out.instance.meta["nu"] = meta_str(out.nu);
  out.instance.validate();
  return out;
}

PerturbedCenter perturb_center(const Point& c, const Point& vi,
                               const Point& vj, const Point& zstar,
                               const std::vector<Point>& others,
                               const Rational& eps_lo,
                               const Rational& eps_hi) {
  const Rational r2 = squared_distance(c, vi);
  if (squared_distance(c, vj) != r2 || squared_distance(c, zstar) != r2)
    throw std::invalid_argument("input is not a common circumcenter");
  if (eps_lo < 0 || eps_hi < eps_lo)
    throw std::invalid_argument("invalid perturbation band");
  if (eps_lo == 0) return {c, r2, Rational(0), Rational(0)};

  // Direction: the component of (c - z*) inside the bisector hyperplane of
  // v_i and v_j, so equidistance to the pair is preserved exactly.
  std::vector<Rational> away = coord_sub(c, zstar);
  std::vector<Rational> b = coord_sub(vi, vj);
  const Rational bb = dot(b, b);
  const Rational proj = dot(away, b) / bb;
  std::vector<Rational> dir(away.size());
  bool nonzero = false;
  for (size_t d = 0; d < away.size(); ++d) {
    dir[d] = away[d] - proj * b[d];
    if (dir[d] != 0) nonzero = true;
  }
  if (!nonzero)
    throw std::runtime_error("degenerate perturbation direction");

  // Walking to c + lambda * dir, the squared distances are quadratics in
  // lambda: d(c', z*)^2 = r^2 + 2 A lambda + U lambda^2 (z* lies on the
  // base sphere) and r'^2 = r^2 + 2 B lambda + U lambda^2. The ratio tends
  // to 1 as lambda grows, so the reachable band is bounded; orient dir so
  // the ratio initially increases and aim at the vertex of
  // f(lambda) = d(c', z*)^2 - (1 + eps_lo)^2 r'^2.
  const Rational A0 = dot(dir, away);
  const Rational B0 = dot(dir, coord_sub(c, vi));
  if (A0 == B0)
    throw std::runtime_error("perturbation cannot change the distance ratio");
  const bool flip = A0 < B0;
  const Rational A = flip ? Rational(-A0) : A0;
  const Rational B = flip ? Rational(-B0) : B0;
  if (flip)
    for (Rational& d : dir) d = -d;
  const Rational U = dot(dir, dir);

  const Rational lo2 = (1 + eps_lo) * (1 + eps_lo);
  const Rational hi2 = (1 + eps_hi) * (1 + eps_hi);
  // f > 0 when d(c', z*) clears the lower edge of the band, g < 0 when it
  // stays under the upper edge.
  auto eval = [&](const Rational& lambda, Rational& f, Rational& g, Point& p,
                  Rational& rp2) {
    p = point_add_scaled(c, dir, lambda);
    rp2 = squared_distance(p, vi);
    const Rational dz2 = squared_distance(p, zstar);
    f = dz2 - lo2 * rp2;
    g = dz2 - hi2 * rp2;
  };

  const Rational vertex_num = A - lo2 * B;
  const Rational vertex_den = (lo2 - 1) * U;
  if (vertex_num <= 0)
    throw std::runtime_error("perturbation band out of reach");
  Rational lam_lo(0), lam_hi(vertex_num / vertex_den);
  Rational f, gg, rp2;
  Point p;
  eval(lam_hi, f, gg, p, rp2);
  if (f < 0) throw std::runtime_error("perturbation band out of reach");
  for (int iter = 0; iter < 512; ++iter) {
    if (f >= 0 && gg <= 0) break;
    const Rational mid = (lam_lo + lam_hi) / 2;
    eval(mid, f, gg, p, rp2);
    if (f < 0)
      lam_lo = mid;
    else
      lam_hi = mid;
  }
  if (f < 0 || gg > 0)
    throw std::runtime_error("perturbation bisection did not converge");
  if (squared_distance(p, vj) != rp2)
    throw std::logic_error("bisector equidistance lost");
  for (const Point& o : others)
    if (squared_distance(p, o) < lo2 * rp2)
      throw std::runtime_error("perturbation too large for other candidates");
  return {p, rp2, eps_lo, eps_hi};
}

ClusteringReduction reduce_pvc_4d(const Graph& g, int k, int s) {
  g.validate();
  const int n = g.n;
  const int m = static_cast<int>(g.edges.size());
  if (m == 0) throw std::invalid_argument("empty edge set");
  if (k < 0 || k > n) throw std::invalid_argument("k out of range");
  if (s < 0 || s > m) throw std::invalid_argument("s out of range");

  ClusteringReduction out;
  out.instance.dimension = 4;
  out.instance.power = 1;
  const Point zstar = moment_point(Rational(1), 4);  // (1,1,1,1)
  out.instance.candidates.push_back(zstar);
  auto vertex_t = [](int i) { return Rational(2 * (i + 1)); };
  for (int i = 0; i < n; ++i)
    out.instance.candidates.push_back(moment_point(vertex_t(i), 4));

  struct EdgeGeom {
    Point center;
    Rational r2;
  };
  std::vector<EdgeGeom> base;
  for (auto [u, v] : g.edges) {
    std::array<Point, 5> pts{zstar, moment_point(vertex_t(u), 4),
                             moment_point(vertex_t(u) + 1, 4),
                             moment_point(vertex_t(v), 4),
                             moment_point(vertex_t(v) + 1, 4)};
    Sphere sph = circumsphere(pts);
    for (int l = 0; l < n; ++l) {
      if (l == u || l == v) continue;
      if (sphere_side(sph, out.instance.candidates[l + 1]) !=
          SphereSide::Outside)
        throw std::logic_error("non-adjacent candidate not outside sphere");
    }
    base.push_back({sph.center, sph.squared_radius});
  }

  // Push each center slightly away from z* so z* serves uncovered edges at
  // a (1+eps)-ish markup; shrink eps until every perturbation fits.
  Rational eps(1, 2);
  Rational eps_hi;
  std::vector<PerturbedCenter> pert(m);
  for (int attempt = 0;; ++attempt) {
    if (attempt > 64)
      throw std::runtime_error("no feasible perturbation magnitude");
    eps_hi = eps * (Rational(1) + Rational(1, 4 * m));
    bool ok = true;
    for (int e = 0; e < m; ++e) {
      auto [u, v] = g.edges[e];
      std::vector<Point> others;
      for (int l = 0; l < n; ++l)
        if (l != u && l != v) others.push_back(out.instance.candidates[l + 1]);
      try {
        pert[e] = perturb_center(base[e].center, out.instance.candidates[u + 1],
                                 out.instance.candidates[v + 1], zstar, others,
                                 eps, eps_hi);
      } catch (const std::runtime_error&) {
        ok = false;
        break;
      }
    }
    if (ok) break;
    eps /= 2;
  }

  const Rational delta = std::min(Rational(Rational(1) / (2 * m)),
                                  Rational(eps / (2 * m * (1 + eps_hi))));
  std::vector<Rational> radii;
  for (const PerturbedCenter& p : pert) radii.push_back(p.squared_radius);
  ReplicationCounts reps = replication_counts(radii, delta);

  // Heavy block at z*: opening anything else in its place costs more than
  // the whole threshold.
  Rational r_q2(0);
  for (const Rational& r2 : radii) r_q2 = std::max(r_q2, r2);
  const Integer n_zstar =
      ceil_sqrt(Rational(m) * m * Rational(reps.n_q) * reps.n_q * r_q2);
  out.instance.clients.push_back({zstar, n_zstar, std::nullopt});

  out.certificate.epsilon = eps;
  out.certificate.delta = delta;
  out.certificate.n_q = reps.n_q;
  out.certificate.r_q_squared = r_q2;
  out.certificate.mu = reps.mu;
  out.certificate.k = k + 1;
  out.certificate.s = s;
  for (int e = 0; e < m; ++e) {
    out.instance.clients.push_back(
        {pert[e].center, reps.counts[e], std::nullopt});
    out.certificate.edges.push_back({g.edges[e].first, g.edges[e].second,
                                     pert[e].center, pert[e].squared_radius,
                                     reps.counts[e], std::nullopt});
  }
  out.certificate.check();

  const RadicalSum yes_cost =
      reps.mu *
      ((Rational(1) + delta) * (Rational(s) + Rational(m - s) * (1 + eps_hi)));
  const RadicalSum no_floor =
      reps.mu * (Rational(m) + Rational(m - s + 1) * eps);
  out.nu = rational_between(yes_cost, no_floor);
  // z*-forcing: the z* block alone exceeds nu when served by any vertex
  // candidate (all at distance >= 3 from z*).
  Rational dmin2;
  bool first = true;
  for (int i = 0; i < n; ++i) {
    Rational d2 = squared_distance(zstar, out.instance.candidates[i + 1]);
    if (first || d2 < dmin2) {
      dmin2 = d2;
      first = false;
    }
  }
  if (!radical_less(RadicalSum(out.nu),
                    RadicalSum::sqrt_of(dmin2, Rational(n_zstar))))
    throw std::logic_error("z* block too light to force z* open");

  out.k = k + 1;
  out.certificate.nu = out.nu;
  out.instance.threshold = RadicalSum(out.nu);
  out.instance.meta["reduction"] = "pvc-4d";
  out.instance.meta["k"] = std::to_string(k);
  out.instance.meta["s"] = std::to_string(s);
  out.instance.meta["epsilon"] = meta_str(eps);
  out.instance.meta["epsilon_hi"] = meta_str(eps_hi);
  out.instance.meta["delta"] = meta_str(delta);
  out.instance.meta["n_q"] = reps.n_q.get_str();
  out.instance.meta["n_zstar"] = n_zstar.get_str();
  out.instance.meta["nu"] = meta_str(out.nu);
  out.instance.validate();
  return out;
}

GridReduction reduce_gridtiling_2d(const GridTilingInstance& gt,
                                   std::size_t client_cap) {
  gt.validate();
  const int n = gt.n;
  const int k = gt.k;
  GridReduction out;
  if (n == 1) {
    // Every set is {(1,1)}; the source instance is trivially a yes-instance.
    out.instance.dimension = 2;
    out.instance.power = 1;
    out.instance.candidates.push_back(Point(Rational(0), Rational(0)));
    out.instance.clients.push_back(
        {Point(Rational(0), Rational(0)), Integer(1), RadicalSum(Rational(1))});
    out.k = 1;  // one candidate suffices; the source is always satisfiable
    out.nu = Rational(1);
    out.instance.threshold = RadicalSum(out.nu);
    out.instance.meta["reduction"] = "gridtiling-2d";
    out.instance.meta["trivial"] = "yes";
    return out;
  }

  const Rational eps(1, n * n * n);
  const long n3 = static_cast<long>(n) * n * n;
  const long M = 2L * k * n3 + n;  // grid indices 0..M at spacing eps
  const std::size_t side = static_cast<std::size_t>(M) + 1;
  if (side * side > client_cap) {
    throw std::length_error(
        "grid tiling instance needs " + std::to_string(side * side) +
        " clients, above the cap of " + std::to_string(client_cap));
  }

  out.instance.dimension = 2;
  out.instance.power = 1;
  for (long b = 0; b <= M; ++b)
    for (long a = 0; a <= M; ++a)
      out.instance.clients.push_back({Point(Rational(a) * eps,
                                            Rational(b) * eps),
                                      Integer(1), RadicalSum(Rational(1))});

  // Candidates sit half a grid step off the client lattice so that any two
  // disks closer than 2 strictly cover a common client; disks at distance
  // exactly 2 (tiling-compatible neighbors) never do.
  const Rational half = eps / 2;
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= k; ++j)
      for (auto [u, v] : gt.sets[i - 1][j - 1])
        out.instance.candidates.push_back(
            Point(Rational(2 * i - 1) + eps * (u - 1) + half,
                  Rational(2 * j - 1) + eps * (v - 1) + half));

  const Rational span = Rational(M) * eps;
  for (const Point& c : out.instance.candidates)
    if (c[0] - 1 < 0 || c[1] - 1 < 0 || c[0] + 1 > span || c[1] + 1 > span)
      throw std::logic_error("unit disk leaves the client square");

  // Per-disk saving: sum of (1 - dist) over clients strictly inside the
  // unit disk. Identical for every candidate by lattice translation
  // invariance; computed for two candidates as a cross-check.
  auto disk_saving = [&](const Point& c) {
    std::vector<RadicalSum> parts;
    long a_lo = mpz_get_si(rational_ceil((c[0] - 1) / eps).get_mpz_t());
    long a_hi = mpz_get_si(rational_floor((c[0] + 1) / eps).get_mpz_t());
    long b_lo = mpz_get_si(rational_ceil((c[1] - 1) / eps).get_mpz_t());
    long b_hi = mpz_get_si(rational_floor((c[1] + 1) / eps).get_mpz_t());
    for (long b = b_lo; b <= b_hi; ++b)
      for (long a = a_lo; a <= a_hi; ++a) {
        Rational dx = Rational(a) * eps - c[0];
        Rational dy = Rational(b) * eps - c[1];
        Rational d2 = dx * dx + dy * dy;
        if (d2 < 1) {
          parts.push_back(RadicalSum(Rational(1)) +
                          RadicalSum::sqrt_of(d2, Rational(-1)));
        }
      }
    return RadicalSum::sum(parts);
  };
  const RadicalSum G = disk_saving(out.instance.candidates.front());
  if (!(G == disk_saving(out.instance.candidates.back())))
    throw std::logic_error("disk saving not translation invariant");

  const Rational B(static_cast<long>(side) * static_cast<long>(side));
  const RadicalSum disjoint_cost =
      RadicalSum(B) - G * Rational(static_cast<long>(k) * k);

  // Minimum extra cost forced by any strictly overlapping pair of disks:
  // clients inside both disks save only the better of the two.
  struct PairLens {
    size_t ca, cb;
    double approx;
  };
  std::vector<PairLens> lenses;
  const auto& cands = out.instance.candidates;
  for (size_t ia = 0; ia < cands.size(); ++ia)
    for (size_t ib = ia + 1; ib < cands.size(); ++ib) {
      Rational cd2 = squared_distance(cands[ia], cands[ib]);
      if (cd2 >= 4) continue;
      long a_lo = mpz_get_si(
          rational_ceil((std::max(cands[ia][0], cands[ib][0]) - 1) / eps)
              .get_mpz_t());
      long a_hi = mpz_get_si(
          rational_floor((std::min(cands[ia][0], cands[ib][0]) + 1) / eps)
              .get_mpz_t());
      long b_lo = mpz_get_si(
          rational_ceil((std::max(cands[ia][1], cands[ib][1]) - 1) / eps)
              .get_mpz_t());
      long b_hi = mpz_get_si(
          rational_floor((std::min(cands[ia][1], cands[ib][1]) + 1) / eps)
              .get_mpz_t());
      double acc = 0;
      bool any = false;
      for (long b = b_lo; b <= b_hi; ++b)
        for (long a = a_lo; a <= a_hi; ++a) {
          Rational dxa = Rational(a) * eps - cands[ia][0];
          Rational dya = Rational(b) * eps - cands[ia][1];
          Rational dxb = Rational(a) * eps - cands[ib][0];
          Rational dyb = Rational(b) * eps - cands[ib][1];
          Rational da2 = dxa * dxa + dya * dya;
          Rational db2 = dxb * dxb + dyb * dyb;
          if (da2 < 1 && db2 < 1) {
            any = true;
            acc += 1.0 - std::sqrt(std::max(da2.get_d(), db2.get_d()));
          }
        }
      if (any) lenses.push_back({ia, ib, acc});
    }

  RadicalSum v_min = G;
  if (!lenses.empty()) {
    double best = lenses.front().approx;
    for (const PairLens& l : lenses) best = std::min(best, l.approx);
    const double margin = 1e-6 * (1 + best);
    bool have = false;
    for (const PairLens& l : lenses) {
      if (l.approx > best + margin) continue;
      // Exact pair penalty for the shortlisted candidates.
      std::vector<RadicalSum> parts;
      long a_lo = mpz_get_si(
          rational_ceil((std::max(cands[l.ca][0], cands[l.cb][0]) - 1) / eps)
              .get_mpz_t());
      long a_hi = mpz_get_si(
          rational_floor((std::min(cands[l.ca][0], cands[l.cb][0]) + 1) / eps)
              .get_mpz_t());
      long b_lo = mpz_get_si(
          rational_ceil((std::max(cands[l.ca][1], cands[l.cb][1]) - 1) / eps)
              .get_mpz_t());
      long b_hi = mpz_get_si(
          rational_floor((std::min(cands[l.ca][1], cands[l.cb][1]) + 1) / eps)
              .get_mpz_t());
      for (long b = b_lo; b <= b_hi; ++b)
        for (long a = a_lo; a <= a_hi; ++a) {
          Rational dxa = Rational(a) * eps - cands[l.ca][0];
          Rational dya = Rational(b) * eps - cands[l.ca][1];
          Rational dxb = Rational(a) * eps - cands[l.cb][0];
          Rational dyb = Rational(b) * eps - cands[l.cb][1];
          Rational da2 = dxa * dxa + dya * dya;
          Rational db2 = dxb * dxb + dyb * dyb;
          if (da2 < 1 && db2 < 1) {
            parts.push_back(RadicalSum(Rational(1)) +
                            RadicalSum::sqrt_of(std::max(da2, db2),
                                                Rational(-1)));
          }
        }
      RadicalSum v = RadicalSum::sum(parts);
      if (!have || radical_less(v, v_min)) {
        v_min = v;
        have = true;
      }
    }
  }

  out.nu = rational_between(disjoint_cost, disjoint_cost + v_min);
  out.k = k * k;
  out.instance.threshold = RadicalSum(out.nu);
  out.instance.meta["reduction"] = "gridtiling-2d";
  out.instance.meta["n"] = std::to_string(n);
  out.instance.meta["k"] = std::to_string(k);
  out.instance.meta["epsilon"] = meta_str(eps);
  out.instance.meta["nu"] = meta_str(out.nu);
  out.instance.meta["disjoint_cost_approx"] =
      std::to_string(disjoint_cost.to_double());
  out.instance.meta["overlap_floor_approx"] =
      std::to_string((disjoint_cost + v_min).to_double());
  out.instance.validate();
  return out;
}

}  // namespace exclust

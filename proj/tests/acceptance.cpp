// Acceptance gate: one pass/fail line per headline criterion, exit code 0
// only if every criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "exclust/oracles.hpp"
#include "exclust/solver.hpp"

using namespace exclust;

namespace {

int failures = 0;

void result(const std::string& name, bool pass, const std::string& detail) {
  std::cout << (pass ? "[PASS] " : "[FAIL] ") << name << ": " << detail
            << std::endl;
  if (!pass) ++failures;
}

template <typename F>
void criterion(const std::string& name, F&& body) {
  const auto start = std::chrono::steady_clock::now();
  try {
    std::ostringstream detail;
    const bool pass = body(detail);
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    result(name, pass, detail.str() + " (" + std::to_string(secs) + "s)");
  } catch (const std::exception& e) {
    result(name, false, std::string("exception: ") + e.what());
  }
}

Graph k3() {
  Graph g;
  g.n = 3;
  g.edges = {{0, 1}, {0, 2}, {1, 2}};
  return g;
}

}  // namespace

int main() {
  criterion("planar-oracle-equivalence", [](std::ostringstream& detail) {
    VerificationReport report = verify_oracle_equivalence(200, 12345);
    detail << report.cases.size() << " cases, " << report.mismatches()
           << " mismatches, " << report.violations
           << " curve-length violations";
    return report.passed();
  });

  criterion("descartes-suites", [](std::ostringstream& detail) {
    VerificationReport d3 = verify_descartes(3, 100, 10, 7);
    VerificationReport d4 = verify_descartes(4, 100, 10, 7);
    detail << "dim3 " << d3.samples_tested << " samples / " << d3.violations
           << " violations; dim4 " << d4.samples_tested << " samples / "
           << d4.violations << " violations";
    return d3.passed() && d4.passed();
  });

  criterion("metric-reduction", [](std::ostringstream& detail) {
    ReductionCaseSpec spec;
    spec.exhaustive_max_vertices = 5;
    spec.max_k = 2;
    VerificationReport report = verify_reduction(ReductionKind::Metric, spec);
    MetricReduction tri = reduce_pvc_metric(k3(), 1, 2);
    SolveReport opt = brute_force_solve(tri.instance, 1);
    const bool identity =
        tri.nu == Rational(5) && opt.cost.rational_value() == Rational(5);
    detail << report.cases.size() << " cases, " << report.mismatches()
           << " mismatches; triangle nu=5/cost=5 "
           << (identity ? "holds" : "VIOLATED");
    return report.passed() && identity;
  });

  criterion("pvc3d-reduction", [](std::ostringstream& detail) {
    ReductionCaseSpec spec;
    spec.exhaustive_max_vertices = 5;
    spec.max_k = 3;
    spec.random_cases = 50;
    spec.random_vertices = 6;
    spec.seed = 2;
    VerificationReport report = verify_reduction(ReductionKind::Pvc3d, spec);
    detail << report.cases.size() << " cases, " << report.mismatches()
           << " mismatches, " << report.violations
           << " certificate violations";
    return report.passed();
  });

  criterion("pvc4d-reduction", [](std::ostringstream& detail) {
    ReductionCaseSpec spec;
    spec.exhaustive_max_vertices = 5;
    spec.max_k = 2;
    VerificationReport report = verify_reduction(ReductionKind::Pvc4d, spec);
    detail << report.cases.size() << " cases, " << report.mismatches()
           << " mismatches, " << report.violations
           << " certificate/band/forced-center violations";
    return report.passed();
  });

  criterion("gridtiling-reduction", [](std::ostringstream& detail) {
    ReductionCaseSpec spec;
    spec.grid_exhaustive = true;  // all 256 singleton n=2, k=2 instances
    spec.random_cases = 20;
    spec.grid_n = 3;
    spec.grid_k = 2;
    spec.seed = 3;
    VerificationReport report =
        verify_reduction(ReductionKind::GridTiling, spec);
    detail << report.cases.size() << " cases, " << report.mismatches()
           << " mismatches (threshold separation certified exactly during "
              "generation)";
    return report.passed();
  });

  criterion("exactness-regressions", [](std::ostringstream& detail) {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<long> num(-100, 100);
    std::uniform_int_distribution<long> den(1, 40);

    // 1000 circumspheres with exactly zero equidistance residual.
    long sphere_bad = 0;
    long built = 0;
    while (built < 1000) {
      const int dim = 2 + static_cast<int>(rng() % 3);
      std::vector<Point> pts;
      for (int i = 0; i <= dim; ++i) {
        std::vector<Rational> coords;
        for (int d = 0; d < dim; ++d) {
          Rational v(num(rng), den(rng));
          v.canonicalize();  // mpq_class(a, b) does not reduce a/b itself
          coords.push_back(std::move(v));
        }
        pts.push_back(Point(std::move(coords)));
      }
      Sphere sph;
      try {
        sph = circumsphere(pts);
      } catch (const std::exception&) {
        continue;  // affinely dependent draw
      }
      ++built;
      for (const Point& p : pts)
        if (squared_distance(sph.center, p) != sph.squared_radius) ++sphere_bad;
    }

    // 10^4 radical comparisons cross-checked against 256-bit enclosures:
    // order must match any disjoint enclosure and Equal must mean
    // symbolically zero difference.
    long cmp_bad = 0;
    std::uniform_int_distribution<long> radicand(1, 2000);
    auto random_sum = [&]() {
      RadicalSum v;
      const int terms = 1 + static_cast<int>(rng() % 3);
      for (int t = 0; t < terms; ++t) {
        Rational coeff(num(rng), den(rng));
        coeff.canonicalize();
        v += RadicalSum::sqrt_of(Rational(radicand(rng)), coeff);
      }
      return v;
    };
    for (int trial = 0; trial < 10000; ++trial) {
      RadicalSum a = random_sum();
      RadicalSum b = (trial % 10 == 0) ? a : random_sum();
      const Ordering ord = compare(a, b);
      Rational alo, ahi, blo, bhi;
      a.enclose(alo, ahi, 256);
      b.enclose(blo, bhi, 256);
      if (ahi < blo) {
        if (ord != Ordering::Less) ++cmp_bad;
      } else if (alo > bhi) {
        if (ord != Ordering::Greater) ++cmp_bad;
      }
      if (ord == Ordering::Equal && !(a - b).is_zero()) ++cmp_bad;
    }
    detail << "1000 circumspheres / " << sphere_bad
           << " nonzero residuals; 10000 comparisons / " << cmp_bad
           << " disagreements with 256-bit evaluation";
    return sphere_bad == 0 && cmp_bad == 0;
  });

  criterion("scaling-smoke-test", [](std::ostringstream& detail) {
    bool bound_ok = true;
    std::vector<std::uint64_t> curves;
    for (int k = 3; k <= 5; ++k) {
      ClusteringInstance inst =
          random_planar_instance(9000 + static_cast<std::uint64_t>(k), 7, 10);
      auto [generic, perturbed] = perturb_if_degenerate(inst, 9000);
      (void)perturbed;
      const int kk = std::min<int>(k, generic.candidates.size());
      SolveReport report = exact_planar_solve(generic, kk);
      const int bound = static_cast<int>(std::floor(std::sqrt(4.5 * kk)));
      if (report.max_curve_length > bound) bound_ok = false;
      curves.push_back(report.curves_enumerated);
    }
    detail << "curves enumerated at k=3..5:";
    for (std::uint64_t c : curves) detail << ' ' << c;
    detail << (bound_ok ? "; length bound floor(sqrt(4.5k)) respected"
                        : "; LENGTH BOUND EXCEEDED");
    return bound_ok;
  });

  std::cout << (failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED")
            << " (" << failures << " failing criteria)" << std::endl;
  return failures == 0 ? 0 : 1;
}

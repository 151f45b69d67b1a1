// Command-line front end: generate reduction instances, solve instances
// exactly, run verification suites, and emit benchmark tables.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error,
// 3 indeterminate-precision abort.

#include <chrono>
#include <cmath>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "exclust/io.hpp"
#include "exclust/oracles.hpp"
#include "exclust/solver.hpp"
#include "json.hpp"

namespace {

using namespace exclust;
using Json = nlohmann::ordered_json;

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty())
    std::cout << content;
  else
    write_file(out_path, content);
}

Json radical_json(const RadicalSum& v) {
  Json arr = Json::array();
  for (const auto& t : v.terms())
    arr.push_back(Json::array({rational_to_string(t.coeff), t.radicand.get_str()}));
  return arr;
}

std::string solve_report_json(const SolveReport& report,
                              const std::string& solver) {
  Json doc;
  doc["solver"] = solver;
  doc["cost"] = radical_json(report.cost);
  doc["cost_approx"] = report.cost.to_double();
  doc["open"] = Json::array();
  for (int c : report.solution.open) doc["open"].push_back(c);
  doc["nodes_explored"] = report.nodes_explored;
  doc["curves_enumerated"] = report.curves_enumerated;
  doc["max_curve_length"] = report.max_curve_length;
  return doc.dump(2) + "\n";
}

int run(int argc, char** argv) {
  CLI::App app{"Exact geometric clustering workbench"};
  app.require_subcommand(1);

  unsigned precision_bits = 4096;
  app.add_option("--precision-bits", precision_bits,
                 "Interval-refinement precision cap in bits")
      ->capture_default_str();
  int jobs = 1;
  app.add_option("--jobs", jobs, "Worker fan-out (currently serial)")
      ->capture_default_str();

  // ---- gen ----------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "Generate a reduction instance");
  gen->require_subcommand(1);
  std::string graph_path, grid_path, out_path;
  int gen_k = 1, gen_s = 0;
  std::size_t client_cap = 200000;
  auto add_graph_gen = [&](const std::string& name, const std::string& help) {
    auto* cmd = gen->add_subcommand(name, help);
    cmd->add_option("--graph", graph_path, "Edge-list file (header \"n m\")")
        ->required();
    cmd->add_option("--k", gen_k, "Vertex budget of the source problem")
        ->required();
    cmd->add_option("--s", gen_s, "Edge coverage target")->required();
    cmd->add_option("--out", out_path, "Output path (default stdout)");
    return cmd;
  };
  auto* gen_metric =
      add_graph_gen("metric", "Partial Vertex Cover -> finite metric k-median");
  auto* gen_3d = add_graph_gen(
      "pvc3d", "Partial Vertex Cover -> 3D k-median with penalties");
  auto* gen_4d =
      add_graph_gen("pvc4d", "Partial Vertex Cover -> 4D k-median");
  auto* gen_grid =
      gen->add_subcommand("gridtiling", "Grid Tiling -> 2D k-median with penalties");
  gen_grid->add_option("--grid", grid_path, "Grid tiling JSON file")->required();
  gen_grid->add_option("--client-cap", client_cap, "Client count limit")
      ->capture_default_str();
  gen_grid->add_option("--out", out_path, "Output path (default stdout)");

  // ---- solve --------------------------------------------------------
  auto* solve = app.add_subcommand("solve", "Solve an instance exactly");
  solve->require_subcommand(1);
  std::string inst_path;
  int solve_k = 1;
  int base_k = 2;
  auto add_solver = [&](const std::string& name, const std::string& help) {
    auto* cmd = solve->add_subcommand(name, help);
    cmd->add_option("--inst", inst_path, "Instance JSON file")->required();
    cmd->add_option("--k", solve_k, "Number of centers to open")->required();
    cmd->add_option("--out", out_path, "Output path (default stdout)");
    return cmd;
  };
  auto* solve_brute = add_solver("brute", "Exhaustive subset search");
  auto* solve_planar =
      add_solver("planar", "2D separating-curve recursion");
  solve_planar->add_option("--base-k", base_k, "Brute-force base-case budget")
      ->capture_default_str();

  // ---- verify -------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->require_subcommand(1);
  int dim = 4, trials = 100, samples = 10;
  std::uint64_t seed = 1;
  auto* v_desc = verify->add_subcommand(
      "descartes", "Moment-curve sphere intersection pattern");
  v_desc->add_option("--dim", dim, "3 or 4")->capture_default_str();
  v_desc->add_option("--trials", trials, "Random sphere count")
      ->capture_default_str();
  v_desc->add_option("--samples", samples, "Samples per open interval")
      ->capture_default_str();
  v_desc->add_option("--seed", seed, "RNG seed")->capture_default_str();
  v_desc->add_option("--out", out_path, "Output path (default stdout)");

  std::string kind_name = "metric";
  int max_vertices = 5, max_k = 2, random_cases = 0, random_vertices = 6;
  int grid_n = 3, grid_k = 2;
  bool grid_exhaustive = false;
  auto* v_red = verify->add_subcommand(
      "reduction", "Source oracle vs decide() on the reduced instance");
  v_red->add_option("--kind", kind_name, "metric|pvc3d|pvc4d|gridtiling")
      ->required();
  v_red->add_option("--max-vertices", max_vertices,
                    "Exhaustive graph size limit")
      ->capture_default_str();
  v_red->add_option("--max-k", max_k, "Source budget limit")
      ->capture_default_str();
  v_red->add_option("--random-cases", random_cases, "Extra random cases")
      ->capture_default_str();
  v_red->add_option("--random-vertices", random_vertices,
                    "Vertices of random graphs")
      ->capture_default_str();
  v_red->add_flag("--grid-exhaustive", grid_exhaustive,
                  "All singleton n=2 k=2 grid tiling instances");
  v_red->add_option("--grid-n", grid_n, "n of random grid cases")
      ->capture_default_str();
  v_red->add_option("--grid-k", grid_k, "k of random grid cases")
      ->capture_default_str();
  v_red->add_option("--seed", seed, "RNG seed")->capture_default_str();
  v_red->add_option("--out", out_path, "Output path (default stdout)");

  int eq_cases = 200;
  auto* v_eq = verify->add_subcommand(
      "oracle-equivalence", "Planar solver vs brute force on random 2D cases");
  v_eq->add_option("--cases", eq_cases, "Number of random instances")
      ->capture_default_str();
  v_eq->add_option("--seed", seed, "RNG seed")->capture_default_str();
  v_eq->add_option("--out", out_path, "Output path (default stdout)");

  // ---- bench --------------------------------------------------------
  auto* bench = app.add_subcommand(
      "bench", "CSV scaling table for the planar solver");
  int bench_min_k = 3, bench_max_k = 5, bench_cands = 7, bench_clients = 10;
  bench->add_option("--min-k", bench_min_k, "Smallest k")->capture_default_str();
  bench->add_option("--max-k", bench_max_k, "Largest k")->capture_default_str();
  bench->add_option("--candidates", bench_cands, "Candidate count")
      ->capture_default_str();
  bench->add_option("--clients", bench_clients, "Client count")
      ->capture_default_str();
  bench->add_option("--seed", seed, "RNG seed")->capture_default_str();
  bench->add_option("--base-k", base_k, "Brute-force base-case budget")
      ->capture_default_str();
  bench->add_option("--out", out_path, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help or the error message
    return code == 0 ? 0 : 2;
  }
  radical_options().max_precision_bits = precision_bits;
  (void)jobs;

  if (gen_metric->parsed()) {
    MetricReduction red = reduce_pvc_metric(parse_edge_list(read_file(graph_path)),
                                            gen_k, gen_s);
    emit(out_path, serialize_metric_instance(red.instance));
    return 0;
  }
  if (gen_3d->parsed() || gen_4d->parsed()) {
    Graph g = parse_edge_list(read_file(graph_path));
    ClusteringReduction red = gen_3d->parsed()
                                  ? reduce_pvc_3d_penalties(g, gen_k, gen_s)
                                  : reduce_pvc_4d(g, gen_k, gen_s);
    emit(out_path, serialize_instance(red.instance));
    return 0;
  }
  if (gen_grid->parsed()) {
    GridReduction red = reduce_gridtiling_2d(
        parse_gridtiling(read_file(grid_path)), client_cap);
    emit(out_path, serialize_instance(red.instance));
    return 0;
  }

  if (solve_brute->parsed() || solve_planar->parsed()) {
    const std::string text = read_file(inst_path);
    if (is_metric_instance_text(text)) {
      if (solve_planar->parsed())
        throw CLI::ValidationError("--inst",
                                   "planar solver needs a geometric instance");
      MetricInstance inst = parse_metric_instance(text);
      SolveReport report = brute_force_solve(inst, solve_k);
      emit(out_path, solve_report_json(report, "brute"));
      return 0;
    }
    ClusteringInstance inst = parse_instance(text);
    SolveReport report;
    std::string solver;
    if (solve_planar->parsed()) {
      PlanarOptions opts;
      opts.base_case_k = base_k;
      report = exact_planar_solve(inst, solve_k, {}, opts);
      solver = "planar";
    } else {
      BruteOptions opts;
      opts.double_filter =
          inst.candidates.size() * inst.clients.size() > 50000;
      report = brute_force_solve(inst, solve_k, {}, opts);
      solver = "brute";
    }
    emit(out_path, solve_report_json(report, solver));
    return 0;
  }

  if (v_desc->parsed()) {
    VerificationReport report = verify_descartes(dim, trials, samples, seed);
    emit(out_path, report.to_json());
    return report.passed() ? 0 : 1;
  }
  if (v_red->parsed()) {
    ReductionKind kind;
    if (kind_name == "metric")
      kind = ReductionKind::Metric;
    else if (kind_name == "pvc3d")
      kind = ReductionKind::Pvc3d;
    else if (kind_name == "pvc4d")
      kind = ReductionKind::Pvc4d;
    else if (kind_name == "gridtiling")
      kind = ReductionKind::GridTiling;
    else
      throw CLI::ValidationError("--kind", "unknown reduction kind");
    ReductionCaseSpec spec;
    spec.exhaustive_max_vertices = max_vertices;
    spec.max_k = max_k;
    spec.random_cases = random_cases;
    spec.random_vertices = random_vertices;
    spec.grid_exhaustive = grid_exhaustive;
    spec.grid_n = grid_n;
    spec.grid_k = grid_k;
    spec.seed = seed;
    VerificationReport report = verify_reduction(kind, spec);
    emit(out_path, report.to_json());
    return report.passed() ? 0 : 1;
  }
  if (v_eq->parsed()) {
    VerificationReport report = verify_oracle_equivalence(eq_cases, seed);
    emit(out_path, report.to_json());
    return report.passed() ? 0 : 1;
  }

  if (bench->parsed()) {
    std::ostringstream csv;
    csv << "candidates,clients,k,solver,nodes,curves,max_curve_length,"
           "length_bound,wall_time_seconds\n";
    bool bound_ok = true;
    for (int k = bench_min_k; k <= bench_max_k; ++k) {
      ClusteringInstance inst =
          random_planar_instance(seed + static_cast<std::uint64_t>(k),
                                 bench_cands, bench_clients);
      auto [generic, perturbed] = perturb_if_degenerate(inst, seed);
      (void)perturbed;
      const int kk = std::min<int>(k, generic.candidates.size());
      PlanarOptions opts;
      opts.base_case_k = base_k;
      const auto start = std::chrono::steady_clock::now();
      SolveReport report = exact_planar_solve(generic, kk, {}, opts);
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
              .count();
      const int bound = static_cast<int>(std::floor(std::sqrt(4.5 * kk)));
      if (report.max_curve_length > bound) bound_ok = false;
      csv << generic.candidates.size() << ',' << generic.clients.size() << ','
          << kk << ",planar," << report.nodes_explored << ','
          << report.curves_enumerated << ',' << report.max_curve_length << ','
          << bound << ',' << secs << '\n';
    }
    emit(out_path, csv.str());
    return bound_ok ? 0 : 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const IndeterminateComparison& e) {
    std::cerr << "indeterminate comparison: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

// kssp command line: gen, solve, bench, report.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <set>

#include "kssp/bench.hpp"
#include "kssp/engine.hpp"
#include "kssp/graph.hpp"
#include "kssp/oracles.hpp"

namespace {

// Process exit codes.
constexpr int kExitComplete = 0;
constexpr int kExitError = 1;
constexpr int kExitExhausted = 2;
constexpr int kExitAborted = 3;
constexpr int kExitMismatch = 4;

constexpr std::size_t kCheckNodeLimit = 16;

struct SolveArgs {
  std::string graph;
  std::uint64_t source = 0;
  std::uint64_t target = 0;
  std::size_t k = 1;
  std::string algo = "new";
  bool no_prune_max = false;
  bool no_prune_min = false;
  bool no_potentials = false;
  bool check = false;
  double timeout_s = 0;
  std::size_t label_budget = 0;
};

int exit_code(kssp::SolveStatus s) {
  switch (s) {
    case kssp::SolveStatus::complete: return kExitComplete;
    case kssp::SolveStatus::exhausted_early: return kExitExhausted;
    case kssp::SolveStatus::aborted: return kExitAborted;
  }
  return kExitError;
}

bool verify_paths(const kssp::Graph& g, const kssp::SolveReport& r, std::ostream& err) {
  std::set<std::vector<kssp::ArcId>> seen;
  for (std::size_t i = 0; i < r.paths.size(); ++i) {
    const auto& p = r.paths[i].path;
    if (!kssp::is_simple(g, p)) {
      err << "path " << i + 1 << " is not simple\n";
      return false;
    }
    if (!seen.emplace(p.arcs().begin(), p.arcs().end()).second) {
      err << "path " << i + 1 << " is a duplicate\n";
      return false;
    }
    if (i > 0 && p.cost() < r.paths[i - 1].path.cost()) {
      err << "path " << i + 1 << " breaks cost order\n";
      return false;
    }
  }
  return true;
}

int run_solve(const SolveArgs& a) {
  const kssp::Graph g = kssp::load_dimacs_file(a.graph);
  if (a.source == 0 || a.source > g.node_count() || a.target == 0 || a.target > g.node_count()) {
    std::cerr << "error: --source/--target must be node ids in [1, " << g.node_count() << "]\n";
    return kExitError;
  }
  const auto s = static_cast<kssp::NodeId>(a.source - 1);
  const auto t = static_cast<kssp::NodeId>(a.target - 1);
  const kssp::Algorithm algo = kssp::parse_algorithm(a.algo);

  kssp::SolveOptions options;
  options.prune_queue_max = !a.no_prune_max;
  options.prune_queue_min = !a.no_prune_min;
  options.potentials = !a.no_potentials;
  options.label_budget = a.label_budget;
  if (a.timeout_s > 0) options.timeout = std::chrono::duration<double>(a.timeout_s);

  kssp::SolveReport report;
  if (algo == kssp::Algorithm::yen) {
    report = kssp::yen(g, s, t, a.k, options);
  } else if (algo == kssp::Algorithm::brute) {
    auto all = kssp::enumerate_paths(g, s, t, 10'000'000);
    report.status =
        all.size() >= a.k ? kssp::SolveStatus::complete : kssp::SolveStatus::exhausted_early;
    for (std::size_t i = 0; i < all.size() && i < a.k; ++i) {
      report.paths.push_back({});
      report.paths.back().path = std::move(all[i]);
    }
  } else {
    report = kssp::solve_kssp(g, s, t, a.k, options);
  }
  for (const auto& r : report.paths) kssp::write_path_line(std::cout, g, r.path);

  int code = exit_code(report.status);
  if (!verify_paths(g, report, std::cerr)) code = kExitMismatch;

  if (algo == kssp::Algorithm::both && report.status != kssp::SolveStatus::aborted) {
    const auto other = kssp::yen(g, s, t, a.k, options);
    if (other.status != kssp::SolveStatus::aborted && other.costs() != report.costs()) {
      std::cerr << "error: cost sequences of new and yen differ\n";
      code = kExitMismatch;
    }
  }
  if (a.check) {
    if (g.node_count() > kCheckNodeLimit) {
      std::cerr << "warning: --check skipped, graph has more than " << kCheckNodeLimit
                << " nodes\n";
    } else if (report.status != kssp::SolveStatus::aborted) {
      auto all = kssp::enumerate_paths(g, s, t, 10'000'000);
      if (all.size() > a.k) all.resize(a.k);
      std::vector<kssp::Cost> expected;
      for (const auto& p : all) expected.push_back(p.cost());
      if (expected != report.costs()) {
        std::cerr << "error: brute-force check failed\n";
        code = kExitMismatch;
      }
    }
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k shortest simple paths solver and benchmark harness"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate seeded grid instances and an s-t pair manifest");
  std::string gen_grid = "100x100";
  std::size_t gen_costs = 1, gen_pairs = 1;
  std::uint64_t gen_seed = 1;
  std::string gen_out = ".";
  double gen_low = 0, gen_high = 10;
  gen->add_option("--grid", gen_grid, "Grid size RxC")->required();
  gen->add_option("--costs", gen_costs, "Number of cost functions (one .gr file each)");
  gen->add_option("--pairs", gen_pairs, "Number of s-t pairs");
  gen->add_option("--seed", gen_seed, "Seed");
  gen->add_option("--out", gen_out, "Output directory");
  gen->add_option("--cost-low", gen_low, "Lowest arc cost");
  gen->add_option("--cost-high", gen_high, "Highest arc cost");

  // solve
  auto* solve = app.add_subcommand("solve", "Print the k shortest simple paths");
  SolveArgs sa;
  solve->add_option("--graph", sa.graph, "DIMACS .gr file")->required()->check(CLI::ExistingFile);
  solve->add_option("--source", sa.source, "Source node (1-based)")->required();
  solve->add_option("--target", sa.target, "Target node (1-based)")->required();
  solve->add_option("--k", sa.k, "Number of paths")->check(CLI::PositiveNumber);
  solve->add_option("--algo", sa.algo, "new, yen, both or brute")
      ->check(CLI::IsMember({"new", "yen", "both", "brute"}));
  solve->add_flag("--no-prune-max", sa.no_prune_max, "Disable the queue-max query pruning");
  solve->add_flag("--no-prune-min", sa.no_prune_min, "Disable the min-tier early termination");
  solve->add_flag("--no-potentials", sa.no_potentials,
                  "Plain lex order in queries (no distance-to-target bounds)");
  solve->add_flag("--check", sa.check, "Cross-check against brute force on small graphs");
  solve->add_option("--timeout-s", sa.timeout_s, "Wall-clock limit in seconds");
  solve->add_option("--label-budget", sa.label_budget, "Per-query permanent label limit");

  // bench
  auto* bench = app.add_subcommand("bench", "Run a batch and write one CSV row per run");
  kssp::ExperimentConfig cfg;
  std::string bench_grid, bench_graph, bench_algo = "new", bench_csv;
  bool bench_no_max = false, bench_no_min = false, bench_no_potentials = false;
  double bench_timeout = 0;
  auto* grid_opt = bench->add_option("--grid", bench_grid, "Grid size RxC");
  bench->add_option("--graph", bench_graph, "DIMACS .gr file")
      ->check(CLI::ExistingFile)
      ->excludes(grid_opt);
  bench->add_option("--costs", cfg.cost_draws, "Grid cost functions");
  bench->add_option("--pairs", cfg.pairs, "s-t pairs per graph");
  bench->add_option("--seed", cfg.seed, "Seed");
  bench->add_option("--k", cfg.ks, "k values (repeatable)");
  bench->add_option("--algo", bench_algo, "new, yen, both or brute")
      ->check(CLI::IsMember({"new", "yen", "both", "brute"}));
  bench->add_flag("--no-prune-max", bench_no_max, "Disable the queue-max query pruning");
  bench->add_flag("--no-prune-min", bench_no_min, "Disable the min-tier early termination");
  bench->add_flag("--no-potentials", bench_no_potentials,
                  "Plain lex order in queries (no distance-to-target bounds)");
  bench->add_option("--csv", bench_csv, "CSV output path (default stdout)");
  bench->add_option("--timeout-s", bench_timeout, "Per-solve wall-clock limit in seconds");
  bench->add_option("--label-budget", cfg.label_budget, "Per-query permanent label limit");
  bench->add_option("--threads", cfg.threads, "Worker threads");

  // report
  auto* report = app.add_subcommand("report", "Geometric means per algorithm and k");
  std::vector<std::string> report_files;
  report->add_option("--csv,files", report_files, "CSV files written by bench")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      auto spec = kssp::parse_grid_spec(gen_grid);
      spec.cost_low = gen_low;
      spec.cost_high = gen_high;
      for (const auto& path : kssp::generate_grid_files(gen_out, spec, gen_costs, gen_pairs, gen_seed)) {
        std::cout << path << '\n';
      }
      return kExitComplete;
    }
    if (*solve) return run_solve(sa);
    if (*bench) {
      if (!bench_grid.empty()) cfg.grid = kssp::parse_grid_spec(bench_grid);
      if (!bench_graph.empty()) cfg.graph_file = bench_graph;
      cfg.algorithm = kssp::parse_algorithm(bench_algo);
      cfg.prune_queue_max = !bench_no_max;
      cfg.prune_queue_min = !bench_no_min;
      cfg.potentials = !bench_no_potentials;
      if (bench_timeout > 0) cfg.timeout_s = bench_timeout;
      std::ofstream file;
      std::ostream* out = &std::cout;
      if (!bench_csv.empty()) {
        file.open(bench_csv);
        if (!file) throw std::runtime_error("cannot write " + bench_csv);
        out = &file;
      }
      const auto outcome = kssp::run_bench(cfg, out, &std::cerr);
      if (outcome.mismatches > 0) {
        std::cerr << "error: " << outcome.mismatches << " cross-check mismatches\n";
        return kExitMismatch;
      }
      return kExitComplete;
    }
    if (*report) {
      std::vector<kssp::ResultRow> rows;
      for (const auto& path : report_files) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open " + path);
        auto part = kssp::read_csv(in);
        rows.insert(rows.end(), part.begin(), part.end());
      }
      const auto summary = kssp::summarize(rows);
      kssp::write_summary(std::cout, summary);
      return kExitComplete;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

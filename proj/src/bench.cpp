#include "kssp/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "kssp/oracles.hpp"
#include "kssp/random.hpp"

namespace kssp {

namespace {

constexpr std::uint64_t kPairStream = 0x7061697273ULL;  // "pairs"

std::string format_number(double x) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), ptr);
}

std::string opt_number(const std::optional<double>& x) { return x ? format_number(*x) : ""; }

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_double(const std::string& s) {
  double x = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::invalid_argument("bad number in CSV: '" + s + "'");
  }
  return x;
}

std::optional<double> parse_opt(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return parse_double(s);
}

std::size_t parse_size(const std::string& s) {
  std::size_t x = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::invalid_argument("bad integer in CSV: '" + s + "'");
  }
  return x;
}

}  // namespace

Algorithm parse_algorithm(const std::string& name) {
  if (name == "new") return Algorithm::fresh;
  if (name == "yen") return Algorithm::yen;
  if (name == "both") return Algorithm::both;
  if (name == "brute") return Algorithm::brute;
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::fresh: return "new";
    case Algorithm::yen: return "yen";
    case Algorithm::both: return "both";
    case Algorithm::brute: return "brute";
  }
  return "?";
}

GridSpec parse_grid_spec(const std::string& text) {
  const auto x = text.find_first_of("xX");
  GridSpec spec;
  try {
    if (x == std::string::npos) throw std::invalid_argument("");
    spec.rows = parse_size(text.substr(0, x));
    spec.cols = parse_size(text.substr(x + 1));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("grid spec must look like RxC, got '" + text + "'");
  }
  if (spec.rows == 0 || spec.cols == 0) throw std::invalid_argument("grid dimensions must be positive");
  return spec;
}

std::uint64_t grid_seed(std::uint64_t seed, std::size_t draw) { return derive_seed(seed, draw); }

std::vector<StPair> draw_pairs(std::size_t node_count, std::size_t count, std::uint64_t seed) {
  if (node_count < 2 && count > 0) throw std::invalid_argument("need two nodes to draw pairs");
  Xoshiro256 rng(derive_seed(seed, kPairStream));
  std::vector<StPair> out;
  out.reserve(count);
  while (out.size() < count) {
    const auto s = static_cast<NodeId>(rng.below(node_count));
    const auto t = static_cast<NodeId>(rng.below(node_count));
    if (s != t) out.emplace_back(s, t);
  }
  return out;
}

void write_pairs(std::ostream& out, std::span<const StPair> pairs) {
  for (const auto& [s, t] : pairs) out << s + 1 << ' ' << t + 1 << '\n';
}

std::vector<StPair> read_pairs(std::istream& in) {
  std::vector<StPair> out;
  std::uint64_t s = 0, t = 0;
  while (in >> s >> t) {
    if (s == 0 || t == 0) throw std::invalid_argument("pair manifest uses 1-based node ids");
    out.emplace_back(static_cast<NodeId>(s - 1), static_cast<NodeId>(t - 1));
  }
  return out;
}

std::vector<std::string> generate_grid_files(const std::string& dir, const GridSpec& grid,
                                             std::size_t cost_draws, std::size_t pairs,
                                             std::uint64_t seed) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::vector<std::string> written;
  const std::string stem =
      "grid_" + std::to_string(grid.rows) + "x" + std::to_string(grid.cols);
  for (std::size_t c = 0; c < cost_draws; ++c) {
    const Graph g = gen_grid(grid.rows, grid.cols, grid.cost_low, grid.cost_high, grid_seed(seed, c));
    const std::string path = (fs::path(dir) / (stem + "_c" + std::to_string(c) + ".gr")).string();
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    write_dimacs(out, g,
                 stem + " cost draw " + std::to_string(c) + " seed " + std::to_string(seed));
    if (!out) throw std::runtime_error("write failed: " + path);
    written.push_back(path);
  }
  const std::string manifest = (fs::path(dir) / "pairs.txt").string();
  std::ofstream out(manifest);
  if (!out) throw std::runtime_error("cannot write " + manifest);
  const auto drawn = draw_pairs(grid.rows * grid.cols, pairs, seed);
  write_pairs(out, drawn);
  if (!out) throw std::runtime_error("write failed: " + manifest);
  written.push_back(manifest);
  return written;
}

// -- CSV ------------------------------------------------------------------------

void write_csv_header(std::ostream& out) { out << kCsvHeader << '\n'; }

void write_csv_row(std::ostream& out, const ResultRow& r) {
  out << r.instance << ',' << r.algorithm << ',' << r.k << ',' << (r.solved ? 1 : 0) << ','
      << r.paths << ',' << opt_number(r.kth_cost) << ',' << r.queries << ',' << r.failed_queries
      << ',' << opt_number(r.iter_success) << ',' << opt_number(r.iter_fail) << ','
      << format_number(r.time_s) << '\n';
}

std::vector<ResultRow> read_csv(std::istream& in) {
  std::vector<ResultRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == kCsvHeader) continue;
    const auto f = split_csv(line);
    if (f.size() != 11) {
      throw std::invalid_argument("CSV line " + std::to_string(line_no) + ": expected 11 fields");
    }
    ResultRow r;
    r.instance = f[0];
    r.algorithm = f[1];
    r.k = parse_size(f[2]);
    r.solved = f[3] == "1";
    r.paths = parse_size(f[4]);
    r.kth_cost = parse_opt(f[5]);
    r.queries = parse_size(f[6]);
    r.failed_queries = parse_size(f[7]);
    r.iter_success = parse_opt(f[8]);
    r.iter_fail = parse_opt(f[9]);
    r.time_s = parse_double(f[10]);
    rows.push_back(std::move(r));
  }
  return rows;
}

ResultRow make_row(std::string instance, const char* algorithm, std::size_t k,
                   const SolveReport& report) {
  ResultRow r;
  r.instance = std::move(instance);
  r.algorithm = algorithm;
  r.k = k;
  r.solved = report.status != SolveStatus::aborted;
  r.paths = report.paths.size();
  if (!report.paths.empty()) r.kth_cost = report.paths.back().path.cost();
  r.queries = report.stats.queries;
  r.failed_queries = report.stats.failed_queries;
  r.iter_success = report.stats.mean_iterations_success();
  r.iter_fail = report.stats.mean_iterations_fail();
  r.time_s = report.stats.wall_seconds;
  return r;
}

// -- Batch runner -----------------------------------------------------------------

namespace {

struct GraphInstance {
  std::string name;
  Graph graph;
};

SolveReport brute_report(const Graph& g, NodeId s, NodeId t, std::size_t k) {
  const auto start = std::chrono::steady_clock::now();
  auto all = enumerate_paths(g, s, t, 1'000'000);
  SolveReport report;
  report.status = all.size() >= k ? SolveStatus::complete : SolveStatus::exhausted_early;
  for (std::size_t i = 0; i < all.size() && i < k; ++i) {
    DeviationRecord r;
    r.path = std::move(all[i]);
    report.paths.push_back(std::move(r));
  }
  report.stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace

BenchOutcome run_bench(const ExperimentConfig& config, std::ostream* csv, std::ostream* log) {
  std::vector<GraphInstance> graphs;
  if (config.graph_file) {
    graphs.push_back({std::filesystem::path(*config.graph_file).stem().string(),
                      load_dimacs_file(*config.graph_file)});
  } else if (config.grid) {
    const GridSpec& grid = *config.grid;
    for (std::size_t c = 0; c < config.cost_draws; ++c) {
      graphs.push_back({"grid" + std::to_string(grid.rows) + "x" + std::to_string(grid.cols) +
                            "-c" + std::to_string(c),
                        gen_grid(grid.rows, grid.cols, grid.cost_low, grid.cost_high,
                                 grid_seed(config.seed, c))});
    }
  } else {
    throw std::invalid_argument("bench needs a grid spec or a graph file");
  }

  SolveOptions options;
  options.prune_queue_max = config.prune_queue_max;
  options.prune_queue_min = config.prune_queue_min;
  options.potentials = config.potentials;
  options.label_budget = config.label_budget;
  if (config.timeout_s) options.timeout = std::chrono::duration<double>(*config.timeout_s);

  struct Job {
    std::size_t graph;
    std::size_t pair_index;
    StPair pair;
  };
  std::vector<Job> jobs;
  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    const auto pairs = draw_pairs(graphs[gi].graph.node_count(), config.pairs, config.seed);
    for (std::size_t p = 0; p < pairs.size(); ++p) jobs.push_back({gi, p, pairs[p]});
  }

  std::vector<std::vector<ResultRow>> results(jobs.size());
  std::vector<std::string> notes(jobs.size());
  std::atomic<std::size_t> mismatches{0};
  std::atomic<std::size_t> next{0};
  std::mutex out_mutex;
  std::size_t flushed = 0;
  std::vector<bool> done(jobs.size(), false);

  auto work = [&] {
    std::vector<std::optional<KsspSolver>> solvers(graphs.size());
    for (std::size_t j; (j = next.fetch_add(1)) < jobs.size();) {
      const Job& job = jobs[j];
      const Graph& g = graphs[job.graph].graph;
      if (!solvers[job.graph]) solvers[job.graph].emplace(g);
      const std::string id = graphs[job.graph].name + "/p" + std::to_string(job.pair_index);
      const auto [s, t] = job.pair;
      for (std::size_t k : config.ks) {
        std::optional<SolveReport> fresh, baseline;
        if (config.algorithm == Algorithm::fresh || config.algorithm == Algorithm::both ||
            config.algorithm == Algorithm::brute) {
          fresh = solvers[job.graph]->solve(s, t, k, options);
          results[j].push_back(make_row(id, "new", k, *fresh));
        }
        if (config.algorithm == Algorithm::yen || config.algorithm == Algorithm::both) {
          baseline = yen(g, s, t, k, options);
          results[j].push_back(make_row(id, "yen", k, *baseline));
        }
        if (config.algorithm == Algorithm::brute) {
          baseline = brute_report(g, s, t, k);
          results[j].push_back(make_row(id, "brute", k, *baseline));
        }
        if (fresh && baseline && fresh->status != SolveStatus::aborted &&
            baseline->status != SolveStatus::aborted && fresh->costs() != baseline->costs()) {
          ++mismatches;
          notes[j] += "cost sequence mismatch on " + id + " k=" + std::to_string(k) + "\n";
        }
      }
      // Stream finished jobs in order.
      std::lock_guard lock(out_mutex);
      done[j] = true;
      while (flushed < jobs.size() && done[flushed]) {
        if (csv) {
          for (const auto& row : results[flushed]) write_csv_row(*csv, row);
          csv->flush();
        }
        if (log && !notes[flushed].empty()) *log << notes[flushed];
        ++flushed;
      }
    }
  };

  if (csv) write_csv_header(*csv);
  const std::size_t threads = std::max<std::size_t>(1, std::min(config.threads, jobs.size()));
  if (threads == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(work);
  }

  BenchOutcome outcome;
  outcome.mismatches = mismatches.load();
  for (auto& r : results) {
    for (auto& row : r) outcome.rows.push_back(std::move(row));
  }
  return outcome;
}

// -- Report -------------------------------------------------------------------------

std::optional<double> geometric_mean(std::span<const double> values) {
  double log_sum = 0;
  std::size_t n = 0;
  for (double x : values) {
    if (x > 0 && std::isfinite(x)) {
      log_sum += std::log(x);
      ++n;
    }
  }
  if (n == 0) return std::nullopt;
  return std::exp(log_sum / static_cast<double>(n));
}

std::vector<SummaryRow> summarize(std::span<const ResultRow> rows) {
  struct Group {
    SummaryRow row;
    std::vector<double> queries, failed, iter_success, iter_fail, time;
  };
  std::vector<Group> groups;
  for (const ResultRow& r : rows) {
    auto it = std::find_if(groups.begin(), groups.end(), [&](const Group& g) {
      return g.row.algorithm == r.algorithm && g.row.k == r.k;
    });
    if (it == groups.end()) {
      groups.push_back({});
      it = std::prev(groups.end());
      it->row.algorithm = r.algorithm;
      it->row.k = r.k;
    }
    ++it->row.rows;
    if (!r.solved) continue;
    ++it->row.solved;
    it->queries.push_back(static_cast<double>(r.queries));
    it->failed.push_back(static_cast<double>(r.failed_queries));
    if (r.iter_success) it->iter_success.push_back(*r.iter_success);
    if (r.iter_fail) it->iter_fail.push_back(*r.iter_fail);
    it->time.push_back(r.time_s);
  }
  std::vector<SummaryRow> out;
  for (auto& g : groups) {
    g.row.queries = geometric_mean(g.queries);
    g.row.failed_queries = geometric_mean(g.failed);
    g.row.iter_success = geometric_mean(g.iter_success);
    g.row.iter_fail = geometric_mean(g.iter_fail);
    g.row.time_s = geometric_mean(g.time);
    out.push_back(std::move(g.row));
  }
  return out;
}

void write_summary(std::ostream& out, std::span<const SummaryRow> summary) {
  out << "algorithm,k,rows,solved,queries,failed_queries,iter_success,iter_fail,time_s\n";
  for (const auto& s : summary) {
    out << s.algorithm << ',' << s.k << ',' << s.rows << ',' << s.solved << ','
        << opt_number(s.queries) << ',' << opt_number(s.failed_queries) << ','
        << opt_number(s.iter_success) << ',' << opt_number(s.iter_fail) << ','
        << opt_number(s.time_s) << '\n';
  }
}

}  // namespace kssp

// Experiment protocol: instance generation, batch runs and CSV statistics.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kssp/engine.hpp"
#include "kssp/graph.hpp"

namespace kssp {

enum class Algorithm { fresh, yen, both, brute };

/// Parses "new", "yen", "both" or "brute".
Algorithm parse_algorithm(const std::string& name);
const char* to_string(Algorithm a);

struct GridSpec {
  std::size_t rows = 100;
  std::size_t cols = 100;
  Cost cost_low = 0;
  Cost cost_high = 10;
};

/// Parses "RxC".
GridSpec parse_grid_spec(const std::string& text);

struct ExperimentConfig {
  std::optional<GridSpec> grid;   // either a grid ...
  std::optional<std::string> graph_file;  // ... or a DIMACS file
  std::size_t cost_draws = 1;  // grid cost functions
  std::size_t pairs = 1;
  std::vector<std::size_t> ks;
  Algorithm algorithm = Algorithm::fresh;
  bool prune_queue_max = true;
  bool prune_queue_min = true;
  bool potentials = true;
  std::uint64_t seed = 1;
  std::optional<double> timeout_s;
  std::size_t label_budget = 0;
  std::size_t threads = 1;
};

using StPair = std::pair<NodeId, NodeId>;

/// Seed of the i-th grid cost function.
std::uint64_t grid_seed(std::uint64_t seed, std::size_t draw);

/// `count` pairs with s != t drawn uniformly from [0, node_count).
std::vector<StPair> draw_pairs(std::size_t node_count, std::size_t count, std::uint64_t seed);

/// Pair manifest: one "s t" line per pair, 1-based node ids.
void write_pairs(std::ostream& out, std::span<const StPair> pairs);
std::vector<StPair> read_pairs(std::istream& in);

/// Writes the grid files `<stem>_c<i>.gr` and `pairs.txt` into dir and
/// returns the written paths (pair manifest last).
std::vector<std::string> generate_grid_files(const std::string& dir, const GridSpec& grid,
                                             std::size_t cost_draws, std::size_t pairs,
                                             std::uint64_t seed);

struct ResultRow {
  std::string instance;
  std::string algorithm;
  std::size_t k = 0;
  bool solved = false;
  std::size_t paths = 0;
  std::optional<Cost> kth_cost;
  std::size_t queries = 0;
  std::size_t failed_queries = 0;
  std::optional<double> iter_success;  // mean over successful queries
  std::optional<double> iter_fail;     // mean over failed queries
  double time_s = 0;
};

inline constexpr const char* kCsvHeader =
    "instance,algorithm,k,solved,paths,kth_cost,queries,failed_queries,iter_success,iter_fail,"
    "time_s";

void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const ResultRow& row);
std::vector<ResultRow> read_csv(std::istream& in);

ResultRow make_row(std::string instance, const char* algorithm, std::size_t k,
                   const SolveReport& report);

struct BenchOutcome {
  std::vector<ResultRow> rows;
  std::size_t mismatches = 0;  // cross-check failures for algorithm both/brute
};

/// Runs the configured batch. Rows come out in (graph, pair, k, algorithm)
/// order regardless of the thread count. Rows are streamed to `csv` when
/// given. Mismatch details go to `log` when given.
BenchOutcome run_bench(const ExperimentConfig& config, std::ostream* csv = nullptr,
                       std::ostream* log = nullptr);

/// Geometric mean over the strictly positive finite values; none if there
/// are none.
std::optional<double> geometric_mean(std::span<const double> values);

struct SummaryRow {
  std::string algorithm;
  std::size_t k = 0;
  std::size_t rows = 0;
  std::size_t solved = 0;
  std::optional<double> queries;
  std::optional<double> failed_queries;
  std::optional<double> iter_success;
  std::optional<double> iter_fail;
  std::optional<double> time_s;
};

/// Geometric means per (algorithm, k) over solved rows, in first-seen order.
std::vector<SummaryRow> summarize(std::span<const ResultRow> rows);
void write_summary(std::ostream& out, std::span<const SummaryRow> summary);

}  // namespace kssp

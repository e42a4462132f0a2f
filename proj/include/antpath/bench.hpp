#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "antpath/colony.hpp"
#include "antpath/gridworld.hpp"

namespace antpath {

// One benchmark column: either the A* oracle or a colony variant.
// Labels follow "<name>-<ants>-<iterations>", e.g. "PFACO-30-20"; the oracle is "A*".
struct AlgoConfig {
  std::string label;
  std::optional<ColonyParams> params;  // nullopt = A*

  bool is_oracle() const noexcept { return !params.has_value(); }
};

AlgoConfig oracle_config();
AlgoConfig colony_config(Variant variant, int ants, int iterations);

// Case-insensitive. Accepts "astar"/"a*" and "<as|eliteas|mmas|pfaco>-<M>-<K>"
// (aliases: elite, eliteaco, mmaco). Throws ParameterError naming the valid algorithms.
AlgoConfig parse_algo_config(std::string_view label);
std::vector<AlgoConfig> parse_algo_list(std::string_view comma_separated);
std::string_view valid_algorithm_names() noexcept;

struct MetricRow {
  std::optional<double> average_path;
  std::optional<double> time_mean_s;
  std::optional<double> turning_mean;
  std::optional<double> sd_p;
  std::optional<double> sd_t;
  double success_rate_pct = 0.0;
  std::optional<double> path_improve_pct;
  std::optional<double> p_value;
};

// Outcome of one (config, instance, repeat) run.
struct RunRecord {
  std::size_t config = 0;
  std::size_t instance = 0;
  std::size_t repeat = 0;
  bool succeeded = false;
  double cost = 0.0;
  int turns = 0;
  double elapsed = 0.0;
};

RunRecord to_record(const RunResult& result);

// Means and population standard deviations over successful runs; success rate over all.
// Throws ParameterError for an empty list.
MetricRow summarize(std::span<const RunRecord> runs);
MetricRow summarize(std::span<const RunResult> runs);

// (avg_small - avg_large) / avg_large. Throws ParameterError if avg_large <= 0.
double path_improve(double avg_small, double avg_large);

struct MannWhitneyResult {
  double u = 0.0;        // U of sample_a
  double p_value = 1.0;  // two-sided
  bool exact = false;
};

// Exact null distribution when min(n, m) <= 8 and there are no ties;
// otherwise normal approximation with tie and continuity corrections.
MannWhitneyResult mann_whitney_u(std::span<const double> sample_a, std::span<const double> sample_b);

inline constexpr double kSignificanceLevel = 0.05;

struct InstanceRecord {
  Instance instance;
  std::optional<double> oracle_cost;  // nullopt when the goal is unreachable
};

struct BenchReport {
  std::string dataset_id;
  std::vector<AlgoConfig> configs;
  std::vector<MetricRow> rows;                 // parallel to configs
  std::vector<std::vector<double>> curves;     // per config, mean best-so-far per iteration; empty for A*
  std::vector<std::uint64_t> seeds;            // per (instance, repeat), instance-major
  std::vector<InstanceRecord> instances;
  std::vector<RunRecord> runs;                 // ordered by (config, instance, repeat)
  std::optional<std::size_t> reference;        // row with the best average path
  std::size_t repeats = 1;
};

struct BenchOptions {
  std::string dataset_id = "dataset";
  std::optional<double> timeout_seconds;  // overrides every colony config
  int threads = 0;                        // 0: PLANNER_THREADS or 1
};

// Samples n_instances from `dataset` and runs every config on each instance `repeats` times.
BenchReport run_benchmark(std::span<const GridMap> dataset, std::span<const AlgoConfig> configs,
                          int n_instances, int repeats, std::uint64_t master_seed,
                          const BenchOptions& options = {});

// Same, on a fixed instance list (instances may be unreachable).
BenchReport run_benchmark(std::span<const Instance> instances, std::span<const AlgoConfig> configs,
                          int repeats, std::uint64_t master_seed, const BenchOptions& options = {});

}  // namespace antpath

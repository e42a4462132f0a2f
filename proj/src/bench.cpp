#include "antpath/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <thread>

#include "antpath/errors.hpp"
#include "antpath/random.hpp"
#include "antpath/search.hpp"

namespace antpath {

// ---------------------------------------------------------------------------
// Config labels

AlgoConfig oracle_config() { return {"A*", std::nullopt}; }

AlgoConfig colony_config(Variant variant, int ants, int iterations) {
  ColonyParams params = default_params(variant, ants, iterations);
  params.validate();
  return {std::string(variant_name(variant)) + "-" + std::to_string(ants) + "-" + std::to_string(iterations),
          params};
}

std::string_view valid_algorithm_names() noexcept { return "astar, as, eliteas, mmas, pfaco"; }

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

int parse_count(const std::string& text, const char* what, std::string_view label) {
  if (text.empty() || text.size() > 9 ||
      !std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isdigit(c); })) {
    throw ParameterError("bad " + std::string(what) + " in config '" + std::string(label) + "'");
  }
  const int value = std::stoi(text);
  if (value < 1) {
    throw ParameterError(std::string(what) + " must be >= 1 in config '" + std::string(label) + "'");
  }
  return value;
}

}  // namespace

AlgoConfig parse_algo_config(std::string_view label) {
  const std::string text = lower(trim(label));
  if (text == "astar" || text == "a*") return oracle_config();

  const auto first = text.find('-');
  const auto second = first == std::string::npos ? std::string::npos : text.find('-', first + 1);
  if (second == std::string::npos || text.find('-', second + 1) != std::string::npos) {
    throw ParameterError("config '" + std::string(label) + "' is not <name>-<ants>-<iterations>; valid names: " +
                         std::string(valid_algorithm_names()));
  }
  const std::string name = text.substr(0, first);
  Variant variant;
  if (name == "as") {
    variant = Variant::AS;
  } else if (name == "eliteas" || name == "elite" || name == "eliteaco") {
    variant = Variant::EliteAS;
  } else if (name == "mmas" || name == "mmaco") {
    variant = Variant::MMAS;
  } else if (name == "pfaco") {
    variant = Variant::PFACO;
  } else {
    throw ParameterError("unknown algorithm '" + name + "'; valid names: " + std::string(valid_algorithm_names()));
  }
  const int ants = parse_count(text.substr(first + 1, second - first - 1), "ants", label);
  const int iterations = parse_count(text.substr(second + 1), "iterations", label);
  return colony_config(variant, ants, iterations);
}

std::vector<AlgoConfig> parse_algo_list(std::string_view comma_separated) {
  std::vector<AlgoConfig> out;
  std::size_t pos = 0;
  while (pos <= comma_separated.size()) {
    const auto comma = comma_separated.find(',', pos);
    const auto item = trim(comma_separated.substr(pos, comma == std::string_view::npos ? std::string_view::npos
                                                                                         : comma - pos));
    if (!item.empty()) out.push_back(parse_algo_config(item));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw ParameterError("no algorithm configs given");
  return out;
}

// ---------------------------------------------------------------------------
// Statistics

RunRecord to_record(const RunResult& result) {
  RunRecord r;
  r.succeeded = result.succeeded;
  if (result.best_path) {
    r.cost = result.best_path->cost;
    r.turns = result.best_path->turns;
  }
  r.elapsed = result.elapsed;
  return r;
}

namespace {

struct Moments {
  double mean;
  double sd;
};

Moments population_moments(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / n)};
}

}  // namespace

MetricRow summarize(std::span<const RunRecord> runs) {
  if (runs.empty()) throw ParameterError("cannot summarize an empty run list");
  std::vector<double> costs, times, turns;
  for (const auto& r : runs) {
    if (!r.succeeded) continue;
    costs.push_back(r.cost);
    times.push_back(r.elapsed);
    turns.push_back(static_cast<double>(r.turns));
  }
  MetricRow row;
  row.success_rate_pct = 100.0 * static_cast<double>(costs.size()) / static_cast<double>(runs.size());
  if (costs.empty()) return row;
  const auto path = population_moments(costs);
  const auto time = population_moments(times);
  row.average_path = path.mean;
  row.sd_p = path.sd;
  row.time_mean_s = time.mean;
  row.sd_t = time.sd;
  row.turning_mean = population_moments(turns).mean;
  return row;
}

MetricRow summarize(std::span<const RunResult> runs) {
  std::vector<RunRecord> records;
  records.reserve(runs.size());
  for (const auto& r : runs) records.push_back(to_record(r));
  return summarize(records);
}

double path_improve(double avg_small, double avg_large) {
  if (!(avg_large > 0.0)) throw ParameterError("path improvement needs a positive denominator");
  return (avg_small - avg_large) / avg_large;
}

namespace {

// Number of (a, b) arrangements for each U in [0, n*m]: multisets of `parts`
// values drawn from [0, largest].
std::vector<double> u_distribution(std::size_t parts, std::size_t largest) {
  const std::size_t max_u = parts * largest;
  std::vector<std::vector<double>> dp(parts + 1, std::vector<double>(max_u + 1, 0.0));
  dp[0][0] = 1.0;
  for (std::size_t v = 0; v <= largest; ++v) {
    for (std::size_t j = 1; j <= parts; ++j) {
      for (std::size_t u = v; u <= max_u; ++u) dp[j][u] += dp[j - 1][u - v];
    }
  }
  return dp[parts];
}

}  // namespace

MannWhitneyResult mann_whitney_u(std::span<const double> sample_a, std::span<const double> sample_b) {
  const std::size_t n = sample_a.size();
  const std::size_t m = sample_b.size();
  if (n == 0 || m == 0) throw ParameterError("Mann-Whitney U needs two nonempty samples");

  std::vector<std::pair<double, int>> pooled;
  pooled.reserve(n + m);
  for (double x : sample_a) pooled.emplace_back(x, 0);
  for (double x : sample_b) pooled.emplace_back(x, 1);
  std::sort(pooled.begin(), pooled.end());

  double rank_sum_a = 0.0;
  double tie_term = 0.0;  // sum of t^3 - t over tie groups
  bool ties = false;
  for (std::size_t i = 0; i < pooled.size();) {
    std::size_t j = i;
    while (j < pooled.size() && pooled[j].first == pooled[i].first) ++j;
    const double t = static_cast<double>(j - i);
    if (j - i > 1) {
      ties = true;
      tie_term += t * t * t - t;
    }
    const double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) {
      if (pooled[k].second == 0) rank_sum_a += avg_rank;
    }
    i = j;
  }

  const double nd = static_cast<double>(n);
  const double md = static_cast<double>(m);
  MannWhitneyResult result;
  result.u = rank_sum_a - nd * (nd + 1.0) / 2.0;

  if (std::min(n, m) <= 8 && !ties) {
    const auto counts = u_distribution(std::min(n, m), std::max(n, m));
    const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
    const auto u = static_cast<std::size_t>(std::llround(result.u));
    double lower = 0.0, upper = 0.0;
    for (std::size_t k = 0; k < counts.size(); ++k) {
      if (k <= u) lower += counts[k];
      if (k >= u) upper += counts[k];
    }
    result.p_value = std::min(1.0, 2.0 * std::min(lower, upper) / total);
    result.exact = true;
    return result;
  }

  const double big_n = nd + md;
  const double mean = nd * md / 2.0;
  const double variance = nd * md / 12.0 * ((big_n + 1.0) - tie_term / (big_n * (big_n - 1.0)));
  if (!(variance > 0.0)) {
    result.p_value = 1.0;
    return result;
  }
  const double z = std::max(0.0, std::abs(result.u - mean) - 0.5) / std::sqrt(variance);
  result.p_value = std::min(1.0, std::erfc(z / std::sqrt(2.0)));
  return result;
}

// ---------------------------------------------------------------------------
// Orchestration

namespace {

int thread_count(const BenchOptions& options) {
  if (options.threads > 0) return options.threads;
  if (const char* env = std::getenv("PLANNER_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

RunRecord run_one(const AlgoConfig& config, const Instance& instance, std::uint64_t seed,
                  const BenchOptions& options, std::vector<double>* curve) {
  if (config.is_oracle()) {
    try {
      const auto oracle = astar(instance);
      return {0, 0, 0, true, oracle.path.cost, oracle.path.turns, oracle.elapsed};
    } catch (const NoPathError&) {
      return {};
    }
  }
  ColonyParams params = *config.params;
  params.seed = seed;
  if (options.timeout_seconds) params.timeout_seconds = *options.timeout_seconds;
  try {
    const RunResult result = run_colony(instance, params);
    *curve = result.best_per_iteration;
    return to_record(result);
  } catch (const std::exception&) {
    return {};
  }
}

}  // namespace

BenchReport run_benchmark(std::span<const GridMap> dataset, std::span<const AlgoConfig> configs, int n_instances,
                          int repeats, std::uint64_t master_seed, const BenchOptions& options) {
  if (dataset.empty()) throw ParameterError("benchmark dataset is empty");
  const auto instances = sample_instances(dataset, n_instances, derive_seed(master_seed, {0}));
  return run_benchmark(std::span<const Instance>(instances), configs, repeats, master_seed, options);
}

BenchReport run_benchmark(std::span<const Instance> instances, std::span<const AlgoConfig> configs, int repeats,
                          std::uint64_t master_seed, const BenchOptions& options) {
  if (configs.empty()) throw ParameterError("no benchmark configs");
  if (instances.empty()) throw ParameterError("no benchmark instances");
  if (repeats < 1) throw ParameterError("repeats must be >= 1");
  if (options.timeout_seconds && !(*options.timeout_seconds > 0.0)) throw ParameterError("timeout must be > 0");

  BenchReport report;
  report.dataset_id = options.dataset_id;
  report.configs.assign(configs.begin(), configs.end());
  report.repeats = static_cast<std::size_t>(repeats);

  for (const auto& inst : instances) {
    std::optional<double> oracle_cost;
    try {
      oracle_cost = astar(inst).path.cost;
    } catch (const NoPathError&) {
    }
    report.instances.push_back({inst, oracle_cost});
  }
  const std::size_t n_inst = instances.size();
  const std::size_t n_rep = static_cast<std::size_t>(repeats);
  for (std::size_t i = 0; i < n_inst; ++i) {
    for (std::size_t r = 0; r < n_rep; ++r) report.seeds.push_back(derive_seed(master_seed, {1, i, r}));
  }

  const std::size_t total = configs.size() * n_inst * n_rep;
  report.runs.resize(total);
  std::vector<std::vector<double>> curves(total);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t task = next++; task < total; task = next++) {
      const std::size_t c = task / (n_inst * n_rep);
      const std::size_t i = (task / n_rep) % n_inst;
      const std::size_t r = task % n_rep;
      RunRecord rec = run_one(configs[c], instances[i], report.seeds[i * n_rep + r], options, &curves[task]);
      rec.config = c;
      rec.instance = i;
      rec.repeat = r;
      report.runs[task] = rec;
    }
  };
  const int threads = std::min<int>(thread_count(options), static_cast<int>(total));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  const std::size_t per_config = n_inst * n_rep;
  for (std::size_t c = 0; c < configs.size(); ++c) {
    const std::span<const RunRecord> slice(report.runs.data() + c * per_config, per_config);
    report.rows.push_back(summarize(slice));

    std::vector<double> curve;
    if (!configs[c].is_oracle()) {
      const auto k_max = static_cast<std::size_t>(configs[c].params->iterations);
      for (std::size_t k = 0; k < k_max; ++k) {
        double sum = 0.0;
        std::size_t count = 0;
        for (std::size_t t = c * per_config; t < (c + 1) * per_config; ++t) {
          if (k < curves[t].size() && std::isfinite(curves[t][k])) {
            sum += curves[t][k];
            ++count;
          }
        }
        curve.push_back(count ? sum / static_cast<double>(count) : std::numeric_limits<double>::quiet_NaN());
      }
    }
    report.curves.push_back(std::move(curve));
  }

  // Reference = best average path; every other row is tested against it.
  for (std::size_t c = 0; c < configs.size(); ++c) {
    if (!report.rows[c].average_path) continue;
    if (!report.reference || *report.rows[c].average_path < *report.rows[*report.reference].average_path) {
      report.reference = c;
    }
  }
  auto successful_costs = [&](std::size_t c) {
    std::vector<double> costs;
    for (std::size_t t = c * per_config; t < (c + 1) * per_config; ++t) {
      if (report.runs[t].succeeded) costs.push_back(report.runs[t].cost);
    }
    return costs;
  };
  if (report.reference) {
    const auto ref_costs = successful_costs(*report.reference);
    for (std::size_t c = 0; c < configs.size(); ++c) {
      if (c == *report.reference || !report.rows[c].average_path) continue;
      report.rows[c].p_value = mann_whitney_u(successful_costs(c), ref_costs).p_value;
    }
  }

  // Improvement of each colony config over the smallest-budget config of the same variant.
  for (std::size_t c = 0; c < configs.size(); ++c) {
    if (configs[c].is_oracle() || !report.rows[c].average_path) continue;
    const auto& pc = *configs[c].params;
    std::optional<std::size_t> smallest;
    for (std::size_t s = 0; s < configs.size(); ++s) {
      if (configs[s].is_oracle() || configs[s].params->variant != pc.variant) continue;
      const auto& ps = *configs[s].params;
      const long budget = static_cast<long>(ps.ants) * ps.iterations;
      if (budget >= static_cast<long>(pc.ants) * pc.iterations || !report.rows[s].average_path) continue;
      if (!smallest || budget < static_cast<long>(configs[*smallest].params->ants) *
                                    configs[*smallest].params->iterations) {
        smallest = s;
      }
    }
    if (smallest) {
      report.rows[c].path_improve_pct =
          100.0 * path_improve(*report.rows[*smallest].average_path, *report.rows[c].average_path);
    }
  }
  return report;
}

}  // namespace antpath

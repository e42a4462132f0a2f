#include "antpath/pfaco.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "antpath/errors.hpp"

namespace antpath {

PheromoneField adpi_init(const Instance& instance) {
  return adpi_init(instance.map(), instance.start(), instance.goal());
}

PheromoneField adpi_init(const GridMap& map, Node start, Node goal) {
  if (start == goal) throw DegenerateError("distance-focused init needs start != goal");
  const double baseline = euclid(start, goal);
  PheromoneField field(map, 0.0);
  field.for_each_edge([&](Node from, Node to, double& tau) {
    const double a = euclid(from, goal) > euclid(to, goal) ? 2.0 : 1.0;
    tau = a * baseline / (euclid(start, to) + euclid(to, goal));
  });
  return field;
}

std::size_t elite_capacity(int ants) {
  return static_cast<std::size_t>((std::max(ants, 1) + 9) / 10);
}

std::size_t top_quality_size(int ants) {
  return static_cast<std::size_t>((std::max(ants, 1) + 1) / 2);
}

bool ranks_before(const Path& a, const Path& b) noexcept {
  constexpr double kEps = 1e-12;
  const double sa = a.score();
  const double sb = b.score();
  if (sa < sb - kEps) return true;
  if (sa > sb + kEps) return false;
  return a.nodes < b.nodes;
}

EliteArchive::EliteArchive(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw ParameterError("elite archive capacity must be positive");
}

bool EliteArchive::offer(const Path& path) {
  for (const auto& s : solutions_) {
    if (s.nodes == path.nodes) return false;
  }
  const auto pos = std::upper_bound(solutions_.begin(), solutions_.end(), path, ranks_before);
  if (static_cast<std::size_t>(pos - solutions_.begin()) >= capacity_) return false;
  solutions_.insert(pos, path);
  if (solutions_.size() > capacity_) solutions_.pop_back();
  return true;
}

std::size_t psprs_update(EliteArchive& archive, const IterationPool& pool, PheromoneField& field,
                         const ColonyParams& params) {
  if (pool.solutions.empty()) {
    evaporate_and_deposit(field, {}, params.rho, params.q);
    return 0;
  }
  for (const auto& p : pool.solutions) archive.offer(p);

  std::vector<const Path*> ranked;
  ranked.reserve(pool.solutions.size());
  for (const auto& p : pool.solutions) ranked.push_back(&p);
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const Path* a, const Path* b) { return a->score() < b->score(); });
  ranked.resize(std::min(ranked.size(), top_quality_size(params.ants)));

  std::vector<Deposit> new_set;
  for (const Path* p : ranked) new_set.push_back({p, DepositRule::LengthPlusTurns, 1});
  for (const auto& elite : archive.solutions()) {
    new_set.push_back({&elite, DepositRule::LengthPlusTurns, kEliteReplicas});
  }
  evaporate_and_deposit(field, new_set, params.rho, params.q);

  std::size_t count = 0;
  for (const auto& d : new_set) count += static_cast<std::size_t>(d.multiplicity);
  return count;
}

namespace {

// Change in (cost + turns) if nodes[k] is dropped; nodes[k-1] -> nodes[k+1] must be legal.
double removal_delta(const std::vector<Node>& nodes, std::size_t k) {
  const double cost_delta = euclid(nodes[k - 1], nodes[k + 1]) - euclid(nodes[k - 1], nodes[k]) -
                            euclid(nodes[k], nodes[k + 1]);
  const std::size_t lo = k >= 2 ? k - 2 : 0;
  const std::size_t hi = std::min(nodes.size() - 1, k + 2);
  std::vector<Node> before(nodes.begin() + static_cast<std::ptrdiff_t>(lo),
                           nodes.begin() + static_cast<std::ptrdiff_t>(hi) + 1);
  std::vector<Node> after = before;
  after.erase(after.begin() + static_cast<std::ptrdiff_t>(k - lo));
  const int turn_delta = count_turns(after) - count_turns(before);
  return cost_delta + turn_delta;
}

constexpr double kStrict = 1e-12;

}  // namespace

Path ltos_smooth(const Path& path, const GridMap& map) {
  std::vector<Node> nodes = path.nodes;
  bool changed = true;
  while (changed) {
    changed = false;
    std::size_t k = 1;
    while (k + 1 < nodes.size()) {
      if (legal_move(map, nodes[k - 1], nodes[k + 1]) && removal_delta(nodes, k) < -kStrict) {
        // nodes[k+1] now hangs off nodes[k-1]; re-examine the same position.
        nodes.erase(nodes.begin() + static_cast<std::ptrdiff_t>(k));
        changed = true;
      } else {
        ++k;
      }
    }
  }
  return path_metrics(nodes, map);
}

void ltos_rewire_tail(std::vector<Node>& trail, const GridMap& map) {
  while (trail.size() >= 3) {
    const std::size_t k = trail.size() - 2;
    if (!legal_move(map, trail[k - 1], trail[k + 1]) || !(removal_delta(trail, k) < -kStrict)) break;
    trail.erase(trail.begin() + static_cast<std::ptrdiff_t>(k));
  }
}

double ltos_deposit(const Path& path, double q) {
  if (!(q > 0.0)) throw ParameterError("q must be > 0");
  if (!(path.score() > 0.0)) throw DegenerateError("turn-penalized deposit undefined for a single-node path");
  return q / path.score();
}

RunResult run_pfaco(const Instance& instance, const ColonyParams& params, const RunHooks& hooks) {
  params.validate();
  const auto t0 = std::chrono::steady_clock::now();
  auto seconds = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); };
  const GridMap& map = instance.map();

  PheromoneField field = adpi_init(instance);
  if (hooks.on_initial) hooks.on_initial(field);

  EliteArchive archive(elite_capacity(params.ants));
  TrailHook per_step;
  if (params.ltos_per_step) per_step = [&map](std::vector<Node>& trail) { ltos_rewire_tail(trail, map); };

  RunResult result;
  result.best_per_iteration.reserve(static_cast<std::size_t>(params.iterations));
  for (int k = 0; k < params.iterations && !result.timed_out; ++k) {
    IterationPool pool;
    for (int m = 0; m < params.ants; ++m) {
      if (seconds() > params.timeout_seconds) {
        result.timed_out = true;
        break;
      }
      Rng rng = make_stream(params.seed, {static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(m)});
      if (auto tour = construct_tour(instance, field, params, rng, per_step)) {
        pool.solutions.push_back(ltos_smooth(*tour, map));
      }
    }
    if (result.timed_out) break;

    for (const auto& p : pool.solutions) {
      if (!result.best_path || shorter(p, *result.best_path)) result.best_path = p;
    }
    const std::size_t deposits = psprs_update(archive, pool, field, params);

    const double best = result.best_path ? result.best_path->cost : std::numeric_limits<double>::infinity();
    result.best_per_iteration.push_back(best);
    if (hooks.on_iteration) {
      hooks.on_iteration({k, best, static_cast<int>(pool.solutions.size()), deposits, &field});
    }
  }

  const double last = result.best_path ? result.best_path->cost : std::numeric_limits<double>::infinity();
  result.best_per_iteration.resize(static_cast<std::size_t>(params.iterations), last);
  if (hooks.on_final) hooks.on_final(field);
  result.succeeded = result.best_path.has_value() && !result.timed_out;
  result.elapsed = seconds();
  return result;
}

}  // namespace antpath

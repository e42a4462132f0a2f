#include "antpath/colony.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "antpath/errors.hpp"
#include "antpath/pfaco.hpp"

namespace antpath {

std::string_view variant_name(Variant v) noexcept {
  switch (v) {
    case Variant::AS: return "AS";
    case Variant::EliteAS: return "EliteAS";
    case Variant::MMAS: return "MMAS";
    case Variant::PFACO: return "PFACO";
  }
  return "?";
}

void ColonyParams::validate() const {
  if (ants < 1) throw ParameterError("ants must be >= 1, got " + std::to_string(ants));
  if (iterations < 1) throw ParameterError("iterations must be >= 1, got " + std::to_string(iterations));
  if (!(alpha >= 0.0)) throw ParameterError("alpha must be >= 0");
  if (!(beta >= 0.0)) throw ParameterError("beta must be >= 0");
  if (!(rho > 0.0 && rho < 1.0)) throw ParameterError("rho must lie in (0,1), got " + std::to_string(rho));
  if (!(q > 0.0)) throw ParameterError("q must be > 0");
  if (!(timeout_seconds > 0.0)) throw ParameterError("timeout must be > 0 seconds");
  if (!(initial_tau >= 0.0)) throw ParameterError("initial pheromone must be >= 0");
}

ColonyParams default_params(Variant variant, int ants, int iterations) {
  ColonyParams p;
  p.variant = variant;
  p.ants = ants;
  p.iterations = iterations;
  p.rho = variant == Variant::PFACO ? 0.2 : 0.25;
  return p;
}

// ---------------------------------------------------------------------------
// PheromoneField

PheromoneField::PheromoneField(const GridMap& map, double initial)
    : width_(map.width()),
      height_(map.height()),
      tau_(map.cell_count() * 8, 0.0),
      mask_(map.cell_count(), 0) {
  for (std::size_t cell = 0; cell < map.cell_count(); ++cell) {
    const Node from = map.node_at(cell);
    if (map.blocked(from)) continue;
    for (const auto& nb : neighbors(map, from)) {
      mask_[cell] |= static_cast<std::uint8_t>(1u << nb.direction);
      tau_[cell * 8 + static_cast<std::size_t>(nb.direction)] = initial;
    }
  }
}

bool PheromoneField::has_edge(Node from, int direction) const noexcept {
  if (!in_bounds(from) || direction < 0 || direction >= 8) return false;
  return (mask_[slot(from, 0) / 8] & (1u << direction)) != 0;
}

bool PheromoneField::has_edge(Node from, Node to) const noexcept {
  return has_edge(from, direction_index(to.x - from.x, to.y - from.y));
}

double PheromoneField::at(Node from, int direction) const noexcept {
  return has_edge(from, direction) ? tau_[slot(from, direction)] : 0.0;
}

double PheromoneField::get(Node from, Node to) const noexcept {
  return at(from, direction_index(to.x - from.x, to.y - from.y));
}

void PheromoneField::set(Node from, Node to, double value) {
  const int d = direction_index(to.x - from.x, to.y - from.y);
  if (!has_edge(from, d)) throw InvalidPathError("no pheromone edge between the given nodes");
  tau_[slot(from, d)] = value;
}

void PheromoneField::add(Node from, Node to, double amount) {
  const int d = direction_index(to.x - from.x, to.y - from.y);
  if (!has_edge(from, d)) throw InvalidPathError("no pheromone edge between the given nodes");
  tau_[slot(from, d)] += amount;
}

void PheromoneField::scale(double factor) noexcept {
  // Absent edges hold 0, so scaling everything keeps them at 0.
  for (auto& t : tau_) t *= factor;
}

void PheromoneField::clamp(double lo, double hi) noexcept {
  for_each_edge([&](Node, Node, double& tau) { tau = std::clamp(tau, lo, hi); });
}

std::size_t PheromoneField::edge_count() const noexcept {
  std::size_t n = 0;
  for (auto m : mask_) n += static_cast<std::size_t>(std::popcount(static_cast<unsigned>(m)));
  return n;
}

double PheromoneField::min_value() const noexcept {
  double lo = std::numeric_limits<double>::infinity();
  for_each_edge([&](Node, Node, double tau) { lo = std::min(lo, tau); });
  return lo;
}

double PheromoneField::max_value() const noexcept {
  double hi = 0.0;
  for_each_edge([&](Node, Node, double tau) { hi = std::max(hi, tau); });
  return hi;
}

double PheromoneField::node_value(Node n) const noexcept {
  double best = 0.0;
  for (int d = 0; d < 8; ++d) {
    const Node from{n.x - kDirections[d].dx, n.y - kDirections[d].dy};
    if (has_edge(from, d)) best = std::max(best, tau_[slot(from, d)]);
  }
  return best;
}

PheromoneField initial_field(const GridMap& map, const ColonyParams& params) {
  PheromoneField field(map, params.initial_tau);
  if (params.init == InitRule::InverseDistance) {
    field.for_each_edge([](Node from, Node to, double& tau) { tau = 1.0 / euclid(from, to); });
  }
  return field;
}

// ---------------------------------------------------------------------------
// Tour construction

AntState AntState::at(const GridMap& map, Node start) {
  AntState ant{start, std::vector<std::uint8_t>(map.cell_count(), 0), {start}, true};
  ant.visited[map.index(start)] = 1;
  return ant;
}

void AntState::move_to(const GridMap& map, Node next) {
  current = next;
  visited[map.index(next)] = 1;
  trail.push_back(next);
}

double heuristic(Node i, Node j) {
  if (i == j) throw DegenerateError("heuristic undefined for identical nodes");
  return 1.0 / euclid(i, j);
}

std::vector<Candidate> transition_probabilities(const PheromoneField& field, const AntState& ant,
                                                const GridMap& map, double alpha, double beta) {
  std::vector<Candidate> out;
  if (!ant.alive) return out;
  double total = 0.0;
  for (int d = 0; d < 8; ++d) {
    if (!field.has_edge(ant.current, d)) continue;
    const Node next{ant.current.x + kDirections[d].dx, ant.current.y + kDirections[d].dy};
    if (ant.visited[map.index(next)]) continue;
    const double eta = (kDirections[d].dx != 0 && kDirections[d].dy != 0) ? 1.0 / kSqrt2 : 1.0;
    const double weight = std::pow(field.at(ant.current, d), alpha) * std::pow(eta, beta);
    out.push_back({next, weight});
    total += weight;
  }
  if (out.empty()) return out;
  if (!(total > 0.0)) {
    // Every allowed edge carries zero pheromone; fall back to a uniform choice.
    for (auto& c : out) c.probability = 1.0 / static_cast<double>(out.size());
    return out;
  }
  for (auto& c : out) c.probability /= total;
  return out;
}

Node sample_next(std::span<const Candidate> candidates, Rng& rng) {
  if (candidates.empty()) throw std::logic_error("sample_next called with no candidates");
  const double r = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  double cumulative = 0.0;
  for (const auto& c : candidates) {
    cumulative += c.probability;
    if (r < cumulative) return c.node;
  }
  // r landed in the rounding gap above the cumulative sum.
  for (auto it = candidates.rbegin(); it != candidates.rend(); ++it) {
    if (it->probability > 0.0) return it->node;
  }
  return candidates.back().node;
}

std::optional<Path> construct_tour(const Instance& instance, const PheromoneField& field,
                                   const ColonyParams& params, Rng& rng, const TrailHook& hook) {
  const GridMap& map = instance.map();
  const std::size_t budget = 3 * map.cell_count();
  AntState ant = AntState::at(map, instance.start());
  for (std::size_t step = 0; step < budget; ++step) {
    const auto candidates = transition_probabilities(field, ant, map, params.alpha, params.beta);
    if (candidates.empty()) {
      ant.alive = false;
      return std::nullopt;
    }
    ant.move_to(map, sample_next(candidates, rng));
    if (hook) hook(ant.trail);
    if (ant.current == instance.goal()) return path_metrics(ant.trail, map);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Pheromone update

double deposit_amount(const Path& path, DepositRule rule, double q) {
  const double denominator = rule == DepositRule::Length ? path.cost : path.score();
  if (!(denominator > 0.0)) throw DegenerateError("deposit undefined for a zero-length path");
  return q / denominator;
}

void evaporate_and_deposit(PheromoneField& field, std::span<const Deposit> deposits, double rho, double q,
                           std::optional<PheromoneBounds> bounds) {
  if (!(rho > 0.0 && rho < 1.0)) throw ParameterError("rho must lie in (0,1), got " + std::to_string(rho));
  field.scale(1.0 - rho);
  for (const auto& deposit : deposits) {
    const auto& nodes = deposit.path->nodes;
    const double amount = deposit.multiplicity * deposit_amount(*deposit.path, deposit.rule, q);
    for (std::size_t k = 1; k < nodes.size(); ++k) field.add(nodes[k - 1], nodes[k], amount);
  }
  if (bounds) field.clamp(bounds->tau_min, bounds->tau_max);
}

// ---------------------------------------------------------------------------
// Baseline colonies

bool shorter(const Path& a, const Path& b) noexcept {
  constexpr double kEps = 1e-12;
  if (a.cost < b.cost - kEps) return true;
  if (a.cost > b.cost + kEps) return false;
  return a.turns < b.turns;
}

RunResult run_colony(const Instance& instance, const ColonyParams& params, const RunHooks& hooks) {
  params.validate();
  if (params.variant == Variant::PFACO) return run_pfaco(instance, params, hooks);

  const auto t0 = std::chrono::steady_clock::now();
  auto seconds = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); };
  const GridMap& map = instance.map();

  PheromoneField field = initial_field(map, params);
  if (hooks.on_initial) hooks.on_initial(field);

  RunResult result;
  result.best_per_iteration.reserve(static_cast<std::size_t>(params.iterations));
  const int elite_weight = static_cast<int>(std::ceil(0.1 * params.ants));
  std::optional<PheromoneBounds> bounds;

  for (int k = 0; k < params.iterations && !result.timed_out; ++k) {
    std::vector<Path> tours;
    for (int m = 0; m < params.ants; ++m) {
      if (seconds() > params.timeout_seconds) {
        result.timed_out = true;
        break;
      }
      Rng rng = make_stream(params.seed, {static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(m)});
      if (auto tour = construct_tour(instance, field, params, rng)) tours.push_back(std::move(*tour));
    }
    if (result.timed_out) break;

    const Path* iteration_best = nullptr;
    for (const auto& t : tours) {
      if (!iteration_best || shorter(t, *iteration_best)) iteration_best = &t;
    }
    bool improved = false;
    if (iteration_best && (!result.best_path || shorter(*iteration_best, *result.best_path))) {
      result.best_path = *iteration_best;
      improved = true;
    }

    std::vector<Deposit> deposits;
    switch (params.variant) {
      case Variant::AS:
        for (const auto& t : tours) deposits.push_back({&t, DepositRule::Length, 1});
        break;
      case Variant::EliteAS:
        for (const auto& t : tours) deposits.push_back({&t, DepositRule::Length, 1});
        if (result.best_path) deposits.push_back({&*result.best_path, DepositRule::Length, elite_weight});
        break;
      case Variant::MMAS:
        if (iteration_best) deposits.push_back({iteration_best, DepositRule::Length, 1});
        if (improved) {
          const double tau_max = params.q / (params.rho * result.best_path->cost);
          bounds = PheromoneBounds{tau_max / (2.0 * static_cast<double>(map.cell_count())), tau_max};
        }
        break;
      case Variant::PFACO:
        break;
    }
    evaporate_and_deposit(field, deposits, params.rho, params.q, bounds);

    const double best = result.best_path ? result.best_path->cost : std::numeric_limits<double>::infinity();
    result.best_per_iteration.push_back(best);
    if (hooks.on_iteration) {
      std::size_t count = 0;
      for (const auto& d : deposits) count += static_cast<std::size_t>(d.multiplicity);
      hooks.on_iteration({k, best, static_cast<int>(tours.size()), count, &field});
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

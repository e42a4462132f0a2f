#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "antpath/gridworld.hpp"
#include "antpath/random.hpp"

namespace antpath {

enum class Variant { AS, EliteAS, MMAS, PFACO };

std::string_view variant_name(Variant v) noexcept;

// Starting pheromone for the baseline variants. PFACO ignores this and uses
// its distance-focused initialization.
enum class InitRule {
  Constant,         // tau0 = initial_tau on every legal edge
  InverseDistance,  // tau0 = 1 / d_ij
};

// Per-edge deposit of a path: Q / L, or Q / (L + turns).
enum class DepositRule { Length, LengthPlusTurns };

struct ColonyParams {
  int ants = 30;
  int iterations = 20;
  double alpha = 1.0;
  double beta = 3.0;
  double rho = 0.25;
  double q = 2.0;
  Variant variant = Variant::AS;
  double timeout_seconds = 120.0;
  std::uint64_t seed = 0;

  InitRule init = InitRule::Constant;
  double initial_tau = 1.0;
  // PFACO only: rewire the trail tail after every step instead of smoothing
  // the finished tour alone.
  bool ltos_per_step = false;

  // Throws ParameterError on the first violated constraint.
  void validate() const;
};

// Defaults per variant: alpha 1, beta 3, Q 2; rho 0.2 for PFACO and 0.25 otherwise.
ColonyParams default_params(Variant variant, int ants, int iterations);

// Pheromone per directed edge (node, direction). Only legal moves of the map
// the field was built for carry an edge; everything else reads as 0.
class PheromoneField {
 public:
  PheromoneField(const GridMap& map, double initial);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }

  bool has_edge(Node from, int direction) const noexcept;
  bool has_edge(Node from, Node to) const noexcept;
  double at(Node from, int direction) const noexcept;
  double get(Node from, Node to) const noexcept;
  // Throws InvalidPathError if (from, to) is not an edge.
  void set(Node from, Node to, double value);
  void add(Node from, Node to, double amount);

  // fn(Node from, Node to, double& tau) for every edge in row-major, direction order.
  template <typename Fn>
  void for_each_edge(Fn&& fn) {
    visit_edges(*this, std::forward<Fn>(fn));
  }
  template <typename Fn>
  void for_each_edge(Fn&& fn) const {
    visit_edges(*this, std::forward<Fn>(fn));
  }

  void scale(double factor) noexcept;
  void clamp(double lo, double hi) noexcept;

  std::size_t edge_count() const noexcept;
  double min_value() const noexcept;
  double max_value() const noexcept;
  // Max over incoming edges; 0 for cells with none (obstacles).
  double node_value(Node n) const noexcept;

  friend bool operator==(const PheromoneField&, const PheromoneField&) = default;

 private:
  template <typename Self, typename Fn>
  static void visit_edges(Self& self, Fn&& fn) {
    for (int y = 0; y < self.height_; ++y) {
      for (int x = 0; x < self.width_; ++x) {
        const std::size_t cell = static_cast<std::size_t>(y) * static_cast<std::size_t>(self.width_) +
                                 static_cast<std::size_t>(x);
        for (int d = 0; d < 8; ++d) {
          if (!(self.mask_[cell] & (1u << d))) continue;
          fn(Node{x, y}, Node{x + kDirections[d].dx, y + kDirections[d].dy}, self.tau_[cell * 8 + d]);
        }
      }
    }
  }

  std::size_t slot(Node from, int direction) const noexcept {
    return (static_cast<std::size_t>(from.y) * static_cast<std::size_t>(width_) +
            static_cast<std::size_t>(from.x)) * 8 + static_cast<std::size_t>(direction);
  }
  bool in_bounds(Node n) const noexcept { return n.x >= 0 && n.y >= 0 && n.x < width_ && n.y < height_; }

  int width_;
  int height_;
  std::vector<double> tau_;
  std::vector<std::uint8_t> mask_;
};

PheromoneField initial_field(const GridMap& map, const ColonyParams& params);

struct AntState {
  Node current;
  std::vector<std::uint8_t> visited;  // tabu list, indexed by GridMap::index
  std::vector<Node> trail;
  bool alive = true;

  static AntState at(const GridMap& map, Node start);
  void move_to(const GridMap& map, Node next);
};

struct Candidate {
  Node node;
  double probability;
};

// Eta = 1 / d(i, j). Throws DegenerateError for i == j.
double heuristic(Node i, Node j);

// Random-proportional rule over the unvisited legal neighbors of ant.current.
// An empty result signals a dead end.
std::vector<Candidate> transition_probabilities(const PheromoneField& field, const AntState& ant,
                                                const GridMap& map, double alpha, double beta);

// Roulette-wheel draw. Throws std::logic_error for an empty list.
Node sample_next(std::span<const Candidate> candidates, Rng& rng);

// Invoked after every step with the ant's trail; may drop interior trail nodes.
using TrailHook = std::function<void(std::vector<Node>& trail)>;

// One ant walk from start to goal. Returns nullopt on a dead end or after
// 3 * width * height steps.
std::optional<Path> construct_tour(const Instance& instance, const PheromoneField& field,
                                   const ColonyParams& params, Rng& rng, const TrailHook& hook = {});

struct Deposit {
  const Path* path;
  DepositRule rule = DepositRule::Length;
  int multiplicity = 1;
};

struct PheromoneBounds {
  double tau_min;
  double tau_max;
};

// Amount added to each edge of `path`. Throws DegenerateError for a zero denominator.
double deposit_amount(const Path& path, DepositRule rule, double q);

// tau <- (1 - rho) tau + sum of deposits along each path's directed edges,
// then clamp to `bounds` if given. Throws ParameterError unless 0 < rho < 1.
void evaporate_and_deposit(PheromoneField& field, std::span<const Deposit> deposits, double rho, double q,
                           std::optional<PheromoneBounds> bounds = std::nullopt);

struct IterationTrace {
  int iteration = 0;
  double best_so_far = 0.0;
  int successes = 0;
  std::size_t deposits = 0;  // multiset size of paths fed into the update
  const PheromoneField* field = nullptr;
};

struct RunHooks {
  std::function<void(const PheromoneField&)> on_initial;
  std::function<void(const IterationTrace&)> on_iteration;
  std::function<void(const PheromoneField&)> on_final;
};

struct RunResult {
  std::optional<Path> best_path;
  std::vector<double> best_per_iteration;  // best-so-far cost, +inf before the first success
  double elapsed = 0.0;
  bool succeeded = false;
  bool timed_out = false;
};

// True if a is shorter than b, or equally long with fewer turns.
bool shorter(const Path& a, const Path& b) noexcept;

// K iterations of M ants, one pheromone update per iteration. PFACO is
// forwarded to run_pfaco. A run that exceeds timeout_seconds is aborted and
// counted as failed. Throws InvalidInstanceError / ParameterError on bad input.
RunResult run_colony(const Instance& instance, const ColonyParams& params, const RunHooks& hooks = {});

}  // namespace antpath

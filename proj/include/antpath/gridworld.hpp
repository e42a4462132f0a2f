#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace antpath {

// Cell coordinates; origin top-left, x grows rightward, y grows downward.
struct Node {
  int x = 0;
  int y = 0;

  friend constexpr auto operator<=>(const Node&, const Node&) = default;
};

struct Direction {
  int dx;
  int dy;
};

// Fixed neighbor order used by every expansion and tie-break in the library.
inline constexpr std::array<Direction, 8> kDirections{{
    {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}, {1, 0}, {-1, 0},
}};

inline constexpr double kSqrt2 = 1.41421356237309504880;

// Index into kDirections for a unit move, or -1 if (dx, dy) is not one.
int direction_index(int dx, int dy) noexcept;

// Row-major occupancy grid. true = obstacle.
class GridMap {
 public:
  GridMap(int width, int height);
  GridMap(int width, int height, std::vector<std::uint8_t> cells);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t cell_count() const noexcept { return cells_.size(); }

  bool in_bounds(Node n) const noexcept {
    return n.x >= 0 && n.y >= 0 && n.x < width_ && n.y < height_;
  }
  bool blocked(Node n) const noexcept { return cells_[index(n)] != 0; }
  // In bounds and not an obstacle.
  bool is_free(Node n) const noexcept { return in_bounds(n) && !blocked(n); }

  void set_blocked(Node n, bool value = true);

  std::size_t index(Node n) const noexcept {
    return static_cast<std::size_t>(n.y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(n.x);
  }
  Node node_at(std::size_t index) const noexcept {
    return {static_cast<int>(index % static_cast<std::size_t>(width_)),
            static_cast<int>(index / static_cast<std::size_t>(width_))};
  }

  std::size_t obstacle_count() const noexcept;
  double density() const noexcept {
    return static_cast<double>(obstacle_count()) / static_cast<double>(cells_.size());
  }
  std::span<const std::uint8_t> cells() const noexcept { return cells_; }

  friend bool operator==(const GridMap&, const GridMap&) = default;

 private:
  int width_;
  int height_;
  std::vector<std::uint8_t> cells_;
};

class Instance {
 public:
  // Throws InvalidInstanceError unless start and goal are distinct free cells.
  Instance(GridMap map, Node start, Node goal);

  const GridMap& map() const noexcept { return map_; }
  Node start() const noexcept { return start_; }
  Node goal() const noexcept { return goal_; }

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  GridMap map_;
  Node start_;
  Node goal_;
};

struct Path {
  std::vector<Node> nodes;
  double cost = 0.0;
  int turns = 0;

  // Combined length + turn objective used for ranking and turn-penalized deposits.
  double score() const noexcept { return cost + static_cast<double>(turns); }
};

struct Neighbor {
  Node node;
  double step_cost;
  int direction;
};

double euclid(Node a, Node b) noexcept;

// True iff b is one of a's 8 neighbors, both are free, and a diagonal move
// does not squeeze between two obstacles (corner cutting).
bool legal_move(const GridMap& map, Node a, Node b) noexcept;

// Throws InvalidNodeError when `at` is out of bounds or blocked.
std::vector<Neighbor> neighbors(const GridMap& map, Node at);

// Validates every step and computes cost and turn count.
// Throws InvalidPathError for an empty sequence, illegal step or repeated node.
Path path_metrics(std::span<const Node> nodes, const GridMap& map);

// Number of interior nodes where the incoming and outgoing move vectors differ.
int count_turns(std::span<const Node> nodes) noexcept;

// Connected component id per cell (-1 for obstacles), labels in row-major discovery order.
std::vector<int> component_labels(const GridMap& map);
bool reachable(const GridMap& map, Node from, Node to);

// Ten maps for one size: index 0 obstacle-free, 1..5 single obstacle pattern
// (blocks, C-trap, L-trap, scattered cells, wall bars), 6..9 mixed patterns.
std::vector<GridMap> generate_dataset(int size, std::uint64_t seed);

// Canonical concave-trap map used for the convergence and stability comparisons.
// The pocket opens toward (0,0) while the goal corner sits behind it.
GridMap c_trap_map(int size);

// Uniform (map, start, goal) draws with start != goal and goal reachable.
// Maps lacking two connected free cells are skipped with a warning on stderr.
std::vector<Instance> sample_instances(std::span<const GridMap> maps, int count,
                                       std::uint64_t seed);

}  // namespace antpath

#include "antpath/gridworld.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <iostream>
#include <string>

#include "antpath/errors.hpp"
#include "antpath/random.hpp"

namespace antpath {

namespace {

std::string to_string(Node n) {
  return "(" + std::to_string(n.x) + "," + std::to_string(n.y) + ")";
}

}  // namespace

int direction_index(int dx, int dy) noexcept {
  for (int d = 0; d < static_cast<int>(kDirections.size()); ++d) {
    if (kDirections[d].dx == dx && kDirections[d].dy == dy) return d;
  }
  return -1;
}

GridMap::GridMap(int width, int height)
    : GridMap(width, height,
              std::vector<std::uint8_t>(
                  static_cast<std::size_t>(std::max(width, 0)) * static_cast<std::size_t>(std::max(height, 0)),
                  0)) {}

GridMap::GridMap(int width, int height, std::vector<std::uint8_t> cells)
    : width_(width), height_(height), cells_(std::move(cells)) {
  if (width < 2 || height < 2) {
    throw ParameterError("map must be at least 2x2, got " + std::to_string(width) + "x" +
                         std::to_string(height));
  }
  if (cells_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw ParameterError("cell count does not match map dimensions");
  }
  for (auto& c : cells_) c = c ? 1 : 0;
}

void GridMap::set_blocked(Node n, bool value) {
  if (!in_bounds(n)) throw InvalidNodeError("node out of bounds: " + to_string(n));
  cells_[index(n)] = value ? 1 : 0;
}

std::size_t GridMap::obstacle_count() const noexcept {
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
}

Instance::Instance(GridMap map, Node start, Node goal)
    : map_(std::move(map)), start_(start), goal_(goal) {
  if (!map_.is_free(start_)) {
    throw InvalidInstanceError("start " + to_string(start_) + " is out of bounds or blocked");
  }
  if (!map_.is_free(goal_)) {
    throw InvalidInstanceError("goal " + to_string(goal_) + " is out of bounds or blocked");
  }
  if (start_ == goal_) throw InvalidInstanceError("start and goal coincide at " + to_string(start_));
}

double euclid(Node a, Node b) noexcept {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

bool legal_move(const GridMap& map, Node a, Node b) noexcept {
  const int dx = b.x - a.x;
  const int dy = b.y - a.y;
  if ((dx == 0 && dy == 0) || std::abs(dx) > 1 || std::abs(dy) > 1) return false;
  if (!map.is_free(a) || !map.is_free(b)) return false;
  if (dx != 0 && dy != 0) {
    return map.is_free({a.x + dx, a.y}) && map.is_free({a.x, a.y + dy});
  }
  return true;
}

std::vector<Neighbor> neighbors(const GridMap& map, Node at) {
  if (!map.is_free(at)) throw InvalidNodeError("node " + to_string(at) + " is out of bounds or blocked");
  std::vector<Neighbor> out;
  out.reserve(kDirections.size());
  for (int d = 0; d < static_cast<int>(kDirections.size()); ++d) {
    const Node next{at.x + kDirections[d].dx, at.y + kDirections[d].dy};
    if (legal_move(map, at, next)) {
      const bool diagonal = kDirections[d].dx != 0 && kDirections[d].dy != 0;
      out.push_back({next, diagonal ? kSqrt2 : 1.0, d});
    }
  }
  return out;
}

int count_turns(std::span<const Node> nodes) noexcept {
  int turns = 0;
  for (std::size_t k = 1; k + 1 < nodes.size(); ++k) {
    const int in_x = nodes[k].x - nodes[k - 1].x;
    const int in_y = nodes[k].y - nodes[k - 1].y;
    const int out_x = nodes[k + 1].x - nodes[k].x;
    const int out_y = nodes[k + 1].y - nodes[k].y;
    if (in_x != out_x || in_y != out_y) ++turns;
  }
  return turns;
}

Path path_metrics(std::span<const Node> nodes, const GridMap& map) {
  if (nodes.empty()) throw InvalidPathError("empty node sequence");
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (!map.is_free(nodes[k])) {
      throw InvalidPathError("node " + std::to_string(k) + " " + to_string(nodes[k]) +
                             " is out of bounds or blocked");
    }
  }
  std::vector<std::uint8_t> seen(map.cell_count(), 0);
  double cost = 0.0;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    auto& mark = seen[map.index(nodes[k])];
    if (mark) throw InvalidPathError("node " + to_string(nodes[k]) + " visited twice");
    mark = 1;
    if (k == 0) continue;
    if (!legal_move(map, nodes[k - 1], nodes[k])) {
      throw InvalidPathError("illegal step " + to_string(nodes[k - 1]) + " -> " + to_string(nodes[k]));
    }
    const bool diagonal = nodes[k].x != nodes[k - 1].x && nodes[k].y != nodes[k - 1].y;
    cost += diagonal ? kSqrt2 : 1.0;
  }
  return Path{std::vector<Node>(nodes.begin(), nodes.end()), cost, count_turns(nodes)};
}

std::vector<int> component_labels(const GridMap& map) {
  std::vector<int> labels(map.cell_count(), -1);
  int next_label = 0;
  std::deque<Node> frontier;
  for (std::size_t i = 0; i < map.cell_count(); ++i) {
    const Node seed = map.node_at(i);
    if (map.blocked(seed) || labels[i] >= 0) continue;
    labels[i] = next_label;
    frontier.push_back(seed);
    while (!frontier.empty()) {
      const Node at = frontier.front();
      frontier.pop_front();
      for (const auto& nb : neighbors(map, at)) {
        auto& label = labels[map.index(nb.node)];
        if (label < 0) {
          label = next_label;
          frontier.push_back(nb.node);
        }
      }
    }
    ++next_label;
  }
  return labels;
}

bool reachable(const GridMap& map, Node from, Node to) {
  if (!map.is_free(from) || !map.is_free(to)) return false;
  const auto labels = component_labels(map);
  return labels[map.index(from)] == labels[map.index(to)];
}

namespace {

enum class Pattern { Blocks, CTrap, LTrap, Scattered, Bars };

constexpr double kMinDensity = 0.10;
constexpr double kMaxDensity = 0.25;

int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, std::max(lo, hi))(rng);
}

// Shape cells in local coordinates starting at (0,0).
std::vector<Node> make_shape(Pattern pattern, int size, Rng& rng) {
  std::vector<Node> cells;
  switch (pattern) {
    case Pattern::Scattered:
      cells.push_back({0, 0});
      break;
    case Pattern::Blocks: {
      const int w = uniform_int(rng, 1, std::max(2, size / 4));
      const int h = uniform_int(rng, 1, std::max(2, size / 4));
      for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) cells.push_back({x, y});
      break;
    }
    case Pattern::Bars: {
      const int len = uniform_int(rng, std::max(2, size / 3), std::max(3, 2 * size / 3));
      const bool horizontal = uniform_int(rng, 0, 1) == 0;
      for (int k = 0; k < len; ++k) cells.push_back(horizontal ? Node{k, 0} : Node{0, k});
      break;
    }
    case Pattern::LTrap: {
      const int a = uniform_int(rng, std::max(2, size / 4), std::max(3, size / 2));
      const int b = uniform_int(rng, std::max(2, size / 4), std::max(3, size / 2));
      const bool flip_x = uniform_int(rng, 0, 1) == 1;
      const bool flip_y = uniform_int(rng, 0, 1) == 1;
      const int cx = flip_x ? a - 1 : 0;
      const int cy = flip_y ? b - 1 : 0;
      for (int k = 0; k < a; ++k) cells.push_back({flip_x ? cx - k : cx + k, cy});
      for (int k = 1; k < b; ++k) cells.push_back({cx, flip_y ? cy - k : cy + k});
      break;
    }
    case Pattern::CTrap: {
      const int s = uniform_int(rng, std::max(3, size / 4), std::max(4, size / 2));
      const int open_side = uniform_int(rng, 0, 3);  // 0 left, 1 right, 2 top, 3 bottom
      for (int y = 0; y < s; ++y) {
        for (int x = 0; x < s; ++x) {
          const bool edge = x == 0 || y == 0 || x == s - 1 || y == s - 1;
          if (!edge) continue;
          const bool on_open = (open_side == 0 && x == 0 && y > 0 && y < s - 1) ||
                               (open_side == 1 && x == s - 1 && y > 0 && y < s - 1) ||
                               (open_side == 2 && y == 0 && x > 0 && x < s - 1) ||
                               (open_side == 3 && y == s - 1 && x > 0 && x < s - 1);
          if (!on_open) cells.push_back({x, y});
        }
      }
      break;
    }
  }
  return cells;
}

GridMap paint(int size, std::span<const Pattern> patterns, Rng& rng) {
  GridMap map(size, size);
  const double target = std::uniform_real_distribution<double>(kMinDensity, kMaxDensity)(rng);
  const auto max_cells = static_cast<std::size_t>(kMaxDensity * size * size);
  std::size_t blocked = 0;
  for (int attempt = 0; attempt < 400 && map.density() < target; ++attempt) {
    const Pattern pattern = patterns[static_cast<std::size_t>(
        uniform_int(rng, 0, static_cast<int>(patterns.size()) - 1))];
    const auto shape = make_shape(pattern, size, rng);
    int extent_x = 0, extent_y = 0;
    for (auto c : shape) {
      extent_x = std::max(extent_x, c.x + 1);
      extent_y = std::max(extent_y, c.y + 1);
    }
    if (extent_x > size || extent_y > size) continue;
    const int ox = uniform_int(rng, 0, size - extent_x);
    const int oy = uniform_int(rng, 0, size - extent_y);
    std::size_t added = 0;
    for (auto c : shape) added += map.blocked({ox + c.x, oy + c.y}) ? 0 : 1;
    if (blocked + added > max_cells) continue;
    for (auto c : shape) map.set_blocked({ox + c.x, oy + c.y});
    blocked += added;
  }
  return map;
}

// Largest component must hold most of the free space so random start/goal
// draws are rarely rejected.
bool well_connected(const GridMap& map) {
  const auto labels = component_labels(map);
  std::vector<std::size_t> sizes;
  std::size_t free_cells = 0;
  for (int label : labels) {
    if (label < 0) continue;
    ++free_cells;
    if (static_cast<std::size_t>(label) >= sizes.size()) sizes.resize(static_cast<std::size_t>(label) + 1, 0);
    ++sizes[static_cast<std::size_t>(label)];
  }
  if (sizes.empty()) return false;
  const auto largest = *std::max_element(sizes.begin(), sizes.end());
  return largest >= 2 && static_cast<double>(largest) >= 0.8 * static_cast<double>(free_cells);
}

}  // namespace

std::vector<GridMap> generate_dataset(int size, std::uint64_t seed) {
  if (size < 4) throw ParameterError("map size must be at least 4, got " + std::to_string(size));
  using P = Pattern;
  const std::vector<std::vector<Pattern>> recipes = {
      {P::Blocks}, {P::CTrap}, {P::LTrap}, {P::Scattered}, {P::Bars},
  };
  const std::vector<Pattern> mixed = {P::Blocks, P::CTrap, P::LTrap, P::Scattered, P::Bars};

  std::vector<GridMap> maps;
  maps.emplace_back(size, size);
  for (std::uint64_t index = 1; index < 10; ++index) {
    Rng rng = make_stream(seed, {static_cast<std::uint64_t>(size), index});
    const auto& patterns = index <= recipes.size() ? recipes[index - 1] : mixed;
    GridMap candidate = paint(size, patterns, rng);
    for (int retry = 0; retry < 100 && !well_connected(candidate); ++retry) {
      candidate = paint(size, patterns, rng);
    }
    if (!well_connected(candidate)) candidate = GridMap(size, size);
    maps.push_back(std::move(candidate));
  }
  return maps;
}

GridMap c_trap_map(int size) {
  if (size < 8) throw ParameterError("C-trap map needs size >= 8, got " + std::to_string(size));
  GridMap map(size, size);
  const int lip = size / 5;       // offset of the two short lips from the open corner
  const int back = size - 3;      // the two long walls facing the goal corner
  const int mid = size / 2;
  for (int x = mid; x <= back; ++x) map.set_blocked({x, lip});
  for (int y = lip; y <= back; ++y) map.set_blocked({back, y});
  for (int x = lip; x <= back; ++x) map.set_blocked({x, back});
  for (int y = mid; y <= back; ++y) map.set_blocked({lip, y});
  return map;
}

std::vector<Instance> sample_instances(std::span<const GridMap> maps, int count, std::uint64_t seed) {
  if (count < 1) throw ParameterError("instance count must be >= 1");

  struct Candidate {
    std::size_t map_index;
    std::vector<int> labels;
    std::vector<Node> free_cells;
  };
  std::vector<Candidate> eligible;
  for (std::size_t m = 0; m < maps.size(); ++m) {
    Candidate c{m, component_labels(maps[m]), {}};
    std::vector<int> sizes;
    for (std::size_t i = 0; i < c.labels.size(); ++i) {
      const int label = c.labels[i];
      if (label < 0) continue;
      c.free_cells.push_back(maps[m].node_at(i));
      if (static_cast<std::size_t>(label) >= sizes.size()) sizes.resize(static_cast<std::size_t>(label) + 1, 0);
      ++sizes[static_cast<std::size_t>(label)];
    }
    if (sizes.empty() || *std::max_element(sizes.begin(), sizes.end()) < 2) {
      std::cerr << "warning: map " << m << " has no two connected free cells; skipped\n";
      continue;
    }
    eligible.push_back(std::move(c));
  }
  if (eligible.empty()) throw ParameterError("no map admits a start/goal pair");

  Rng rng = make_stream(seed, {0x5a4d50ULL});
  std::vector<Instance> out;
  out.reserve(static_cast<std::size_t>(count));
  while (out.size() < static_cast<std::size_t>(count)) {
    const auto& c = eligible[std::uniform_int_distribution<std::size_t>(0, eligible.size() - 1)(rng)];
    std::uniform_int_distribution<std::size_t> pick(0, c.free_cells.size() - 1);
    const Node start = c.free_cells[pick(rng)];
    const Node goal = c.free_cells[pick(rng)];
    const GridMap& map = maps[c.map_index];
    if (start == goal || c.labels[map.index(start)] != c.labels[map.index(goal)]) continue;
    out.emplace_back(map, start, goal);
  }
  return out;
}

}  // namespace antpath

#include "antpath/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <tuple>
#include <vector>

#include "antpath/errors.hpp"

namespace antpath {

double octile(Node a, Node b) noexcept {
  const int dx = std::abs(a.x - b.x);
  const int dy = std::abs(a.y - b.y);
  return std::max(dx, dy) + (kSqrt2 - 1.0) * std::min(dx, dy);
}

namespace {

struct QueueEntry {
  double f;
  double h;
  std::uint64_t order;
  std::size_t cell;

  bool operator>(const QueueEntry& o) const {
    return std::tie(f, h, order) > std::tie(o.f, o.h, o.order);
  }
};

OracleResult best_first(const Instance& instance, bool use_heuristic) {
  const auto t0 = std::chrono::steady_clock::now();
  const GridMap& map = instance.map();
  const Node goal = instance.goal();
  const std::size_t n = map.cell_count();
  constexpr auto kUnset = std::numeric_limits<std::size_t>::max();

  std::vector<double> g(n, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> parent(n, kUnset);
  std::vector<std::uint8_t> closed(n, 0);
  std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<>> open;
  std::uint64_t order = 0;

  auto heuristic = [&](Node at) { return use_heuristic ? octile(at, goal) : 0.0; };

  const std::size_t start_cell = map.index(instance.start());
  const std::size_t goal_cell = map.index(goal);
  g[start_cell] = 0.0;
  open.push({heuristic(instance.start()), heuristic(instance.start()), order++, start_cell});

  std::size_t expanded = 0;
  bool found = false;
  while (!open.empty()) {
    const QueueEntry top = open.top();
    open.pop();
    if (closed[top.cell]) continue;
    closed[top.cell] = 1;
    if (top.cell == goal_cell) {
      found = true;
      break;
    }
    ++expanded;
    const Node at = map.node_at(top.cell);
    for (const auto& nb : neighbors(map, at)) {
      const std::size_t next = map.index(nb.node);
      if (closed[next]) continue;
      const double tentative = g[top.cell] + nb.step_cost;
      if (tentative < g[next]) {
        g[next] = tentative;
        parent[next] = top.cell;
        const double h = heuristic(nb.node);
        open.push({tentative + h, h, order++, next});
      }
    }
  }
  if (!found) throw NoPathError("goal is unreachable from start");

  std::vector<Node> nodes;
  for (std::size_t cell = goal_cell; cell != kUnset; cell = parent[cell]) nodes.push_back(map.node_at(cell));
  std::reverse(nodes.begin(), nodes.end());

  OracleResult result;
  result.path = path_metrics(nodes, map);
  result.expanded = expanded;
  result.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

}  // namespace

OracleResult astar(const Instance& instance) { return best_first(instance, true); }

OracleResult dijkstra(const Instance& instance) { return best_first(instance, false); }

}  // namespace antpath

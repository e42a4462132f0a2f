#pragma once

#include <cstddef>

#include "antpath/gridworld.hpp"

namespace antpath {

struct OracleResult {
  Path path;
  std::size_t expanded = 0;
  double elapsed = 0.0;  // seconds
};

// Shortest 8-connected distance on an obstacle-free grid; admissible and consistent.
double octile(Node a, Node b) noexcept;

// Minimal-cost path with the octile heuristic. Ties on f are broken by the
// smaller heuristic, then by discovery order (which follows kDirections).
// Throws NoPathError when the goal is unreachable.
OracleResult astar(const Instance& instance);

// Uniform-cost search with the same tie-breaking; reference for astar.
OracleResult dijkstra(const Instance& instance);

}  // namespace antpath

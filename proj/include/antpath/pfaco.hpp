#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "antpath/colony.hpp"
#include "antpath/gridworld.hpp"

namespace antpath {

// Distance-focused initial pheromone. For every legal edge (i, j):
//   tau0 = a * |ST| / (|Sj| + |jT|),  a = 2 if |iT| > |jT| else 1.
// Throws DegenerateError when start == goal.
PheromoneField adpi_init(const Instance& instance);
PheromoneField adpi_init(const GridMap& map, Node start, Node goal);

// ceil(0.1 * ants): global elite archive size.
std::size_t elite_capacity(int ants);
// ceil(ants / 2): per-iteration top-quality set size.
std::size_t top_quality_size(int ants);
inline constexpr int kEliteReplicas = 5;

// Best distinct paths seen so far, ordered by score (length + turns) and then
// by node sequence, best first.
class EliteArchive {
 public:
  explicit EliteArchive(std::size_t capacity);

  std::size_t capacity() const noexcept { return capacity_; }
  std::span<const Path> solutions() const noexcept { return solutions_; }
  bool empty() const noexcept { return solutions_.empty(); }

  // Inserts `path` if it is new and ranks within capacity. Returns true if kept.
  bool offer(const Path& path);

 private:
  std::size_t capacity_;
  std::vector<Path> solutions_;
};

// Successful (already smoothed) tours of one iteration.
struct IterationPool {
  std::vector<Path> solutions;
};

// Strict ranking used by the archive: score, then lexicographic node sequence.
bool ranks_before(const Path& a, const Path& b) noexcept;

// One elite-reinforced update: the archive absorbs the pool, the best half of
// the pool plus every elite replicated five times deposit under the
// length + turns rule. An empty pool evaporates only. Returns the number of
// paths (with multiplicity) that deposited.
std::size_t psprs_update(EliteArchive& archive, const IterationPool& pool, PheromoneField& field,
                         const ColonyParams& params);

// Drops interior nodes whose neighbors are directly connected whenever that
// strictly lowers length + turns; repeats passes until nothing changes.
Path ltos_smooth(const Path& path, const GridMap& map);

// Per-step form: tries the same rewiring on the trail's last interior node(s).
void ltos_rewire_tail(std::vector<Node>& trail, const GridMap& map);

// Q / (L + turns). Throws DegenerateError for a single-node path.
double ltos_deposit(const Path& path, double q);

// Full PFACO run (params.variant is not checked here; run_colony dispatches on it).
RunResult run_pfaco(const Instance& instance, const ColonyParams& params, const RunHooks& hooks = {});

}  // namespace antpath

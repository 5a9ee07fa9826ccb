#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "flexmapf/conflicts.hpp"
#include "flexmapf/constraints.hpp"
#include "flexmapf/path.hpp"

namespace flexmapf {

/// Constraint-tree node. Paths are shared with the parent until replanned.
struct CTNode {
  std::vector<Constraint> constraints;
  std::vector<std::shared_ptr<const Path>> paths;
  std::vector<int> costs;
  std::vector<int> lower_bounds;
  int soc = 0;
  int solb = 0;

  std::vector<Conflict> conflicts;
  std::vector<int> agent_conflicts;
  int conflict_total = 0;

  const CTNode* parent = nullptr;
  int depth = 1;
  std::uint64_t id = 0;

  /// EES keys: inadmissible cost estimate and distance-to-go.
  double f_hat = 0.0;
  int d_hat = 0;

  /// Agents whose paths differ from the parent's.
  std::vector<AgentId> replanned;

  int num_agents() const { return static_cast<int>(paths.size()); }

  std::vector<const Path*> path_ptrs() const {
    std::vector<const Path*> out;
    out.reserve(paths.size());
    for (const auto& p : paths) out.push_back(p.get());
    return out;
  }

  void recompute_totals() {
    soc = 0;
    solb = 0;
    for (std::size_t i = 0; i < costs.size(); ++i) {
      soc += costs[i];
      solb += lower_bounds[i];
    }
  }
};

}  // namespace flexmapf

#pragma once

#include <climits>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "flexmapf/constraints.hpp"
#include "flexmapf/grid_map.hpp"
#include "flexmapf/path.hpp"

namespace flexmapf {

/// Exact static distance to one target; unreachable cells hold kUnreachable.
class HeuristicTable {
 public:
  static constexpr int kUnreachable = INT_MAX;

  HeuristicTable() = default;
  explicit HeuristicTable(std::vector<int> distances) : dist_(std::move(distances)) {}

  int operator()(VertexId v) const { return dist_[v]; }
  const std::vector<int>& distances() const { return dist_; }

 private:
  std::vector<int> dist_;
};

HeuristicTable compute_h(const GridMap& map, VertexId target);

/// Counts conflicts a candidate move would have with the other agents' paths,
/// treating a finished agent as parked on its target forever.
class ConflictAvoidanceTable {
 public:
  ConflictAvoidanceTable(const GridMap& map, std::span<const Path* const> paths, AgentId skip);

  int vertex_conflicts(VertexId v, int t) const;
  int edge_conflicts(VertexId from, VertexId to, int t) const;
  /// Counts are the same for all t > latest_time().
  int latest_time() const { return latest_time_; }

 private:
  std::uint64_t edge_key(VertexId from, VertexId to, int t) const {
    return ((static_cast<std::uint64_t>(from) * num_cells_ + static_cast<std::uint64_t>(to)) << 21) |
           static_cast<std::uint64_t>(t);
  }

  std::uint64_t num_cells_;
  std::unordered_map<std::uint64_t, int> vertices_;
  std::unordered_map<std::uint64_t, int> edges_;
  std::unordered_map<VertexId, int> parked_from_;
  int latest_time_ = 0;
};

struct LowLevelRequest {
  AgentId agent = 0;
  VertexId start = 0;
  VertexId target = 0;
  const HeuristicTable* heuristic = nullptr;
  const ConstraintTable* constraints = nullptr;
  /// Optional; without it every node has zero conflicts.
  const ConflictAvoidanceTable* avoidance = nullptr;
  double w = 1.0;
  /// Distributed flex added to the threshold.
  double delta = 0.0;
  /// Lower bound carried from the parent CT node.
  int lb_parent = 0;
};

struct LowLevelResult {
  Path path;
  int cost = 0;
  /// Minimum f over OPEN when the goal was selected.
  int f_min = 0;
  int lb = 0;
  /// Threshold in force when the goal was selected.
  double tau = 0.0;
  int conflicts = 0;
  std::int64_t expanded = 0;
  std::int64_t generated = 0;
};

/// Threshold w * max(f_min, lb_parent) + delta, re-evaluated as f_min rises.
/// Returns nullopt when no path satisfies the constraints within the horizon.
std::optional<LowLevelResult> focal_search(const GridMap& map, const LowLevelRequest& req);

/// Focal phase as in focal_search, then best-first expansion on the same tree
/// until the optimal constrained cost is proven or reaches the focal path's
/// cost. Returns the focal path with the tightened lower bound.
std::optional<LowLevelResult> fastar_search(const GridMap& map, const LowLevelRequest& req);

/// Optimal constrained cost from start to a final arrival at target, pruned
/// at `max_cost`.
std::optional<int> optimal_cost(const GridMap& map, VertexId start, VertexId target,
                                const HeuristicTable& h, const ConstraintTable& constraints,
                                int max_cost = INT_MAX);

/// Earliest timestep at which `vertex` can be occupied from `start` under the
/// constraints (no requirement to stay).
std::optional<int> earliest_arrival(const GridMap& map, VertexId start, VertexId vertex,
                                    const ConstraintTable& constraints);

}  // namespace flexmapf

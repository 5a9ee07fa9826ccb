#pragma once

#include <climits>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "flexmapf/grid_map.hpp"
#include "flexmapf/path.hpp"

namespace flexmapf {

inline constexpr int kForever = INT_MAX;

enum class ConstraintKind {
  vertex,      ///< agent may not occupy `vertex` at `t`
  edge,        ///< agent may not move `from` -> `vertex` arriving at `t`
  range,       ///< agent may not occupy `vertex` at any timestep in [0, t]
  length_leq,  ///< agent finishes with cost <= t; others may not occupy its target (`vertex`) at >= t
  length_gt,   ///< agent finishes with cost > t
};

struct Constraint {
  ConstraintKind kind = ConstraintKind::vertex;
  AgentId agent = 0;
  VertexId from = -1;
  VertexId vertex = -1;
  int t = 0;

  static Constraint at_vertex(AgentId a, VertexId v, int t) { return {ConstraintKind::vertex, a, -1, v, t}; }
  static Constraint at_edge(AgentId a, VertexId u, VertexId v, int t) { return {ConstraintKind::edge, a, u, v, t}; }
  static Constraint in_range(AgentId a, VertexId v, int t_ub) { return {ConstraintKind::range, a, -1, v, t_ub}; }
  static Constraint length_at_most(AgentId a, VertexId target, int t) {
    return {ConstraintKind::length_leq, a, -1, target, t};
  }
  static Constraint length_more_than(AgentId a, VertexId target, int t) {
    return {ConstraintKind::length_gt, a, -1, target, t};
  }

  friend bool operator==(const Constraint&, const Constraint&) = default;
};

/// The constraints that bind `agent`: its own, plus length-at-most constraints
/// of other agents (which forbid their targets from the bound onward).
std::vector<Constraint> constraints_for(AgentId agent, std::span<const Constraint> all);

/// True if `path` breaks `c` (for a length-at-most constraint on another agent,
/// this means visiting that agent's target at or after the bound).
bool violates(const Path& path, const Constraint& c);

/// Per-search lookup structure over the constraints binding one agent.
class ConstraintTable {
 public:
  ConstraintTable(const GridMap& map, AgentId agent, std::span<const Constraint> constraints);

  bool vertex_blocked(VertexId v, int t) const;
  /// Move from -> to arriving at timestep t.
  bool edge_blocked(VertexId from, VertexId to, int t) const;

  /// Latest timestep at which v is blocked; -1 if never, kForever if blocked
  /// from some timestep onward.
  int last_blocked(VertexId v) const;

  int earliest_goal() const { return earliest_goal_; }
  int latest_goal() const { return latest_goal_; }
  bool infeasible() const { return earliest_goal_ > latest_goal_; }

  /// Arrival at `target` at t may be final: within the length bounds and no
  /// block on the target at or after t.
  bool goal_allowed(VertexId target, int t) const;
  /// Lower bound on a final arrival time at `target`.
  int earliest_final_arrival(VertexId target) const;

  /// No search needs timesteps beyond this.
  int horizon() const { return horizon_; }
  /// Every query answers the same for all t > latest_time().
  int latest_time() const { return latest_time_; }

 private:
  static std::uint64_t key(VertexId v, int t) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(v)) << 32) | static_cast<std::uint32_t>(t);
  }
  std::uint64_t edge_key(VertexId from, VertexId to, int t) const {
    return ((static_cast<std::uint64_t>(from) * num_cells_ + static_cast<std::uint64_t>(to)) << 21) |
           static_cast<std::uint64_t>(t);
  }

  int num_cells_;
  std::unordered_set<std::uint64_t> vertex_points_;
  std::unordered_set<std::uint64_t> edge_points_;
  std::unordered_map<VertexId, int> last_point_;
  std::unordered_map<VertexId, int> range_ub_;
  std::unordered_map<VertexId, int> blocked_from_;
  int earliest_goal_ = 0;
  int latest_goal_ = kForever;
  int horizon_ = 0;
  int latest_time_ = 0;
};

}  // namespace flexmapf

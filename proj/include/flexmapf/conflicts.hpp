#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "flexmapf/constraints.hpp"
#include "flexmapf/grid_map.hpp"
#include "flexmapf/path.hpp"

namespace flexmapf {

class HeuristicTable;
struct CTNode;

enum class ConflictType { vertex, edge, corridor, target };

/// Ordered by selection priority, highest first.
enum class ConflictClass { target, corridor, cardinal, semi_cardinal, non_cardinal, unclassified };

const char* to_string(ConflictClass c);

/// Maximal chain of degree-2 cells plus the two cells that bound it.
/// `interior` runs from the `begin` side to the `end` side.
struct Corridor {
  std::vector<VertexId> interior;
  VertexId begin = -1;
  VertexId end = -1;
};

struct CorridorInfo {
  Corridor corridor;
  VertexId exit1 = -1;  ///< where agent1 leaves the corridor
  VertexId exit2 = -1;
  int t_min1 = 0;  ///< earliest agent1 can reach exit1
  int t_min2 = 0;
  int t_exit1 = 0;  ///< when agent1's current path reaches exit1
  int t_exit2 = 0;
};

/// A conflict between agent1 and agent2.
///  - vertex: both at `vertex` at `t`.
///  - edge: agent1 moves from -> vertex arriving at t, agent2 the reverse.
///  - target: agent1 occupies agent2's target `vertex` at `t` >= agent2's cost.
///  - corridor: opposite traversals of `corridor_info->corridor`.
struct Conflict {
  ConflictType type = ConflictType::vertex;
  AgentId agent1 = 0;
  AgentId agent2 = 0;
  VertexId from = -1;
  VertexId vertex = -1;
  int t = 0;
  ConflictClass cls = ConflictClass::unclassified;
  std::optional<CorridorInfo> corridor_info;
};

struct ConflictReport {
  std::vector<Conflict> conflicts;
  std::vector<int> per_agent;
  int total = 0;
};

/// Every vertex and edge conflict between pairs of paths. Agents park on
/// their targets after their last step. One entry per (pair, location, t).
ConflictReport detect_conflicts(std::span<const Path* const> paths, int num_agents);

/// Conflicts between two paths, appended to `out`.
void detect_pair_conflicts(const Path& a, const Path& b, std::vector<Conflict>& out);

std::optional<Corridor> find_corridor(const GridMap& map, VertexId v);

/// What classification and splitting need to know about the instance.
struct ProblemView {
  const GridMap* map = nullptr;
  std::span<const VertexId> starts;
  std::span<const VertexId> targets;
  std::span<const HeuristicTable> heuristics;
};

struct ClassifyOptions {
  bool prioritize = true;
  bool symmetry = true;
};

/// Assigns a class to a raw vertex/edge conflict of `node`. Target and
/// corridor checks run when symmetry reasoning is enabled; cardinality when
/// prioritization is enabled. Corridor conflicts are rewritten in place.
Conflict classify_conflict(const ProblemView& problem, const CTNode& node, const Conflict& c,
                           const ClassifyOptions& options);

/// Highest class first, then earliest timestep, then lowest agent pair.
/// Stops classifying early once nothing better can be found.
Conflict choose_conflict(const ProblemView& problem, const CTNode& node, const ClassifyOptions& options);

/// The two branching constraints. For a target conflict both constrain the
/// parked agent: (finish later than t, finish by t).
std::pair<Constraint, Constraint> split_conflict(const Conflict& c);

struct DelayEstimate {
  Constraint constraint;
  int delay = 0;
};

struct DelayReport {
  std::vector<DelayEstimate> estimates;
  int sum = 0;
};

/// Rule-based delays for the constraints binding `agent`, measured against its
/// path in the parent node. Each delay is clamped at zero.
DelayReport estimate_delays(std::span<const Constraint> constraints, AgentId agent, const Path& parent_path);

}  // namespace flexmapf

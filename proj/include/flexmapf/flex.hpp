#pragma once

#include <optional>
#include <span>
#include <string>

#include "flexmapf/grid_map.hpp"

namespace flexmapf {

enum class FlexMode { none, gfd, cfd, dfd, mfd };

const char* to_string(FlexMode mode);
std::optional<FlexMode> parse_flex_mode(const std::string& text);

/// Which rule produced the distributed flex.
enum class FlexBranch {
  none,          ///< flex disabled
  fallback,      ///< negative maximum flex, distributed as is
  greedy,        ///< all of the maximum flex
  conflict,      ///< conflict-proportional share
  delay,         ///< delay estimate plus conflict-proportional share of the rest
  mixed_delay,   ///< mixed strategy accepted the delay-based flex
  mixed_conflict,
  mixed_frontier,  ///< mixed strategy re-derived the maximum from the min-SOLB node
  mixed_zero,
};

const char* to_string(FlexBranch branch);

struct FlexComputation {
  double delta_max = 0.0;
  double rho = 0.0;
  double delta_d = 0.0;
  double delta = 0.0;
  FlexBranch branch = FlexBranch::none;
};

/// Snapshot of the node being built for a replan of `agent`. Costs and lower
/// bounds of the other agents are the ones the child will carry.
struct FlexInputs {
  double w = 1.0;
  AgentId agent = 0;
  std::span<const int> costs;
  std::span<const int> lower_bounds;
  /// lb of the replanned agent in the parent node.
  int lb_parent = 0;
  /// Conflicts of the agent and in total, in the parent node.
  int agent_conflicts = 0;
  int total_conflicts = 0;
  /// Sum of estimated delays of the agent's constraints.
  int delay_sum = 0;
};

/// Mixed-strategy extras: the global lower bound and the lower bounds of the
/// frontier node that attains it.
struct FrontierView {
  double lb = 0.0;
  std::span<const int> lower_bounds;
};

/// Sum over other agents of w * lb_j - c_j.
double max_allowed_flex(double w, std::span<const int> costs, std::span<const int> lower_bounds, AgentId agent);

/// Agent's share of the parent's conflicts; zero for a conflict-free parent.
double conflict_ratio(int agent_conflicts, int total_conflicts);

FlexComputation gfd_flex(const FlexInputs& in);
FlexComputation cfd_flex(const FlexInputs& in);
FlexComputation dfd_flex(const FlexInputs& in);
FlexComputation mfd_flex(const FlexInputs& in, const FrontierView& frontier);

FlexComputation compute_flex(FlexMode mode, const FlexInputs& in, const FrontierView& frontier);

/// w * max(f_min, lb_parent) + delta.
double threshold(double w, int f_min, int lb_parent, double delta);

}  // namespace flexmapf

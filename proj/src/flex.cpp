#include "flexmapf/flex.hpp"

#include <algorithm>

namespace flexmapf {

namespace {

constexpr double kEps = 1e-9;

int sum_except(std::span<const int> values, AgentId agent) {
  int total = 0;
  for (std::size_t j = 0; j < values.size(); ++j)
    if (static_cast<AgentId>(j) != agent) total += values[j];
  return total;
}

}  // namespace

const char* to_string(FlexMode mode) {
  switch (mode) {
    case FlexMode::none: return "none";
    case FlexMode::gfd: return "gfd";
    case FlexMode::cfd: return "cfd";
    case FlexMode::dfd: return "dfd";
    case FlexMode::mfd: return "mfd";
  }
  return "?";
}

std::optional<FlexMode> parse_flex_mode(const std::string& text) {
  for (FlexMode m : {FlexMode::none, FlexMode::gfd, FlexMode::cfd, FlexMode::dfd, FlexMode::mfd})
    if (text == to_string(m)) return m;
  return std::nullopt;
}

const char* to_string(FlexBranch branch) {
  switch (branch) {
    case FlexBranch::none: return "none";
    case FlexBranch::fallback: return "fallback";
    case FlexBranch::greedy: return "greedy";
    case FlexBranch::conflict: return "conflict";
    case FlexBranch::delay: return "delay";
    case FlexBranch::mixed_delay: return "mixed-delay";
    case FlexBranch::mixed_conflict: return "mixed-conflict";
    case FlexBranch::mixed_frontier: return "mixed-frontier";
    case FlexBranch::mixed_zero: return "mixed-zero";
  }
  return "?";
}

double max_allowed_flex(double w, std::span<const int> costs, std::span<const int> lower_bounds, AgentId agent) {
  double flex = 0.0;
  for (std::size_t j = 0; j < costs.size(); ++j)
    if (static_cast<AgentId>(j) != agent) flex += w * lower_bounds[j] - costs[j];
  return flex;
}

double conflict_ratio(int agent_conflicts, int total_conflicts) {
  if (total_conflicts <= 0) return 0.0;
  return std::clamp(static_cast<double>(agent_conflicts) / total_conflicts, 0.0, 1.0);
}

FlexComputation gfd_flex(const FlexInputs& in) {
  FlexComputation out;
  out.delta_max = max_allowed_flex(in.w, in.costs, in.lower_bounds, in.agent);
  out.delta = out.delta_max;
  out.branch = out.delta_max < 0 ? FlexBranch::fallback : FlexBranch::greedy;
  return out;
}

FlexComputation cfd_flex(const FlexInputs& in) {
  FlexComputation out;
  out.delta_max = max_allowed_flex(in.w, in.costs, in.lower_bounds, in.agent);
  out.rho = conflict_ratio(in.agent_conflicts, in.total_conflicts);
  if (out.delta_max < 0) {
    out.delta = out.delta_max;
    out.branch = FlexBranch::fallback;
    return out;
  }
  out.delta = out.rho * out.delta_max;
  out.branch = FlexBranch::conflict;
  return out;
}

FlexComputation dfd_flex(const FlexInputs& in) {
  FlexComputation out;
  out.delta_max = max_allowed_flex(in.w, in.costs, in.lower_bounds, in.agent);
  out.rho = conflict_ratio(in.agent_conflicts, in.total_conflicts);
  if (out.delta_max < 0) {
    out.delta = out.delta_max;
    out.branch = FlexBranch::fallback;
    return out;
  }
  out.delta_d = std::clamp(static_cast<double>(in.delay_sum), 0.0, out.delta_max);
  out.delta = out.delta_d + out.rho * (out.delta_max - out.delta_d);
  out.branch = FlexBranch::delay;
  return out;
}

FlexComputation mfd_flex(const FlexInputs& in, const FrontierView& frontier) {
  FlexComputation out = dfd_flex(in);
  if (out.delta_max < 0) return out;

  const int others_cost = sum_except(in.costs, in.agent);
  auto globally_bounded = [&](double delta) {
    return in.w * in.lb_parent + delta + others_cost <= in.w * frontier.lb + kEps;
  };

  if (globally_bounded(out.delta)) {
    out.branch = FlexBranch::mixed_delay;
    return out;
  }
  out.delta_d = 0.0;
  out.delta = out.rho * out.delta_max;
  if (globally_bounded(out.delta)) {
    out.branch = FlexBranch::mixed_conflict;
    return out;
  }
  if (frontier.lower_bounds.size() == in.lower_bounds.size()) {
    const int others_lb_frontier = sum_except(frontier.lower_bounds, in.agent);
    const int others_lb = sum_except(in.lower_bounds, in.agent);
    if (others_lb_frontier < others_lb && others_cost < in.w * others_lb_frontier) {
      const double reduced_max = in.w * others_lb_frontier - others_cost;
      out.delta = out.rho * reduced_max;
      out.branch = FlexBranch::mixed_frontier;
      return out;
    }
  }
  out.delta = 0.0;
  out.branch = FlexBranch::mixed_zero;
  return out;
}

FlexComputation compute_flex(FlexMode mode, const FlexInputs& in, const FrontierView& frontier) {
  switch (mode) {
    case FlexMode::none: {
      FlexComputation out;
      out.delta_max = max_allowed_flex(in.w, in.costs, in.lower_bounds, in.agent);
      return out;
    }
    case FlexMode::gfd: return gfd_flex(in);
    case FlexMode::cfd: return cfd_flex(in);
    case FlexMode::dfd: return dfd_flex(in);
    case FlexMode::mfd: return mfd_flex(in, frontier);
  }
  return {};
}

double threshold(double w, int f_min, int lb_parent, double delta) {
  return w * std::max(f_min, lb_parent) + delta;
}

}  // namespace flexmapf

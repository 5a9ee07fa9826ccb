#include "flexmapf/constraints.hpp"

#include <algorithm>

namespace flexmapf {

std::vector<Constraint> constraints_for(AgentId agent, std::span<const Constraint> all) {
  std::vector<Constraint> out;
  for (const Constraint& c : all) {
    if (c.agent == agent || c.kind == ConstraintKind::length_leq) out.push_back(c);
  }
  return out;
}

bool violates(const Path& path, const Constraint& c) {
  const int cost = path.cost();
  if (c.agent != path.agent) {
    if (c.kind != ConstraintKind::length_leq) return false;
    for (int t = c.t; t <= std::max(cost, c.t); ++t)
      if (path.at(t) == c.vertex) return true;
    return false;
  }
  switch (c.kind) {
    case ConstraintKind::vertex:
      return path.at(c.t) == c.vertex;
    case ConstraintKind::edge:
      return c.t >= 1 && c.t <= cost && path.at(c.t - 1) == c.from && path.at(c.t) == c.vertex;
    case ConstraintKind::range:
      for (int t = 0; t <= c.t; ++t)
        if (path.at(t) == c.vertex) return true;
      return false;
    case ConstraintKind::length_leq:
      return cost > c.t;
    case ConstraintKind::length_gt:
      return cost <= c.t;
  }
  return false;
}

ConstraintTable::ConstraintTable(const GridMap& map, AgentId agent, std::span<const Constraint> constraints)
    : num_cells_(map.num_cells()) {
  int latest_time = 0;
  for (const Constraint& c : constraints) {
    if (c.agent != agent) {
      if (c.kind != ConstraintKind::length_leq) continue;
      auto [it, inserted] = blocked_from_.try_emplace(c.vertex, c.t);
      if (!inserted) it->second = std::min(it->second, c.t);
      latest_time = std::max(latest_time, c.t);
      continue;
    }
    switch (c.kind) {
      case ConstraintKind::vertex: {
        vertex_points_.insert(key(c.vertex, c.t));
        auto [it, inserted] = last_point_.try_emplace(c.vertex, c.t);
        if (!inserted) it->second = std::max(it->second, c.t);
        break;
      }
      case ConstraintKind::edge:
        edge_points_.insert(edge_key(c.from, c.vertex, c.t));
        break;
      case ConstraintKind::range: {
        auto [it, inserted] = range_ub_.try_emplace(c.vertex, c.t);
        if (!inserted) it->second = std::max(it->second, c.t);
        break;
      }
      case ConstraintKind::length_leq:
        latest_goal_ = std::min(latest_goal_, c.t);
        break;
      case ConstraintKind::length_gt:
        earliest_goal_ = std::max(earliest_goal_, c.t + 1);
        break;
    }
    latest_time = std::max(latest_time, c.kind == ConstraintKind::length_gt ? c.t + 1 : c.t);
  }
  latest_time_ = latest_time;
  horizon_ = latest_time + map.num_cells();
  if (latest_goal_ != kForever) horizon_ = std::min(horizon_, latest_goal_);
}

bool ConstraintTable::vertex_blocked(VertexId v, int t) const {
  if (auto it = range_ub_.find(v); it != range_ub_.end() && t <= it->second) return true;
  if (auto it = blocked_from_.find(v); it != blocked_from_.end() && t >= it->second) return true;
  return !vertex_points_.empty() && vertex_points_.contains(key(v, t));
}

bool ConstraintTable::edge_blocked(VertexId from, VertexId to, int t) const {
  return !edge_points_.empty() && edge_points_.contains(edge_key(from, to, t));
}

int ConstraintTable::last_blocked(VertexId v) const {
  if (blocked_from_.contains(v)) return kForever;
  int last = -1;
  if (auto it = range_ub_.find(v); it != range_ub_.end()) last = std::max(last, it->second);
  if (auto it = last_point_.find(v); it != last_point_.end()) last = std::max(last, it->second);
  return last;
}

bool ConstraintTable::goal_allowed(VertexId target, int t) const {
  return t >= earliest_goal_ && t <= latest_goal_ && t > last_blocked(target);
}

int ConstraintTable::earliest_final_arrival(VertexId target) const {
  const int last = last_blocked(target);
  if (last == kForever) return kForever;
  return std::max(earliest_goal_, last + 1);
}

}  // namespace flexmapf

#pragma once

#include <string>
#include <vector>

#include "flexmapf/grid_map.hpp"
#include "flexmapf/path.hpp"

namespace flexmapf {

enum class ViolationKind { agent_count, empty_path, wrong_start, wrong_target, impassable, discontinuous,
                           vertex_conflict, edge_conflict };

const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  AgentId agent1 = -1;
  AgentId agent2 = -1;
  int t = -1;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  int count(ViolationKind kind) const;
};

/// Checks every path independently and every pair against each other, with
/// agents parked at their targets after their last step.
ValidationReport validate(const Solution& solution, const Instance& instance);

}  // namespace flexmapf

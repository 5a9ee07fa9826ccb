#include "flexmapf/validator.hpp"

#include <algorithm>
#include <sstream>

namespace flexmapf {

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::agent_count: return "agent_count";
    case ViolationKind::empty_path: return "empty_path";
    case ViolationKind::wrong_start: return "wrong_start";
    case ViolationKind::wrong_target: return "wrong_target";
    case ViolationKind::impassable: return "impassable";
    case ViolationKind::discontinuous: return "discontinuous";
    case ViolationKind::vertex_conflict: return "vertex_conflict";
    case ViolationKind::edge_conflict: return "edge_conflict";
  }
  return "?";
}

int ValidationReport::count(ViolationKind kind) const {
  return static_cast<int>(std::count_if(violations.begin(), violations.end(),
                                        [kind](const Violation& v) { return v.kind == kind; }));
}

namespace {

std::string describe(const GridMap& map, VertexId v) {
  std::ostringstream out;
  if (v >= 0 && v < map.num_cells()) {
    const Cell c = map.cell(v);
    out << '(' << c.row << ',' << c.col << ')';
  } else {
    out << "vertex " << v;
  }
  return out.str();
}

}  // namespace

ValidationReport validate(const Solution& solution, const Instance& instance) {
  ValidationReport report;
  auto add = [&](ViolationKind kind, AgentId a, AgentId b, int t, std::string message) {
    report.violations.push_back({kind, a, b, t, std::move(message)});
  };
  const GridMap& map = instance.map();
  const int k = instance.num_agents();
  if (static_cast<int>(solution.paths.size()) != k) {
    add(ViolationKind::agent_count, -1, -1, -1,
        "expected " + std::to_string(k) + " paths, got " + std::to_string(solution.paths.size()));
    return report;
  }

  std::vector<bool> usable(k, true);
  for (AgentId i = 0; i < k; ++i) {
    const Path& p = solution.paths[i];
    if (p.cells.empty()) {
      add(ViolationKind::empty_path, i, -1, -1, "agent " + std::to_string(i) + " has an empty path");
      usable[i] = false;
      continue;
    }
    if (p.cells.front() != instance.start(i))
      add(ViolationKind::wrong_start, i, -1, 0, "agent " + std::to_string(i) + " starts at " + describe(map, p.cells.front()));
    if (p.cells.back() != instance.target(i))
      add(ViolationKind::wrong_target, i, -1, p.cost(),
          "agent " + std::to_string(i) + " ends at " + describe(map, p.cells.back()));
    for (int t = 0; t <= p.cost(); ++t) {
      if (!map.is_passable(p.cells[t])) {
        add(ViolationKind::impassable, i, -1, t,
            "agent " + std::to_string(i) + " occupies blocked " + describe(map, p.cells[t]));
        usable[i] = false;
      }
    }
    if (!usable[i]) continue;
    for (int t = 1; t <= p.cost(); ++t) {
      if (p.cells[t] != p.cells[t - 1] && !map.adjacent(p.cells[t - 1], p.cells[t]))
        add(ViolationKind::discontinuous, i, -1, t,
            "agent " + std::to_string(i) + " jumps " + describe(map, p.cells[t - 1]) + " -> " + describe(map, p.cells[t]));
    }
  }

  for (AgentId a = 0; a < k; ++a) {
    if (!usable[a]) continue;
    for (AgentId b = a + 1; b < k; ++b) {
      if (!usable[b]) continue;
      const Path& pa = solution.paths[a];
      const Path& pb = solution.paths[b];
      const int horizon = std::max(pa.cost(), pb.cost());
      for (int t = 0; t <= horizon; ++t) {
        if (pa.at(t) == pb.at(t))
          add(ViolationKind::vertex_conflict, a, b, t,
              "agents " + std::to_string(a) + " and " + std::to_string(b) + " meet at " + describe(map, pa.at(t)));
        if (t > 0 && pa.at(t) == pb.at(t - 1) && pb.at(t) == pa.at(t - 1) && pa.at(t) != pa.at(t - 1))
          add(ViolationKind::edge_conflict, a, b, t,
              "agents " + std::to_string(a) + " and " + std::to_string(b) + " swap " + describe(map, pa.at(t - 1)) +
                  " <-> " + describe(map, pa.at(t)));
      }
    }
  }
  return report;
}

}  // namespace flexmapf

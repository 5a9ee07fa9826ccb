#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "flexmapf/grid_map.hpp"

namespace flexmapf {

/// Vertex occupied at each timestep 0..cost. After the last entry the agent
/// stays at its target forever.
struct Path {
  AgentId agent = 0;
  std::vector<VertexId> cells;

  int cost() const { return static_cast<int>(cells.size()) - 1; }
  /// Location at timestep t, accounting for the agent parking at its target.
  VertexId at(int t) const { return t < static_cast<int>(cells.size()) ? cells[t] : cells.back(); }

  friend bool operator==(const Path&, const Path&) = default;
};

struct Solution {
  std::vector<Path> paths;

  int soc() const;
};

/// One line per agent: `<id>: (row,col) (row,col) ...`
void write_solution(std::ostream& out, const GridMap& map, const Solution& solution);
Solution read_solution(std::istream& in, const GridMap& map);

}  // namespace flexmapf

#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "flexmapf/grid_map.hpp"

namespace flexmapf::testing {

inline GridMap grid(const std::vector<std::string>& rows) {
  std::ostringstream text;
  text << "type octile\nheight " << rows.size() << "\nwidth " << rows.front().size() << "\nmap\n";
  for (const auto& r : rows) text << r << '\n';
  std::istringstream in(text.str());
  return parse_map(in);
}

inline GridMap open_grid(int h, int w) { return GridMap(h, w, std::vector<bool>(h * w, true)); }

inline AgentSpec agent(AgentId id, Cell start, Cell target) { return {id, start, target}; }

}  // namespace flexmapf::testing

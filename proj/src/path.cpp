#include "flexmapf/path.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace flexmapf {

int Solution::soc() const {
  int total = 0;
  for (const Path& p : paths) total += p.cost();
  return total;
}

void write_solution(std::ostream& out, const GridMap& map, const Solution& solution) {
  for (const Path& p : solution.paths) {
    out << p.agent << ':';
    for (VertexId v : p.cells) {
      const Cell c = map.cell(v);
      out << " (" << c.row << ',' << c.col << ')';
    }
    out << '\n';
  }
}

Solution read_solution(std::istream& in, const GridMap& map) {
  Solution solution;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError(lineno, "expected '<agent>: cells'");
    Path path;
    try {
      path.agent = std::stoi(line.substr(0, colon));
    } catch (const std::exception&) {
      throw ParseError(lineno, "bad agent id");
    }
    std::istringstream ss(line.substr(colon + 1));
    char open = 0, comma = 0, close = 0;
    int r = 0, c = 0;
    while (ss >> open) {
      if (open != '(' || !(ss >> r >> comma >> c >> close) || comma != ',' || close != ')')
        throw ParseError(lineno, "malformed cell");
      if (!map.in_bounds(Cell{r, c})) throw ParseError(lineno, "cell out of bounds");
      path.cells.push_back(map.index(Cell{r, c}));
    }
    if (path.cells.empty()) throw ParseError(lineno, "empty path");
    solution.paths.push_back(std::move(path));
  }
  return solution;
}

}  // namespace flexmapf

#include "flexmapf/grid_map.hpp"

#include <cstdlib>
#include <deque>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace flexmapf {

namespace {

std::string strip(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
  std::size_t b = 0;
  while (b < s.size() && (s[b] == ' ' || s[b] == '\t')) ++b;
  return s.substr(b);
}

bool symbol_passable(char c, int line) {
  switch (c) {
    case '.':
    case 'G':
      return true;
    case '@':
    case 'T':
    case 'O':
    case 'S':
    case 'W':
      return false;
    default:
      throw ParseError(line, std::string("unknown map symbol '") + c + "'");
  }
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open " + path);
  return in;
}

}  // namespace

ParseError::ParseError(int line, const std::string& what)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
      line_(line) {}

GridMap::GridMap(int height, int width, std::vector<bool> passable)
    : height_(height), width_(width), passable_(std::move(passable)) {
  if (height < 1 || width < 1) throw std::invalid_argument("grid dimensions must be positive");
  if (static_cast<int>(passable_.size()) != height * width)
    throw std::invalid_argument("passable flags do not match grid dimensions");
}

std::vector<VertexId> GridMap::neighbors(VertexId v) const {
  if (!is_passable(v)) throw std::invalid_argument("neighbors() of a blocked or out-of-range vertex");
  const Cell c = cell(v);
  std::vector<VertexId> out;
  out.reserve(4);
  for (const Cell n : {Cell{c.row - 1, c.col}, Cell{c.row + 1, c.col}, Cell{c.row, c.col - 1},
                       Cell{c.row, c.col + 1}}) {
    if (is_passable(n)) out.push_back(index(n));
  }
  return out;
}

int GridMap::degree(VertexId v) const { return static_cast<int>(neighbors(v).size()); }

bool GridMap::adjacent(VertexId u, VertexId v) const {
  if (!is_passable(u) || !is_passable(v)) return false;
  const Cell a = cell(u), b = cell(v);
  return std::abs(a.row - b.row) + std::abs(a.col - b.col) == 1;
}

Instance::Instance(GridMap map, std::vector<AgentSpec> agents)
    : map_(std::move(map)), agents_(std::move(agents)) {
  std::set<VertexId> starts, targets;
  for (std::size_t i = 0; i < agents_.size(); ++i) {
    const AgentSpec& a = agents_[i];
    if (a.id != static_cast<AgentId>(i))
      throw InstanceError("agent ids must be 0..k-1 in order");
    if (!map_.is_passable(a.start) || !map_.is_passable(a.target))
      throw InstanceError("agent " + std::to_string(i) + " has a blocked start or target");
    if (!starts.insert(map_.index(a.start)).second)
      throw InstanceError("agent " + std::to_string(i) + " shares its start vertex");
    if (!targets.insert(map_.index(a.target)).second)
      throw InstanceError("agent " + std::to_string(i) + " shares its target vertex");
    if (bfs_distances(map_, map_.index(a.start))[map_.index(a.target)] < 0)
      throw InstanceError("agent " + std::to_string(i) + " cannot reach its target");
  }
}

GridMap parse_map(std::istream& in) {
  std::string line;
  int lineno = 0;
  int height = -1, width = -1;
  bool saw_type = false;

  auto next_line = [&](const char* expected) {
    if (!std::getline(in, line)) throw ParseError(lineno + 1, std::string("expected ") + expected);
    ++lineno;
    line = strip(line);
  };

  next_line("type line");
  {
    std::istringstream ss(line);
    std::string key, value;
    ss >> key >> value;
    if (key != "type") throw ParseError(lineno, "expected 'type <name>'");
    saw_type = true;
  }
  for (int i = 0; i < 2; ++i) {
    next_line("height/width line");
    std::istringstream ss(line);
    std::string key;
    int value = 0;
    if (!(ss >> key >> value) || value < 1) throw ParseError(lineno, "malformed dimension line");
    if (key == "height" && height < 0)
      height = value;
    else if (key == "width" && width < 0)
      width = value;
    else
      throw ParseError(lineno, "expected 'height H' and 'width W'");
  }
  next_line("'map'");
  if (line != "map" || !saw_type) throw ParseError(lineno, "expected 'map'");

  std::vector<bool> passable;
  passable.reserve(static_cast<std::size_t>(height) * width);
  for (int r = 0; r < height; ++r) {
    if (!std::getline(in, line))
      throw ParseError(lineno + 1, "expected " + std::to_string(height) + " map rows, got " +
                                       std::to_string(r));
    ++lineno;
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
    if (static_cast<int>(line.size()) != width)
      throw ParseError(lineno, "row length " + std::to_string(line.size()) + " != width " +
                                   std::to_string(width));
    for (char c : line) passable.push_back(symbol_passable(c, lineno));
  }
  while (std::getline(in, line)) {
    ++lineno;
    if (!strip(line).empty()) throw ParseError(lineno, "more rows than the declared height");
  }
  return GridMap(height, width, std::move(passable));
}

GridMap parse_map_file(const std::string& path) {
  auto in = open_or_throw(path);
  return parse_map(in);
}

std::string serialize_map(const GridMap& map) {
  std::ostringstream out;
  out << "type octile\nheight " << map.height() << "\nwidth " << map.width() << "\nmap\n";
  for (int r = 0; r < map.height(); ++r) {
    for (int c = 0; c < map.width(); ++c) out << (map.is_passable(Cell{r, c}) ? '.' : '@');
    out << '\n';
  }
  return out.str();
}

namespace {

std::vector<AgentSpec> read_scenario(std::istream& in, const GridMap& map, int k) {
  std::string line;
  int lineno = 0;
  if (!std::getline(in, line)) throw ParseError(1, "missing 'version' header");
  ++lineno;
  {
    std::istringstream ss(strip(line));
    std::string key, version;
    ss >> key >> version;
    if (key != "version" || (version != "1" && version != "1.0"))
      throw ParseError(lineno, "expected 'version 1'");
  }

  std::vector<AgentSpec> agents;
  while (static_cast<int>(agents.size()) < k && std::getline(in, line)) {
    ++lineno;
    line = strip(line);
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string bucket, map_name;
    int w = 0, h = 0, sx = 0, sy = 0, gx = 0, gy = 0;
    double dist = 0;
    if (!(ss >> bucket >> map_name >> w >> h >> sx >> sy >> gx >> gy >> dist))
      throw ParseError(lineno, "expected 9 scenario fields");
    if (w != map.width() || h != map.height())
      throw ParseError(lineno, "scenario dimensions " + std::to_string(w) + "x" + std::to_string(h) +
                                   " do not match the map");
    const auto id = static_cast<AgentId>(agents.size());
    const Cell start{sy, sx}, target{gy, gx};
    if (!map.is_passable(start))
      throw ParseError(lineno, "agent " + std::to_string(id) + " starts on a blocked cell");
    if (!map.is_passable(target))
      throw ParseError(lineno, "agent " + std::to_string(id) + " targets a blocked cell");
    agents.push_back({id, start, target});
  }
  return agents;
}

}  // namespace

std::vector<AgentSpec> parse_scenario(std::istream& in, const GridMap& map, int k) {
  if (k < 0) throw ParseError(0, "negative agent count");
  auto agents = read_scenario(in, map, k);
  if (static_cast<int>(agents.size()) < k)
    throw ParseError(0, "scenario holds " + std::to_string(agents.size()) + " agents, " +
                            std::to_string(k) + " requested");
  return agents;
}

std::vector<AgentSpec> parse_scenario(std::istream& in, const GridMap& map) {
  return read_scenario(in, map, std::numeric_limits<int>::max());
}

std::vector<AgentSpec> parse_scenario_file(const std::string& path, const GridMap& map, int k) {
  auto in = open_or_throw(path);
  return parse_scenario(in, map, k);
}

std::string serialize_scenario(const GridMap& map, const std::vector<AgentSpec>& agents,
                               const std::string& map_name) {
  std::ostringstream out;
  out << "version 1\n";
  for (const AgentSpec& a : agents) {
    const int dist = bfs_distances(map, map.index(a.start))[map.index(a.target)];
    out << 0 << '\t' << map_name << '\t' << map.width() << '\t' << map.height() << '\t'
        << a.start.col << '\t' << a.start.row << '\t' << a.target.col << '\t' << a.target.row
        << '\t' << dist << '\n';
  }
  return out.str();
}

std::vector<int> bfs_distances(const GridMap& map, VertexId source) {
  std::vector<int> dist(map.num_cells(), -1);
  if (!map.is_passable(source)) return dist;
  std::deque<VertexId> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const VertexId v = queue.front();
    queue.pop_front();
    for (VertexId n : map.neighbors(v)) {
      if (dist[n] < 0) {
        dist[n] = dist[v] + 1;
        queue.push_back(n);
      }
    }
  }
  return dist;
}

}  // namespace flexmapf

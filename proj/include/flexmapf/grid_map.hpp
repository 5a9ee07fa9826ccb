#pragma once

#include <cstdint>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

namespace flexmapf {

using VertexId = std::int32_t;
using AgentId = std::int32_t;

/// Grid coordinate. Rows grow downward, columns grow to the right.
struct Cell {
  int row = 0;
  int col = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
};

/// Raised for malformed map or scenario text. `line()` is 1-based, 0 when the
/// error is not tied to a single line.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

/// Raised when a set of agents cannot form a valid instance.
class InstanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Four-connected uniform-cost grid. Vertices are passable cells, indexed
/// row-major as `row * width + col`.
class GridMap {
 public:
  GridMap(int height, int width, std::vector<bool> passable);

  int height() const { return height_; }
  int width() const { return width_; }
  int num_cells() const { return height_ * width_; }
  const std::vector<bool>& passable() const { return passable_; }

  bool in_bounds(Cell c) const {
    return c.row >= 0 && c.row < height_ && c.col >= 0 && c.col < width_;
  }
  bool is_passable(VertexId v) const { return v >= 0 && v < num_cells() && passable_[v]; }
  bool is_passable(Cell c) const { return in_bounds(c) && passable_[index(c)]; }

  VertexId index(Cell c) const { return c.row * width_ + c.col; }
  Cell cell(VertexId v) const { return {v / width_, v % width_}; }

  /// Passable orthogonal neighbours of a passable vertex, ordered up, down,
  /// left, right. Throws std::invalid_argument for a blocked or out-of-range v.
  std::vector<VertexId> neighbors(VertexId v) const;
  int degree(VertexId v) const;

  bool adjacent(VertexId u, VertexId v) const;

  friend bool operator==(const GridMap&, const GridMap&) = default;

 private:
  int height_;
  int width_;
  std::vector<bool> passable_;
};

struct AgentSpec {
  AgentId id = 0;
  Cell start;
  Cell target;
};

/// A map plus agents with ids 0..k-1. Construction enforces distinct starts,
/// distinct targets, passability and start-to-target reachability.
class Instance {
 public:
  Instance(GridMap map, std::vector<AgentSpec> agents);

  const GridMap& map() const { return map_; }
  const std::vector<AgentSpec>& agents() const { return agents_; }
  int num_agents() const { return static_cast<int>(agents_.size()); }
  VertexId start(AgentId i) const { return map_.index(agents_[i].start); }
  VertexId target(AgentId i) const { return map_.index(agents_[i].target); }

 private:
  GridMap map_;
  std::vector<AgentSpec> agents_;
};

GridMap parse_map(std::istream& in);
GridMap parse_map_file(const std::string& path);
std::string serialize_map(const GridMap& map);

/// Reads the first `k` entries of a version-1 scenario. Scenario x is the
/// column and y is the row.
std::vector<AgentSpec> parse_scenario(std::istream& in, const GridMap& map, int k);
/// Reads every entry.
std::vector<AgentSpec> parse_scenario(std::istream& in, const GridMap& map);
std::vector<AgentSpec> parse_scenario_file(const std::string& path, const GridMap& map, int k);
std::string serialize_scenario(const GridMap& map, const std::vector<AgentSpec>& agents,
                               const std::string& map_name);

/// Breadth-first distances from `source`; -1 marks unreachable cells.
std::vector<int> bfs_distances(const GridMap& map, VertexId source);

}  // namespace flexmapf

#include "flexmapf/conflicts.hpp"

#include <algorithm>
#include <deque>
#include <tuple>
#include <unordered_set>

#include "flexmapf/ct_node.hpp"
#include "flexmapf/low_level.hpp"

namespace flexmapf {

namespace {

Conflict make_conflict(ConflictType type, AgentId a1, AgentId a2, VertexId from, VertexId vertex, int t) {
  Conflict c;
  c.type = type;
  c.agent1 = a1;
  c.agent2 = a2;
  c.from = from;
  c.vertex = vertex;
  c.t = t;
  return c;
}

bool earlier(const Conflict& a, const Conflict& b) {
  return std::tie(a.t, a.agent1, a.agent2, a.type, a.vertex, a.from) <
         std::tie(b.t, b.agent1, b.agent2, b.type, b.vertex, b.from);
}

std::optional<int> first_visit(const Path& path, VertexId v) {
  for (int t = 0; t <= path.cost(); ++t)
    if (path.cells[t] == v) return t;
  return std::nullopt;
}

// Cells reachable from `source` without entering `forbidden`.
std::vector<bool> reachable_avoiding(const GridMap& map, VertexId source, const std::vector<VertexId>& forbidden) {
  std::vector<bool> seen(map.num_cells(), false);
  for (VertexId f : forbidden) seen[f] = true;
  std::vector<bool> reached(map.num_cells(), false);
  std::deque<VertexId> queue{source};
  seen[source] = true;
  reached[source] = true;
  while (!queue.empty()) {
    const VertexId v = queue.front();
    queue.pop_front();
    for (VertexId n : map.neighbors(v)) {
      if (seen[n]) continue;
      seen[n] = true;
      reached[n] = true;
      queue.push_back(n);
    }
  }
  return reached;
}

std::optional<Conflict> as_target_conflict(const CTNode& node, const ProblemView& problem, const Conflict& c) {
  if (c.type != ConflictType::vertex) return std::nullopt;
  for (const auto& [mover, parked] : {std::pair{c.agent1, c.agent2}, std::pair{c.agent2, c.agent1}}) {
    if (c.vertex == problem.targets[parked] && c.t >= node.costs[parked]) {
      Conflict out = make_conflict(ConflictType::target, mover, parked, c.from, c.vertex, c.t);
      out.cls = ConflictClass::target;
      return out;
    }
  }
  return std::nullopt;
}

// Corridor reasoning applies only when the corridor is the sole link between
// the two agents' start sides and both current paths break the range
// constraints; under those conditions the two range constraints cannot both
// be violated by a conflict-free pair of paths.
std::optional<Conflict> as_corridor_conflict(const CTNode& node, const ProblemView& problem, const Conflict& c) {
  if (c.type != ConflictType::vertex && c.type != ConflictType::edge) return std::nullopt;
  const GridMap& map = *problem.map;
  std::vector<VertexId> cells{c.vertex};
  if (c.type == ConflictType::edge) cells.insert(cells.begin(), c.from);

  const AgentId a1 = c.agent1, a2 = c.agent2;
  for (VertexId cell : cells) {
    if (map.degree(cell) != 2) continue;
    auto corridor = find_corridor(map, cell);
    if (!corridor || corridor->begin == corridor->end) continue;

    const auto begin_side = reachable_avoiding(map, corridor->begin, corridor->interior);
    if (begin_side[corridor->end]) continue;
    const std::unordered_set<VertexId> interior(corridor->interior.begin(), corridor->interior.end());
    const VertexId s1 = problem.starts[a1], s2 = problem.starts[a2];
    if (interior.contains(s1) || interior.contains(s2)) continue;
    const bool s1_begin = begin_side[s1], s2_begin = begin_side[s2];
    if (s1_begin == s2_begin) continue;

    CorridorInfo info;
    info.corridor = *corridor;
    info.exit1 = s1_begin ? corridor->end : corridor->begin;
    info.exit2 = s2_begin ? corridor->end : corridor->begin;
    const auto te1 = first_visit(*node.paths[a1], info.exit1);
    const auto te2 = first_visit(*node.paths[a2], info.exit2);
    if (!te1 || !te2) continue;

    const auto cons1 = constraints_for(a1, node.constraints);
    const auto cons2 = constraints_for(a2, node.constraints);
    const ConstraintTable table1(map, a1, cons1), table2(map, a2, cons2);
    const auto tm1 = earliest_arrival(map, s1, info.exit1, table1);
    const auto tm2 = earliest_arrival(map, s2, info.exit2, table2);
    if (!tm1 || !tm2) continue;
    if (*te1 > *tm2 || *te2 > *tm1) continue;

    info.t_exit1 = *te1;
    info.t_exit2 = *te2;
    info.t_min1 = *tm1;
    info.t_min2 = *tm2;
    Conflict out = c;
    out.type = ConflictType::corridor;
    out.cls = ConflictClass::corridor;
    out.corridor_info = std::move(info);
    return out;
  }
  return std::nullopt;
}

// True if `agent` has a path within its current cost that also satisfies `extra`.
bool has_alternative(const CTNode& node, const ProblemView& problem, AgentId agent, const Constraint& extra) {
  auto cons = constraints_for(agent, node.constraints);
  cons.push_back(extra);
  const ConstraintTable table(*problem.map, agent, cons);
  return optimal_cost(*problem.map, problem.starts[agent], problem.targets[agent], problem.heuristics[agent],
                      table, node.costs[agent])
      .has_value();
}

ConflictClass cardinality(const CTNode& node, const ProblemView& problem, const Conflict& c) {
  const auto [c1, c2] = split_conflict(c);
  const bool card1 = !has_alternative(node, problem, c.agent1, c1);
  const bool card2 = !has_alternative(node, problem, c.agent2, c2);
  if (card1 && card2) return ConflictClass::cardinal;
  if (card1 || card2) return ConflictClass::semi_cardinal;
  return ConflictClass::non_cardinal;
}

}  // namespace

const char* to_string(ConflictClass c) {
  switch (c) {
    case ConflictClass::target: return "target";
    case ConflictClass::corridor: return "corridor";
    case ConflictClass::cardinal: return "cardinal";
    case ConflictClass::semi_cardinal: return "semi-cardinal";
    case ConflictClass::non_cardinal: return "non-cardinal";
    case ConflictClass::unclassified: return "unclassified";
  }
  return "?";
}

void detect_pair_conflicts(const Path& a, const Path& b, std::vector<Conflict>& out) {
  const Path& lo = a.agent < b.agent ? a : b;
  const Path& hi = a.agent < b.agent ? b : a;
  const int horizon = std::max(lo.cost(), hi.cost());
  for (int t = 0; t <= horizon; ++t) {
    const VertexId u = lo.at(t);
    const VertexId v = hi.at(t);
    if (u == v) {
      out.push_back(make_conflict(ConflictType::vertex, lo.agent, hi.agent, -1, u, t));
      continue;
    }
    if (t > 0) {
      const VertexId u_prev = lo.at(t - 1);
      if (u_prev != u && u_prev == v && hi.at(t - 1) == u)
        out.push_back(make_conflict(ConflictType::edge, lo.agent, hi.agent, u_prev, u, t));
    }
  }
}

ConflictReport detect_conflicts(std::span<const Path* const> paths, int num_agents) {
  ConflictReport report;
  report.per_agent.assign(num_agents, 0);
  for (std::size_t i = 0; i < paths.size(); ++i) {
    for (std::size_t j = i + 1; j < paths.size(); ++j) {
      const std::size_t before = report.conflicts.size();
      detect_pair_conflicts(*paths[i], *paths[j], report.conflicts);
      const int found = static_cast<int>(report.conflicts.size() - before);
      report.per_agent[paths[i]->agent] += found;
      report.per_agent[paths[j]->agent] += found;
      report.total += found;
    }
  }
  return report;
}

std::optional<Corridor> find_corridor(const GridMap& map, VertexId v) {
  if (!map.is_passable(v) || map.degree(v) != 2) return std::nullopt;
  const auto start_neighbors = map.neighbors(v);

  // Walks away from v through degree-2 cells; returns the chain and the cell
  // where it stops, or nullopt on a closed loop.
  auto walk = [&](VertexId first) -> std::optional<std::pair<std::vector<VertexId>, VertexId>> {
    std::vector<VertexId> chain;
    VertexId prev = v, cur = first;
    while (map.degree(cur) == 2) {
      if (cur == v) return std::nullopt;
      chain.push_back(cur);
      const auto n = map.neighbors(cur);
      const VertexId next = n[0] == prev ? n[1] : n[0];
      prev = cur;
      cur = next;
    }
    return std::pair{std::move(chain), cur};
  };

  auto left = walk(start_neighbors[0]);
  auto right = walk(start_neighbors[1]);
  if (!left || !right) return std::nullopt;

  Corridor corridor;
  corridor.begin = left->second;
  corridor.end = right->second;
  corridor.interior.assign(left->first.rbegin(), left->first.rend());
  corridor.interior.push_back(v);
  corridor.interior.insert(corridor.interior.end(), right->first.begin(), right->first.end());
  // Canonical orientation so every interior cell reports the same corridor.
  if (corridor.begin > corridor.end ||
      (corridor.begin == corridor.end && corridor.interior.front() > corridor.interior.back())) {
    std::swap(corridor.begin, corridor.end);
    std::reverse(corridor.interior.begin(), corridor.interior.end());
  }
  return corridor;
}

Conflict classify_conflict(const ProblemView& problem, const CTNode& node, const Conflict& c,
                           const ClassifyOptions& options) {
  if (options.symmetry) {
    if (auto t = as_target_conflict(node, problem, c)) return *t;
    if (auto k = as_corridor_conflict(node, problem, c)) return *k;
  }
  Conflict out = c;
  out.cls = options.prioritize ? cardinality(node, problem, c) : ConflictClass::unclassified;
  return out;
}

Conflict choose_conflict(const ProblemView& problem, const CTNode& node, const ClassifyOptions& options) {
  std::vector<Conflict> ordered = node.conflicts;
  std::sort(ordered.begin(), ordered.end(), earlier);
  if (ordered.empty()) throw std::logic_error("choose_conflict on a conflict-free node");

  if (options.symmetry) {
    for (const Conflict& c : ordered)
      if (auto t = as_target_conflict(node, problem, c)) return *t;
    for (const Conflict& c : ordered)
      if (auto k = as_corridor_conflict(node, problem, c)) return *k;
  }
  if (!options.prioritize) return ordered.front();

  std::optional<Conflict> semi, non;
  for (const Conflict& c : ordered) {
    Conflict classified = c;
    classified.cls = cardinality(node, problem, c);
    if (classified.cls == ConflictClass::cardinal) return classified;
    if (classified.cls == ConflictClass::semi_cardinal && !semi) semi = classified;
    if (classified.cls == ConflictClass::non_cardinal && !non) non = classified;
  }
  return semi ? *semi : *non;
}

std::pair<Constraint, Constraint> split_conflict(const Conflict& c) {
  switch (c.type) {
    case ConflictType::vertex:
      return {Constraint::at_vertex(c.agent1, c.vertex, c.t), Constraint::at_vertex(c.agent2, c.vertex, c.t)};
    case ConflictType::edge:
      return {Constraint::at_edge(c.agent1, c.from, c.vertex, c.t),
              Constraint::at_edge(c.agent2, c.vertex, c.from, c.t)};
    case ConflictType::corridor: {
      const CorridorInfo& info = c.corridor_info.value();
      return {Constraint::in_range(c.agent1, info.exit1, info.t_min2),
              Constraint::in_range(c.agent2, info.exit2, info.t_min1)};
    }
    case ConflictType::target:
      return {Constraint::length_more_than(c.agent2, c.vertex, c.t),
              Constraint::length_at_most(c.agent2, c.vertex, c.t)};
  }
  throw std::logic_error("unknown conflict type");
}

DelayReport estimate_delays(std::span<const Constraint> constraints, AgentId agent, const Path& parent_path) {
  DelayReport report;
  for (const Constraint& c : constraints) {
    int delay = 0;
    if (c.agent == agent) {
      switch (c.kind) {
        case ConstraintKind::vertex:
        case ConstraintKind::edge:
          delay = 1;
          break;
        case ConstraintKind::range:
          if (auto t_exit = first_visit(parent_path, c.vertex)) delay = c.t + 1 - *t_exit;
          break;
        case ConstraintKind::length_gt:
          delay = c.t - parent_path.cost();
          break;
        case ConstraintKind::length_leq:
          break;
      }
    }
    delay = std::max(delay, 0);
    report.estimates.push_back({c, delay});
    report.sum += delay;
  }
  return report;
}

}  // namespace flexmapf

#include "flexmapf/low_level.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

namespace flexmapf {

namespace {

std::uint64_t vt_key(VertexId v, int t) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(v)) << 32) | static_cast<std::uint32_t>(t);
}

// Integer cut-off for "f <= tau". The epsilon absorbs rounding in w * lb.
int focal_bound(double tau) { return static_cast<int>(std::floor(tau + 1e-9)); }

struct SearchNode {
  VertexId v;
  int t;
  int f;
  int x;
  int parent;
  bool open = false;
  bool in_focal = false;
  bool closed = false;
};

// One space-time search tree shared by the focal phase and the best-first
// phase of FA*.
class SpaceTimeSearch {
 public:
  SpaceTimeSearch(const GridMap& map, const LowLevelRequest& req)
      : map_(map),
        req_(req),
        h_(*req.heuristic),
        table_(*req.constraints),
        open_(OpenLess{&nodes_}),
        focal_(FocalLess{&nodes_}) {
    final_lb_ = table_.earliest_final_arrival(req.target);
    static_from_ = table_.latest_time() + 1;
    if (req.avoidance) static_from_ = std::max(static_from_, req.avoidance->latest_time() + 1);
  }

  std::optional<LowLevelResult> run_focal() {
    if (table_.infeasible() || final_lb_ == kForever) return std::nullopt;
    if (h_(req_.start) == HeuristicTable::kUnreachable) return std::nullopt;
    if (table_.vertex_blocked(req_.start, 0)) return std::nullopt;

    const int x0 = req_.avoidance ? req_.avoidance->vertex_conflicts(req_.start, 0) : 0;
    const int f0 = f_value(req_.start, 0);
    if (f0 > table_.latest_goal()) return std::nullopt;
    push_new(req_.start, 0, f0, x0, -1);

    int bound = INT_MIN;
    while (!open_.empty()) {
      const int f_min = nodes_[*open_.begin()].f;
      double tau = req_.w * std::max(f_min, req_.lb_parent) + req_.delta;
      int new_bound = std::max(focal_bound(tau), f_min);
      if (new_bound > bound) {
        grow_focal(bound, new_bound);
        bound = new_bound;
      }
      tau_ = std::max(tau, static_cast<double>(f_min));
      bound_ = bound;

      const int id = *focal_.begin();
      take(id);
      const SearchNode& n = nodes_[id];
      if (n.v == req_.target && table_.goal_allowed(req_.target, n.t)) {
        goal_ = id;
        LowLevelResult result;
        result.path = extract(id);
        result.cost = n.t;
        result.f_min = f_min;
        result.lb = std::min(std::max(f_min, req_.lb_parent), n.t);
        result.tau = tau_;
        result.conflicts = n.x;
        result.expanded = expanded_;
        result.generated = static_cast<std::int64_t>(nodes_.size());
        return result;
      }
      expand(id, /*update_conflicts=*/true);
    }
    return std::nullopt;
  }

  // Best-first phase after the focal phase found a path of `cost`. Returns the
  // proven lower bound on the optimal constrained cost, capped at `cost`.
  int run_optimal(int cost) {
    while (!open_.empty()) {
      const int id = *open_.begin();
      if (nodes_[id].f >= cost) return cost;
      take(id);
      const SearchNode& n = nodes_[id];
      if (n.v == req_.target && table_.goal_allowed(req_.target, n.t)) return n.t;
      expand(id, /*update_conflicts=*/false);
    }
    return cost;
  }

  std::int64_t expanded() const { return expanded_; }
  std::int64_t generated() const { return static_cast<std::int64_t>(nodes_.size()); }

 private:
  struct OpenLess {
    const std::vector<SearchNode>* nodes;
    bool operator()(int a, int b) const {
      const SearchNode& na = (*nodes)[a];
      const SearchNode& nb = (*nodes)[b];
      if (na.f != nb.f) return na.f < nb.f;
      if (na.t != nb.t) return na.t > nb.t;
      return a < b;
    }
  };
  struct FocalLess {
    const std::vector<SearchNode>* nodes;
    bool operator()(int a, int b) const {
      const SearchNode& na = (*nodes)[a];
      const SearchNode& nb = (*nodes)[b];
      if (na.x != nb.x) return na.x < nb.x;
      if (na.t != nb.t) return na.t > nb.t;
      if (na.f != nb.f) return na.f < nb.f;
      return a < b;
    }
  };

  // Past static_from_ nothing depends on time, so states merge per vertex.
  std::uint64_t state_key(VertexId v, int t) const { return vt_key(v, std::min(t, static_from_)); }

  int f_value(VertexId v, int t) const {
    const int h = h_(v);
    if (h == HeuristicTable::kUnreachable) return INT_MAX;
    return std::max(t + h, final_lb_);
  }

  void push_new(VertexId v, int t, int f, int x, int parent) {
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back(SearchNode{v, t, f, x, parent});
    index_.emplace(state_key(v, t), id);
    open_node(id);
  }

  void open_node(int id) {
    SearchNode& n = nodes_[id];
    n.open = true;
    n.closed = false;
    open_.insert(id);
    if (n.f <= bound_) {
      n.in_focal = true;
      focal_.insert(id);
    }
  }

  void take(int id) {
    SearchNode& n = nodes_[id];
    open_.erase(id);
    if (n.in_focal) focal_.erase(id);
    n.open = false;
    n.in_focal = false;
    n.closed = true;
  }

  void grow_focal(int old_bound, int new_bound) {
    for (int id : open_) {
      const SearchNode& n = nodes_[id];
      if (n.f > new_bound) break;
      if (n.f > old_bound && !n.in_focal) {
        nodes_[id].in_focal = true;
        focal_.insert(id);
      }
    }
  }

  void expand(int id, bool update_conflicts) {
    ++expanded_;
    const VertexId v = nodes_[id].v;
    const int t = nodes_[id].t;
    const int x = nodes_[id].x;
    const int next_t = t + 1;
    if (next_t > table_.horizon()) return;

    auto consider = [&](VertexId to) {
      if (table_.vertex_blocked(to, next_t)) return;
      if (to != v && table_.edge_blocked(v, to, next_t)) return;
      const int f = f_value(to, next_t);
      if (f == INT_MAX || f > table_.latest_goal()) return;
      int nx = x;
      if (req_.avoidance) {
        nx += req_.avoidance->vertex_conflicts(to, next_t);
        if (to != v) nx += req_.avoidance->edge_conflicts(v, to, next_t);
      }
      auto it = index_.find(state_key(to, next_t));
      if (it == index_.end()) {
        push_new(to, next_t, f, nx, id);
        return;
      }
      const int existing = it->second;
      SearchNode& n = nodes_[existing];
      // Same vertex, so a smaller f means an earlier t; requiring t not to grow
      // keeps a node from adopting its own descendant as parent.
      const bool better = f < n.f || (update_conflicts && f == n.f && next_t <= n.t && nx < n.x);
      if (!better) return;
      if (n.in_focal) focal_.erase(existing);
      if (n.open) open_.erase(existing);
      n.t = next_t;
      n.f = f;
      n.x = nx;
      n.parent = id;
      n.in_focal = false;
      open_node(existing);
    };

    for (VertexId to : map_.neighbors(v)) consider(to);
    consider(v);
  }

  Path extract(int id) const {
    Path path;
    path.agent = req_.agent;
    for (int cur = id; cur >= 0; cur = nodes_[cur].parent) path.cells.push_back(nodes_[cur].v);
    std::reverse(path.cells.begin(), path.cells.end());
    return path;
  }

  const GridMap& map_;
  const LowLevelRequest& req_;
  const HeuristicTable& h_;
  const ConstraintTable& table_;
  std::vector<SearchNode> nodes_;
  std::unordered_map<std::uint64_t, int> index_;
  std::set<int, OpenLess> open_;
  std::set<int, FocalLess> focal_;
  int final_lb_ = 0;
  int static_from_ = 0;
  int bound_ = INT_MIN;
  double tau_ = 0.0;
  int goal_ = -1;
  std::int64_t expanded_ = 0;
};

}  // namespace

HeuristicTable compute_h(const GridMap& map, VertexId target) {
  std::vector<int> dist = bfs_distances(map, target);
  for (int& d : dist)
    if (d < 0) d = HeuristicTable::kUnreachable;
  return HeuristicTable(std::move(dist));
}

ConflictAvoidanceTable::ConflictAvoidanceTable(const GridMap& map, std::span<const Path* const> paths,
                                               AgentId skip)
    : num_cells_(static_cast<std::uint64_t>(map.num_cells())) {
  for (const Path* p : paths) {
    if (p == nullptr || p->agent == skip || p->cells.empty()) continue;
    const int cost = p->cost();
    for (int t = 0; t < cost; ++t) ++vertices_[vt_key(p->cells[t], t)];
    for (int t = 1; t <= cost; ++t)
      if (p->cells[t - 1] != p->cells[t]) ++edges_[edge_key(p->cells[t - 1], p->cells[t], t)];
    parked_from_[p->cells.back()] = cost;
    latest_time_ = std::max(latest_time_, cost);
  }
}

int ConflictAvoidanceTable::vertex_conflicts(VertexId v, int t) const {
  int count = 0;
  if (auto it = vertices_.find(vt_key(v, t)); it != vertices_.end()) count += it->second;
  if (auto it = parked_from_.find(v); it != parked_from_.end() && t >= it->second) ++count;
  return count;
}

int ConflictAvoidanceTable::edge_conflicts(VertexId from, VertexId to, int t) const {
  auto it = edges_.find(edge_key(to, from, t));
  return it == edges_.end() ? 0 : it->second;
}

std::optional<LowLevelResult> focal_search(const GridMap& map, const LowLevelRequest& req) {
  SpaceTimeSearch search(map, req);
  return search.run_focal();
}

std::optional<LowLevelResult> fastar_search(const GridMap& map, const LowLevelRequest& req) {
  SpaceTimeSearch search(map, req);
  auto result = search.run_focal();
  if (!result) return result;
  const int proven = search.run_optimal(result->cost);
  result->lb = std::min(std::max(proven, req.lb_parent), result->cost);
  result->expanded = search.expanded();
  result->generated = search.generated();
  return result;
}

std::optional<int> optimal_cost(const GridMap& map, VertexId start, VertexId target,
                                const HeuristicTable& h, const ConstraintTable& constraints,
                                int max_cost) {
  LowLevelRequest req;
  req.start = start;
  req.target = target;
  req.heuristic = &h;
  req.constraints = &constraints;
  req.w = 1.0;
  SpaceTimeSearch search(map, req);
  // With w = 1 and no conflict counts the focal phase is plain A*.
  auto result = search.run_focal();
  if (!result || result->cost > max_cost) return std::nullopt;
  return result->cost;
}

std::optional<int> earliest_arrival(const GridMap& map, VertexId start, VertexId vertex,
                                    const ConstraintTable& constraints) {
  if (constraints.vertex_blocked(start, 0)) return std::nullopt;
  if (start == vertex) return 0;
  std::unordered_map<std::uint64_t, bool> seen;
  std::deque<std::pair<VertexId, int>> queue{{start, 0}};
  seen[vt_key(start, 0)] = true;
  while (!queue.empty()) {
    auto [v, t] = queue.front();
    queue.pop_front();
    if (t + 1 > constraints.horizon()) continue;
    std::vector<VertexId> next = map.neighbors(v);
    next.push_back(v);
    for (VertexId to : next) {
      if (constraints.vertex_blocked(to, t + 1)) continue;
      if (to != v && constraints.edge_blocked(v, to, t + 1)) continue;
      if (to == vertex) return t + 1;
      if (seen.emplace(vt_key(to, t + 1), true).second) queue.emplace_back(to, t + 1);
    }
  }
  return std::nullopt;
}

}  // namespace flexmapf

#include "flexmapf/oracle.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <queue>
#include <unordered_map>

namespace flexmapf {
namespace {

// A joint state is the agents' vertices plus a mask of agents that have
// parked at their targets for good. Parked agents cost nothing and never move.
struct State {
  std::array<VertexId, kOracleMaxAgents> pos{};
  unsigned done = 0;
};

struct Record {
  int cost = 0;
  std::uint64_t parent = 0;
  bool has_parent = false;
  bool move = false;
};

class JointSearch {
 public:
  explicit JointSearch(const Instance& instance)
      : instance_(instance), k_(instance.num_agents()), cells_(instance.map().num_cells()) {}

  OracleResult run() {
    OracleResult result;
    const unsigned all = (1u << k_) - 1;
    State start;
    for (AgentId i = 0; i < k_; ++i) start.pos[i] = instance_.start(i);
    const std::uint64_t start_key = encode(start);
    records_[start_key] = Record{};
    using Entry = std::pair<int, std::uint64_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
    queue.push({0, start_key});

    while (!queue.empty()) {
      const auto [cost, key] = queue.top();
      queue.pop();
      if (cost > records_[key].cost) continue;
      const State s = decode(key);
      if (s.done == all) {
        result.soc = cost;
        result.witness = witness(key);
        return result;
      }
      for (AgentId i = 0; i < k_; ++i) {
        if ((s.done >> i & 1u) == 0 && s.pos[i] == instance_.target(i)) {
          State next = s;
          next.done |= 1u << i;
          relax(queue, key, encode(next), cost, false);
        }
      }
      const int step = k_ - std::popcount(s.done);
      State next = s;
      expand_moves(s, next, 0, [&](const State& moved) { relax(queue, key, encode(moved), cost + step, true); });
    }
    return result;
  }

 private:
  template <typename Fn>
  void expand_moves(const State& from, State& next, AgentId i, const Fn& emit) {
    if (i == k_) {
      for (AgentId a = 0; a < k_; ++a) {
        for (AgentId b = a + 1; b < k_; ++b) {
          if (next.pos[a] == next.pos[b]) return;
          if (next.pos[a] == from.pos[b] && next.pos[b] == from.pos[a] && from.pos[a] != from.pos[b]) return;
        }
      }
      emit(next);
      return;
    }
    next.pos[i] = from.pos[i];
    expand_moves(from, next, i + 1, emit);
    if (from.done >> i & 1u) return;
    for (VertexId n : instance_.map().neighbors(from.pos[i])) {
      next.pos[i] = n;
      expand_moves(from, next, i + 1, emit);
    }
    next.pos[i] = from.pos[i];
  }

  template <typename Queue>
  void relax(Queue& queue, std::uint64_t parent, std::uint64_t key, int cost, bool move) {
    auto it = records_.find(key);
    if (it != records_.end() && it->second.cost <= cost) return;
    records_[key] = Record{cost, parent, true, move};
    queue.push({cost, key});
  }

  std::uint64_t encode(const State& s) const {
    std::uint64_t key = s.done;
    for (AgentId i = 0; i < k_; ++i) key = key * static_cast<std::uint64_t>(cells_) + s.pos[i];
    return key;
  }

  State decode(std::uint64_t key) const {
    State s;
    for (AgentId i = k_ - 1; i >= 0; --i) {
      s.pos[i] = static_cast<VertexId>(key % cells_);
      key /= cells_;
    }
    s.done = static_cast<unsigned>(key);
    return s;
  }

  Solution witness(std::uint64_t goal) const {
    std::vector<std::uint64_t> chain{goal};
    while (records_.at(chain.back()).has_parent) chain.push_back(records_.at(chain.back()).parent);
    std::reverse(chain.begin(), chain.end());

    Solution sol;
    sol.paths.resize(k_);
    for (AgentId i = 0; i < k_; ++i) sol.paths[i].agent = i;
    State first = decode(chain.front());
    for (AgentId i = 0; i < k_; ++i) sol.paths[i].cells.push_back(first.pos[i]);
    for (std::size_t n = 1; n < chain.size(); ++n) {
      if (!records_.at(chain[n]).move) continue;
      const State s = decode(chain[n]);
      const State prev = decode(chain[n - 1]);
      for (AgentId i = 0; i < k_; ++i)
        if ((prev.done >> i & 1u) == 0) sol.paths[i].cells.push_back(s.pos[i]);
    }
    return sol;
  }

  const Instance& instance_;
  int k_;
  int cells_;
  std::unordered_map<std::uint64_t, Record> records_;
};

}  // namespace

OracleResult optimal_soc(const Instance& instance) {
  if (instance.num_agents() > kOracleMaxAgents)
    throw OracleLimitError("oracle accepts at most 3 agents, got " + std::to_string(instance.num_agents()));
  if (instance.map().num_cells() > kOracleMaxCells)
    throw OracleLimitError("oracle accepts at most 36 cells, got " + std::to_string(instance.map().num_cells()));
  if (instance.num_agents() == 0) return OracleResult{0, Solution{}};
  return JointSearch(instance).run();
}

}  // namespace flexmapf

#include "flexmapf/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace flexmapf {

GridMap random_map(int height, int width, double density, Rng& rng) {
  const int cells = height * width;
  const int blocked = static_cast<int>(std::lround(std::clamp(density, 0.0, 1.0) * cells));
  std::vector<int> order(cells);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<bool> passable(cells, true);
  for (int i = 0; i < blocked; ++i) passable[order[i]] = false;
  return GridMap(height, width, std::move(passable));
}

std::vector<AgentSpec> random_agents(const GridMap& map, int k, Rng& rng) {
  std::vector<int> component(map.num_cells(), -1);
  std::vector<VertexId> best;
  for (VertexId v = 0; v < map.num_cells(); ++v) {
    if (!map.is_passable(v) || component[v] >= 0) continue;
    std::vector<VertexId> members{v};
    component[v] = v;
    for (std::size_t i = 0; i < members.size(); ++i)
      for (VertexId n : map.neighbors(members[i]))
        if (component[n] < 0) {
          component[n] = v;
          members.push_back(n);
        }
    if (members.size() > best.size()) best = std::move(members);
  }
  if (static_cast<int>(best.size()) < k)
    throw InstanceError("largest component has " + std::to_string(best.size()) + " cells, need " + std::to_string(k));
  std::sort(best.begin(), best.end());

  std::vector<VertexId> starts = best;
  std::vector<VertexId> targets = best;
  std::shuffle(starts.begin(), starts.end(), rng);
  std::shuffle(targets.begin(), targets.end(), rng);
  std::vector<AgentSpec> agents;
  for (AgentId i = 0; i < k; ++i) agents.push_back({i, map.cell(starts[i]), map.cell(targets[i])});
  return agents;
}

Instance random_instance(int height, int width, double density, int k, Rng& rng) {
  GridMap map = random_map(height, width, density, rng);
  auto agents = random_agents(map, k, rng);
  return Instance(std::move(map), std::move(agents));
}

}  // namespace flexmapf

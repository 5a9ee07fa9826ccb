#pragma once

#include <cstdint>
#include <random>

#include "flexmapf/grid_map.hpp"

namespace flexmapf {

using Rng = std::mt19937_64;

/// Grid with round(density * cells) blocked cells chosen uniformly.
GridMap random_map(int height, int width, double density, Rng& rng);

/// k agents with distinct starts and distinct targets drawn from the largest
/// connected component. Throws InstanceError if the component is too small.
std::vector<AgentSpec> random_agents(const GridMap& map, int k, Rng& rng);

Instance random_instance(int height, int width, double density, int k, Rng& rng);

}  // namespace flexmapf

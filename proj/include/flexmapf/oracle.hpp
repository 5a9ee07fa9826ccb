#pragma once

#include <optional>
#include <stdexcept>

#include "flexmapf/grid_map.hpp"
#include "flexmapf/path.hpp"

namespace flexmapf {

inline constexpr int kOracleMaxAgents = 3;
inline constexpr int kOracleMaxCells = 36;

/// Thrown when an instance is too large for exhaustive search.
class OracleLimitError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct OracleResult {
  /// Empty when no conflict-free joint plan exists.
  std::optional<int> soc;
  std::optional<Solution> witness;
};

/// Exact minimum sum of costs by uniform-cost search over joint states.
/// Accepts at most 3 agents on maps of at most 36 cells.
OracleResult optimal_soc(const Instance& instance);

}  // namespace flexmapf

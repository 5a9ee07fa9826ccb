#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "flexmapf/flex.hpp"

namespace flexmapf {

enum class Outcome { solved, timeout, infeasible };

const char* to_string(Outcome outcome);

/// One replan: the distributed flex and how much slack the new path used,
/// max(0, c_i - w * lb_i).
struct FlexUsage {
  double delta_max = 0.0;
  double delta = 0.0;
  double usage = 0.0;
  FlexBranch branch = FlexBranch::none;
};

/// Flex-usage histogram buckets [0,1) [1,2) [2,5) [5,10) [10,20) [20,inf).
inline constexpr std::array<double, 6> kFlexBucketEdges{0.0, 1.0, 2.0, 5.0, 10.0, 20.0};
using FlexHistogram = std::array<double, kFlexBucketEdges.size()>;

/// Percentage of replans per usage bucket, counting only replans whose
/// maximum allowed flex was non-negative. All zeros when there are none.
FlexHistogram flex_histogram(std::span<const FlexUsage> usage);

struct RunMetrics {
  Outcome outcome = Outcome::infeasible;
  int soc = -1;
  std::int64_t generated = 0;
  std::int64_t expanded = 0;
  /// Generated nodes with SOC <= w * LB at generation time.
  std::int64_t generated_gb = 0;
  /// CT nodes from the root to the solution node, or to the deepest expanded
  /// node when unsolved.
  int depth = 0;
  int lb0 = 0;
  int lb = 0;
  double runtime_s = 0.0;
  std::int64_t low_level_expanded = 0;
  std::vector<FlexUsage> flex;

  double gb_ratio() const;
  /// depth / (CT nodes taken from the lists: expansions plus the solution node).
  double depth_expansion_ratio() const;
  /// (LB - LB_0) / LB_0; zero when LB_0 is zero.
  double lbi() const;
  /// SOC / LB for solved runs.
  std::optional<double> global_suboptimality() const;
  FlexHistogram histogram() const { return flex_histogram(flex); }
};

/// Event sink the solver feeds while it runs.
class MetricsRecorder {
 public:
  /// Root generated with lower bound lb0; it always counts as bounded.
  void root(int lb0);
  void generated(bool globally_bounded);
  void expanded(int depth);
  void lower_bound(int lb);
  void replan(const FlexUsage& usage);
  void low_level(std::int64_t expansions) { metrics_.low_level_expanded += expansions; }

  /// `depth` is the solution node's depth; ignored unless solved.
  RunMetrics finish(Outcome outcome, int soc, int depth, double runtime_s) const;
  const RunMetrics& current() const { return metrics_; }

 private:
  RunMetrics metrics_;
  int deepest_ = 0;
};

}  // namespace flexmapf

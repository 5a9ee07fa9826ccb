#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "flexmapf/conflicts.hpp"
#include "flexmapf/ct_node.hpp"
#include "flexmapf/flex.hpp"
#include "flexmapf/frontier.hpp"
#include "flexmapf/grid_map.hpp"
#include "flexmapf/low_level.hpp"
#include "flexmapf/metrics.hpp"
#include "flexmapf/path.hpp"

namespace flexmapf {

enum class LowLevelVariant { focal, fastar };

const char* to_string(LowLevelVariant v);
std::optional<LowLevelVariant> parse_low_level(const std::string& text);

struct SolverConfig {
  double w = 1.0;
  FlexMode flex = FlexMode::none;
  LowLevelVariant low_level = LowLevelVariant::focal;
  bool bypass = true;
  bool prioritize = true;
  bool symmetry = true;
  double time_limit_s = 60.0;
  std::uint64_t seed = 0;
};

/// Hooks for instrumentation. `lb` is the global lower bound in force at the
/// event: for generation, the value sampled while the child was built.
class SolverObserver {
 public:
  virtual ~SolverObserver() = default;
  virtual void on_generate(const CTNode& /*node*/, const CTNode* /*parent*/, double /*lb*/) {}
  virtual void on_select(const CTNode& /*node*/, double /*lb*/) {}
};

struct SolveResult {
  Outcome outcome = Outcome::infeasible;
  std::optional<Solution> solution;
  RunMetrics metrics;
};

/// EECBS over a constraint tree with pluggable flex distribution.
class Solver {
 public:
  Solver(const Instance& instance, SolverConfig config, SolverObserver* observer = nullptr);

  SolveResult solve();

  /// Root node with one individually planned path per agent, or nullptr if
  /// some agent has no path.
  std::unique_ptr<CTNode> init_root();

  struct Expansion {
    std::vector<std::unique_ptr<CTNode>> children;
    /// True if a child's paths were adopted into the parent instead.
    bool bypassed = false;
    Conflict conflict;
  };

  /// Splits on the chosen conflict of `node` and replans. Children are not
  /// pushed; solve() does that.
  Expansion expand(CTNode& node);

  const SolverConfig& config() const { return config_; }
  const ProblemView& problem() const { return problem_; }
  Frontier& frontier() { return frontier_; }
  const RunMetrics& metrics() const { return recorder_.current(); }

 private:
  struct ChildBuild {
    std::unique_ptr<CTNode> node;
    /// Per replanned agent, the threshold under the parent's lb. Bypassed
    /// paths must fit it since the parent keeps its lbs.
    std::vector<double> parent_tau;
  };

  std::optional<LowLevelResult> run_low_level(const LowLevelRequest& req);
  std::optional<ChildBuild> generate_child(const CTNode& parent, const Constraint& constraint, double lb,
                                           const CTNode& lb_node);
  bool try_bypass(CTNode& parent, const ChildBuild& child);
  void refresh_conflicts(CTNode& node, const CTNode* parent);
  void set_estimates(CTNode& node) const;
  double elapsed() const;

  const Instance& instance_;
  SolverConfig config_;
  SolverObserver* observer_;
  std::vector<VertexId> starts_;
  std::vector<VertexId> targets_;
  std::vector<HeuristicTable> heuristics_;
  ProblemView problem_;
  Frontier frontier_;
  MetricsRecorder recorder_;
  std::vector<std::unique_ptr<CTNode>> nodes_;
  std::uint64_t next_id_ = 0;
  double cost_error_sum_ = 0.0;
  std::int64_t cost_error_count_ = 0;
  std::chrono::steady_clock::time_point started_;
};

SolveResult solve(const Instance& instance, const SolverConfig& config, SolverObserver* observer = nullptr);

}  // namespace flexmapf

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "flexmapf/flex.hpp"
#include "flexmapf/metrics.hpp"
#include "flexmapf/solver.hpp"

namespace flexmapf {

inline constexpr const char* kCsvVersionLine = "# flexmapf-results v1";

struct BenchSpec {
  std::filesystem::path map;
  std::vector<std::filesystem::path> scens;
  std::vector<int> agents;
  std::vector<double> ws;
  std::vector<FlexMode> modes;
  LowLevelVariant low_level = LowLevelVariant::focal;
  bool bypass = true;
  bool prioritize = true;
  bool symmetry = true;
  double time_limit_s = 120.0;
  int repetitions = 1;
  std::uint64_t seed = 0;
  int parallelism = 1;
  /// Empty paths are not written.
  std::filesystem::path csv;
  std::filesystem::path summary;
  std::filesystem::path plot;

  /// Throws std::invalid_argument naming the offending field.
  void check() const;
};

/// Relative paths resolve against `base`.
BenchSpec bench_spec_from_json(const nlohmann::json& j, const std::filesystem::path& base = {});
BenchSpec load_bench_spec(const std::filesystem::path& file);

struct ResultRow {
  std::string instance;
  int repetition = 0;
  int k = 0;
  double w = 1.0;
  FlexMode mode = FlexMode::none;
  LowLevelVariant low_level = LowLevelVariant::focal;
  /// solved, timeout, infeasible or error.
  std::string outcome;
  std::string error;
  int soc = -1;
  int lb0 = 0;
  int lb = 0;
  /// SOC / LB; negative when unsolved.
  double suboptimality = -1.0;
  double runtime_s = 0.0;
  std::int64_t generated = 0;
  std::int64_t expanded = 0;
  int depth = 0;
  double gb_ratio = 0.0;
  double depth_expansion_ratio = 0.0;
  double lbi = 0.0;
  /// Replans with non-negative maximum flex, the histogram's denominator.
  int flex_replans = 0;
  FlexHistogram flex_histogram{};

  bool solved() const { return outcome == "solved"; }
};

ResultRow make_row(const std::string& instance, int repetition, int k, const SolverConfig& config,
                   const SolveResult& result);

struct SuccessRate {
  int k = 0;
  double w = 1.0;
  FlexMode mode = FlexMode::none;
  int runs = 0;
  int solved = 0;

  double rate() const { return runs > 0 ? static_cast<double>(solved) / runs : 0.0; }
};

/// One entry per (k, w, mode) in first-seen order.
std::vector<SuccessRate> success_rates(const std::vector<ResultRow>& rows);

/// Metrics sidecar written by `flexmapf solve`.
nlohmann::json metrics_json(const SolverConfig& config, const SolveResult& result);

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);
void write_summary(std::ostream& out, const std::vector<SuccessRate>& rates);
nlohmann::json emit_plot_data(const std::vector<ResultRow>& rows);

/// Runs scen x k x w x mode x repetition. Rows come back in that nesting
/// order whatever the parallelism, and are written to the spec's outputs.
std::vector<ResultRow> run_benchmark(const BenchSpec& spec);

}  // namespace flexmapf

#include "flexmapf/metrics.hpp"

#include <algorithm>

namespace flexmapf {

const char* to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::solved: return "solved";
    case Outcome::timeout: return "timeout";
    case Outcome::infeasible: return "infeasible";
  }
  return "?";
}

FlexHistogram flex_histogram(std::span<const FlexUsage> usage) {
  FlexHistogram hist{};
  int counted = 0;
  for (const FlexUsage& u : usage) {
    if (u.delta_max < 0) continue;
    std::size_t bucket = 0;
    for (std::size_t b = 0; b < kFlexBucketEdges.size(); ++b)
      if (u.usage >= kFlexBucketEdges[b]) bucket = b;
    hist[bucket] += 1.0;
    ++counted;
  }
  if (counted > 0)
    for (double& h : hist) h = 100.0 * h / counted;
  return hist;
}

double RunMetrics::gb_ratio() const {
  return generated > 0 ? static_cast<double>(generated_gb) / static_cast<double>(generated) : 0.0;
}

double RunMetrics::depth_expansion_ratio() const {
  const std::int64_t taken = expanded + (outcome == Outcome::solved ? 1 : 0);
  return taken > 0 ? static_cast<double>(depth) / static_cast<double>(taken) : 0.0;
}

double RunMetrics::lbi() const { return lb0 > 0 ? static_cast<double>(lb - lb0) / lb0 : 0.0; }

std::optional<double> RunMetrics::global_suboptimality() const {
  if (outcome != Outcome::solved || lb <= 0) {
    if (outcome == Outcome::solved && soc == 0) return 1.0;
    return std::nullopt;
  }
  return static_cast<double>(soc) / lb;
}

void MetricsRecorder::root(int lb0) {
  metrics_.lb0 = lb0;
  metrics_.lb = lb0;
  metrics_.generated = 1;
  metrics_.generated_gb = 1;
}

void MetricsRecorder::generated(bool globally_bounded) {
  ++metrics_.generated;
  if (globally_bounded) ++metrics_.generated_gb;
}

void MetricsRecorder::expanded(int depth) {
  ++metrics_.expanded;
  deepest_ = std::max(deepest_, depth);
}

void MetricsRecorder::lower_bound(int lb) { metrics_.lb = std::max(metrics_.lb, lb); }

void MetricsRecorder::replan(const FlexUsage& usage) { metrics_.flex.push_back(usage); }

RunMetrics MetricsRecorder::finish(Outcome outcome, int soc, int depth, double runtime_s) const {
  RunMetrics out = metrics_;
  out.outcome = outcome;
  out.runtime_s = runtime_s;
  if (outcome == Outcome::solved) {
    out.soc = soc;
    out.depth = depth;
  } else {
    out.soc = -1;
    out.depth = deepest_;
  }
  return out;
}

}  // namespace flexmapf

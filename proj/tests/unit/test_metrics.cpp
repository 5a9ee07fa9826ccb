#include "doctest.h"
#include "flexmapf/metrics.hpp"

using namespace flexmapf;

namespace {

FlexUsage use(double usage, double delta_max = 10.0) {
  FlexUsage u;
  u.delta_max = delta_max;
  u.usage = usage;
  return u;
}

MetricsRecorder scripted() {
  MetricsRecorder r;
  r.root(10);
  r.generated(true);
  r.generated(false);
  r.generated(true);
  r.expanded(1);
  r.expanded(2);
  r.expanded(2);
  r.lower_bound(12);
  r.lower_bound(11);
  return r;
}

}  // namespace

TEST_CASE("solved trace") {
  const RunMetrics m = scripted().finish(Outcome::solved, 13, 3, 0.5);
  CHECK(m.generated == 4);
  CHECK(m.generated_gb == 3);
  CHECK(m.gb_ratio() == doctest::Approx(0.75));
  CHECK(m.expanded == 3);
  CHECK(m.depth == 3);
  CHECK(m.depth_expansion_ratio() == doctest::Approx(0.75));
  CHECK(m.lb0 == 10);
  CHECK(m.lb == 12);
  CHECK(m.lbi() == doctest::Approx(0.2));
  CHECK(*m.global_suboptimality() == doctest::Approx(13.0 / 12.0));
  CHECK(m.soc == 13);
}

TEST_CASE("unsolved trace reports the deepest expansion") {
  const RunMetrics m = scripted().finish(Outcome::timeout, 99, 7, 1.0);
  CHECK(m.soc == -1);
  CHECK(m.depth == 2);
  CHECK(m.depth_expansion_ratio() == doctest::Approx(2.0 / 3.0));
  CHECK_FALSE(m.global_suboptimality());
}

TEST_CASE("root-only run") {
  MetricsRecorder r;
  r.root(0);
  const RunMetrics m = r.finish(Outcome::solved, 0, 1, 0.0);
  CHECK(m.gb_ratio() == 1.0);
  CHECK(m.depth_expansion_ratio() == 1.0);
  CHECK(m.lbi() == 0.0);
}

TEST_CASE("flex histogram buckets") {
  const std::vector<FlexUsage> usage{use(0.5), use(1.0), use(3),  use(7),
                                     use(15),  use(25),  use(4, -1.0)};
  const FlexHistogram h = flex_histogram(usage);
  for (double v : h) CHECK(v == doctest::Approx(100.0 / 6.0));
  CHECK(flex_histogram(std::vector<FlexUsage>{}) == FlexHistogram{});
  const std::vector<FlexUsage> zeros{use(0), use(0), use(2)};
  const FlexHistogram z = flex_histogram(zeros);
  CHECK(z[0] == doctest::Approx(200.0 / 3.0));
  CHECK(z[2] == doctest::Approx(100.0 / 3.0));
}

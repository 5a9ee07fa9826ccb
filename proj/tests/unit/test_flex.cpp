#include "doctest.h"
#include "flexmapf/flex.hpp"

using namespace flexmapf;

namespace {

struct Snapshot {
  std::vector<int> costs;
  std::vector<int> lbs;
  FlexInputs in;

  Snapshot(double w, std::vector<int> c, std::vector<int> l) : costs(std::move(c)), lbs(std::move(l)) {
    in.w = w;
    in.agent = 0;
    in.costs = costs;
    in.lower_bounds = lbs;
    in.lb_parent = lbs[0];
  }
};

}  // namespace

TEST_CASE("maximum allowed flex sums the other agents' slack") {
  const std::vector<int> costs{50, 100, 202}, lbs{40, 100, 200};
  CHECK(max_allowed_flex(1.05, costs, lbs, 0) == doctest::Approx(13.0));
  const std::vector<int> tight{10, 20}, tight_lb{10, 20};
  CHECK(max_allowed_flex(1.0, tight, tight_lb, 0) == 0.0);
  const std::vector<int> over{10, 22}, over_lb{10, 20};
  CHECK(max_allowed_flex(1.0, over, over_lb, 0) < 0.0);
}

TEST_CASE("greedy distribution hands out everything") {
  Snapshot s(1.05, {50, 100, 202}, {40, 100, 200});
  const auto r = gfd_flex(s.in);
  CHECK(r.delta == doctest::Approx(13.0));
  CHECK(r.branch == FlexBranch::greedy);
}

TEST_CASE("conflict-based distribution") {
  Snapshot s(1.0, {0, 8}, {0, 20});
  s.in.agent_conflicts = 3;
  s.in.total_conflicts = 9;
  const auto r = cfd_flex(s.in);
  CHECK(r.delta_max == doctest::Approx(12.0));
  CHECK(r.rho == doctest::Approx(1.0 / 3.0));
  CHECK(r.delta == doctest::Approx(4.0));

  s.in.agent_conflicts = 9;
  CHECK(cfd_flex(s.in).delta == doctest::Approx(12.0));

  Snapshot negative(1.0, {0, 12}, {0, 10});
  negative.in.agent_conflicts = 1;
  negative.in.total_conflicts = 2;
  const auto n = cfd_flex(negative.in);
  CHECK(n.delta == doctest::Approx(-2.0));
  CHECK(n.branch == FlexBranch::fallback);

  Snapshot idle(1.0, {0, 8}, {0, 20});
  CHECK(cfd_flex(idle.in).rho == 0.0);
}

TEST_CASE("delay-based distribution") {
  Snapshot s(1.0, {0, 10}, {0, 20});
  s.in.agent_conflicts = 1;
  s.in.total_conflicts = 2;
  s.in.delay_sum = 2;
  auto r = dfd_flex(s.in);
  CHECK(r.delta_d == doctest::Approx(2.0));
  CHECK(r.delta == doctest::Approx(6.0));

  s.in.delay_sum = 25;
  r = dfd_flex(s.in);
  CHECK(r.delta_d == doctest::Approx(10.0));
  CHECK(r.delta == doctest::Approx(10.0));

  s.in.delay_sum = 0;
  CHECK(dfd_flex(s.in).delta == cfd_flex(s.in).delta);
}

TEST_CASE("mixed distribution") {
  // Agent 0 has lb 20 in the parent; the others cost 980 in total.
  SUBCASE("delay-based flex accepted") {
    Snapshot s(1.05, {0, 490, 490}, {20, 470, 470});
    s.in.agent_conflicts = 1;
    s.in.total_conflicts = 2;
    s.in.delay_sum = 5;
    const std::vector<int> frontier_lbs{20, 470, 470};
    const auto r = mfd_flex(s.in, {960.0, frontier_lbs});
    CHECK(r.delta_max == doctest::Approx(7.0));
    CHECK(r.delta == doctest::Approx(6.0));
    CHECK(r.branch == FlexBranch::mixed_delay);
  }
  SUBCASE("falls back to conflict-based flex") {
    Snapshot s(1.05, {0, 490, 490}, {20, 471, 470});
    s.in.agent_conflicts = 1;
    s.in.total_conflicts = 2;
    s.in.delay_sum = 8;
    const std::vector<int> frontier_lbs{20, 471, 470};
    CHECK(dfd_flex(s.in).delta == doctest::Approx(8.025));
    const auto r = mfd_flex(s.in, {960.0, frontier_lbs});
    CHECK(r.delta == doctest::Approx(4.025));
    CHECK(r.branch == FlexBranch::mixed_conflict);
  }
  SUBCASE("re-derives the maximum from the frontier node") {
    Snapshot s(1.05, {0, 490, 490}, {20, 475, 475});
    s.in.agent_conflicts = 1;
    s.in.total_conflicts = 2;
    const std::vector<int> frontier_lbs{20, 470, 470};
    const auto r = mfd_flex(s.in, {960.0, frontier_lbs});
    CHECK(r.delta_max == doctest::Approx(17.5));
    CHECK(r.delta == doctest::Approx(3.5));
    CHECK(r.branch == FlexBranch::mixed_frontier);
  }
  SUBCASE("zero flex when nothing passes") {
    Snapshot s(1.05, {0, 490, 490}, {20, 475, 475});
    s.in.agent_conflicts = 1;
    s.in.total_conflicts = 2;
    const std::vector<int> frontier_lbs{20, 475, 475};
    const auto r = mfd_flex(s.in, {960.0, frontier_lbs});
    CHECK(r.delta == 0.0);
    CHECK(r.branch == FlexBranch::mixed_zero);
  }
  SUBCASE("negative maximum is passed through") {
    Snapshot s(1.0, {0, 12}, {0, 10});
    const std::vector<int> frontier_lbs{0, 10};
    CHECK(mfd_flex(s.in, {10.0, frontier_lbs}).delta == doctest::Approx(-2.0));
  }
}

TEST_CASE("no flex mode distributes nothing") {
  Snapshot s(1.5, {0, 10}, {0, 10});
  const std::vector<int> frontier_lbs{0, 10};
  const auto r = compute_flex(FlexMode::none, s.in, {10.0, frontier_lbs});
  CHECK(r.delta == 0.0);
  CHECK(r.delta_max == doctest::Approx(5.0));
}

TEST_CASE("threshold") {
  CHECK(threshold(1.05, 40, 30, 6.0) == doctest::Approx(48.0));
  CHECK(threshold(1.0, 10, 12, 0.0) == doctest::Approx(12.0));
  CHECK(threshold(1.02, 200, 150, -3.0) == doctest::Approx(201.0));
}

TEST_CASE("flex mode names round trip") {
  for (FlexMode m : {FlexMode::none, FlexMode::gfd, FlexMode::cfd, FlexMode::dfd, FlexMode::mfd})
    CHECK(parse_flex_mode(to_string(m)) == m);
  CHECK_FALSE(parse_flex_mode("xfd"));
}

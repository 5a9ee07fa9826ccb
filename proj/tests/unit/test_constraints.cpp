#include "doctest.h"
#include "flexmapf/constraints.hpp"
#include "helpers.hpp"

using namespace flexmapf;

TEST_CASE("vertex constraint blocks a single timestep") {
  const GridMap m = flexmapf::testing::open_grid(1, 4);
  const std::vector<Constraint> cs{Constraint::at_vertex(0, 2, 3)};
  const ConstraintTable table(m, 0, cs);
  CHECK(table.vertex_blocked(2, 3));
  CHECK_FALSE(table.vertex_blocked(2, 2));
  CHECK_FALSE(table.vertex_blocked(2, 4));
}

TEST_CASE("range constraint blocks every timestep up to its bound") {
  const GridMap m = flexmapf::testing::open_grid(1, 4);
  const std::vector<Constraint> cs{Constraint::in_range(0, 1, 6)};
  const ConstraintTable table(m, 0, cs);
  for (int t = 0; t <= 6; ++t) CHECK(table.vertex_blocked(1, t));
  CHECK_FALSE(table.vertex_blocked(1, 7));
  CHECK(table.last_blocked(1) == 6);
}

TEST_CASE("edge constraint is directional") {
  const GridMap m = flexmapf::testing::open_grid(1, 4);
  const std::vector<Constraint> cs{Constraint::at_edge(0, 1, 2, 2)};
  const ConstraintTable table(m, 0, cs);
  CHECK(table.edge_blocked(1, 2, 2));
  CHECK_FALSE(table.edge_blocked(2, 1, 2));
  CHECK_FALSE(table.edge_blocked(1, 2, 3));
}

TEST_CASE("contradictory length bounds are infeasible") {
  const GridMap m = flexmapf::testing::open_grid(1, 4);
  const std::vector<Constraint> cs{Constraint::length_more_than(0, 3, 5), Constraint::length_at_most(0, 3, 4)};
  const ConstraintTable table(m, 0, cs);
  CHECK(table.infeasible());
  CHECK(table.earliest_goal() == 6);
  CHECK(table.latest_goal() == 4);
}

TEST_CASE("another agent's length bound blocks its target from the bound onward") {
  const GridMap m = flexmapf::testing::open_grid(1, 4);
  const std::vector<Constraint> all{Constraint::length_at_most(1, 3, 4), Constraint::at_vertex(1, 0, 1)};
  const auto mine = constraints_for(0, all);
  REQUIRE(mine.size() == 1);
  const ConstraintTable table(m, 0, mine);
  CHECK_FALSE(table.vertex_blocked(3, 3));
  CHECK(table.vertex_blocked(3, 4));
  CHECK(table.vertex_blocked(3, 400));
  CHECK(table.last_blocked(3) == kForever);
  CHECK(table.earliest_final_arrival(3) == kForever);
}

TEST_CASE("goal arrival must clear later blocks on the target") {
  const GridMap m = flexmapf::testing::open_grid(1, 4);
  const std::vector<Constraint> cs{Constraint::at_vertex(0, 3, 5)};
  const ConstraintTable table(m, 0, cs);
  CHECK_FALSE(table.goal_allowed(3, 3));
  CHECK(table.goal_allowed(3, 6));
  CHECK(table.earliest_final_arrival(3) == 6);
}

TEST_CASE("violation checks cover every constraint kind") {
  const Path p{0, {0, 1, 2, 3}};
  CHECK(violates(p, Constraint::at_vertex(0, 2, 2)));
  CHECK_FALSE(violates(p, Constraint::at_vertex(0, 2, 1)));
  CHECK(violates(p, Constraint::at_vertex(0, 3, 9)));
  CHECK(violates(p, Constraint::at_edge(0, 1, 2, 2)));
  CHECK_FALSE(violates(p, Constraint::at_edge(0, 2, 1, 2)));
  CHECK(violates(p, Constraint::in_range(0, 1, 1)));
  CHECK_FALSE(violates(p, Constraint::in_range(0, 1, 0)));
  CHECK(violates(p, Constraint::length_at_most(0, 3, 2)));
  CHECK_FALSE(violates(p, Constraint::length_at_most(0, 3, 3)));
  CHECK(violates(p, Constraint::length_more_than(0, 3, 3)));
  CHECK_FALSE(violates(p, Constraint::length_more_than(0, 3, 2)));
  // Another agent's bound on vertex 2: visiting 2 at or after t breaks it.
  CHECK(violates(p, Constraint::length_at_most(1, 2, 2)));
  CHECK_FALSE(violates(p, Constraint::length_at_most(1, 2, 3)));
  CHECK_FALSE(violates(p, Constraint::at_vertex(1, 2, 2)));
}

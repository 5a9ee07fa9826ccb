// Acceptance suite. Prints one line per criterion and exits non-zero if any
// criterion fails. Pass criterion numbers as arguments to run a subset.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "brute_force.hpp"
#include "flexmapf/bench.hpp"
#include "flexmapf/generator.hpp"
#include "flexmapf/oracle.hpp"
#include "flexmapf/solver.hpp"
#include "flexmapf/validator.hpp"
#include "scratch.hpp"

using namespace flexmapf;

namespace {

constexpr FlexMode kModes[] = {FlexMode::none, FlexMode::gfd, FlexMode::cfd, FlexMode::dfd, FlexMode::mfd};
constexpr LowLevelVariant kLowLevels[] = {LowLevelVariant::focal, LowLevelVariant::fastar};

struct Verdict {
  bool pass = true;
  std::string detail;
  std::vector<std::string> failures;

  void fail(const std::string& what) {
    pass = false;
    if (failures.size() < 5) failures.push_back(what);
  }
};

std::string fmt(double v, int precision = 3) {
  std::ostringstream out;
  out.precision(precision);
  out << std::fixed << v;
  return out.str();
}

std::string describe(const Instance& inst) {
  std::ostringstream out;
  out << inst.map().height() << "x" << inst.map().width() << " k=" << inst.num_agents() << " [";
  for (const auto& a : inst.agents())
    out << " (" << a.start.row << "," << a.start.col << ")->(" << a.target.row << "," << a.target.col << ")";
  out << " ]";
  return out.str();
}

std::string label(const SolverConfig& c) {
  return "w=" + fmt(c.w, 2) + " " + to_string(c.flex) + "/" + to_string(c.low_level);
}

// ---------------------------------------------------------------------------
// Shared state: solutions from criteria 1-3 are validated by criterion 7, and
// the instrumented runs of criterion 3 feed criteria 6 and 8.

struct Emitted {
  const Instance* instance;
  Solution solution;
  std::string where;
};

struct Shared {
  std::vector<Instance> tiny;
  std::vector<int> tiny_optimum;
  int tiny_interacting = 0;
  std::vector<Instance> medium;
  std::vector<Emitted> solutions;
  bool solved_1 = false, solved_2 = false, solved_3 = false;

  // Criterion 3 audit results.
  std::int64_t generated_checked = 0;
  std::int64_t selected_checked = 0;
  std::vector<std::string> local_violations;
  std::int64_t monotone_checked = 0;
  std::vector<std::string> monotone_violations;
  std::vector<std::string> recorder_mismatches;
};

Shared shared;

void build_tiny_set() {
  if (!shared.tiny.empty()) return;
  Rng rng(20240601);
  std::uniform_int_distribution<int> side(3, 5), agents(2, 3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double densities[] = {0.0, 0.1, 0.2};
  int attempt = 0;
  while (shared.tiny.size() < 200) {
    const int h = side(rng), w = side(rng), k = agents(rng);
    const double density = densities[attempt++ % 3];
    try {
      Instance inst = random_instance(h, w, density, k, rng);
      const OracleResult exact = optimal_soc(inst);
      if (!exact.soc) continue;
      // Most instances where agents never interact are skipped.
      int independent = 0;
      for (AgentId i = 0; i < inst.num_agents(); ++i)
        independent += bfs_distances(inst.map(), inst.target(i))[inst.start(i)];
      if (*exact.soc == independent && unit(rng) > 0.2) continue;
      if (*exact.soc > independent) ++shared.tiny_interacting;
      shared.tiny_optimum.push_back(*exact.soc);
      shared.tiny.push_back(std::move(inst));
    } catch (const InstanceError&) {
    }
  }
}

void build_medium_set() {
  if (!shared.medium.empty()) return;
  Rng rng(777);
  std::uniform_int_distribution<int> agents(5, 8);
  while (shared.medium.size() < 50) {
    try {
      shared.medium.push_back(random_instance(8, 8, 0.25, agents(rng), rng));
    } catch (const InstanceError&) {
    }
  }
}

// ---------------------------------------------------------------------------

Verdict criterion_1() {
  build_tiny_set();
  Verdict v;
  int runs = 0;
  for (std::size_t i = 0; i < shared.tiny.size(); ++i) {
    const Instance& inst = shared.tiny[i];
    const int optimum = shared.tiny_optimum[i];
    for (double w : {1.0, 1.02, 1.05, 1.5})
      for (FlexMode mode : kModes)
        for (LowLevelVariant ll : kLowLevels) {
          SolverConfig config;
          config.w = w;
          config.flex = mode;
          config.low_level = ll;
          config.time_limit_s = 30;
          const SolveResult r = solve(inst, config);
          ++runs;
          if (r.outcome != Outcome::solved) {
            v.fail(describe(inst) + " " + label(config) + ": " + to_string(r.outcome));
            continue;
          }
          if (r.metrics.soc > w * optimum + 1e-9)
            v.fail(describe(inst) + " " + label(config) + ": soc " + std::to_string(r.metrics.soc) + " > " +
                   fmt(w, 2) + "*" + std::to_string(optimum));
          shared.solutions.push_back({&inst, *r.solution, "criterion 1 " + label(config)});
        }
  }
  shared.solved_1 = true;
  v.detail = std::to_string(shared.tiny.size()) + " instances (" + std::to_string(shared.tiny_interacting) +
             " with C* above the sum of distances), " + std::to_string(runs) + " runs";
  return v;
}

Verdict criterion_2() {
  build_tiny_set();
  Verdict v;
  int exact = 0;
  for (std::size_t i = 0; i < shared.tiny.size(); ++i) {
    const Instance& inst = shared.tiny[i];
    for (LowLevelVariant ll : kLowLevels) {
      SolverConfig config;
      config.w = 1.0;
      config.low_level = ll;
      config.time_limit_s = 30;
      const SolveResult r = solve(inst, config);
      if (r.outcome != Outcome::solved) {
        v.fail(describe(inst) + " " + label(config) + ": " + to_string(r.outcome));
        continue;
      }
      if (r.metrics.soc == shared.tiny_optimum[i])
        ++exact;
      else
        v.fail(describe(inst) + " " + label(config) + ": soc " + std::to_string(r.metrics.soc) + " != " +
               std::to_string(shared.tiny_optimum[i]));
      shared.solutions.push_back({&inst, *r.solution, "criterion 2 " + label(config)});
    }
  }
  shared.solved_2 = true;
  v.detail = std::to_string(exact) + "/" + std::to_string(2 * shared.tiny.size()) + " runs exactly optimal";
  return v;
}

class Audit : public SolverObserver {
 public:
  Audit(double w, std::string where) : w_(w), where_(std::move(where)) {}

  void on_generate(const CTNode& node, const CTNode* parent, double lb) override {
    ++generated_;
    if (bounded(node.soc, w_, lb)) ++generated_gb_;
    ++shared.generated_checked;
    if (!bounded(node.soc, w_, node.solb))
      note(shared.local_violations, "generated node " + std::to_string(node.id) + " soc " + std::to_string(node.soc) +
                                        " > w*" + std::to_string(node.solb));
    if (parent == nullptr) return;
    ++shared.monotone_checked;
    if (node.solb < parent->solb)
      note(shared.monotone_violations, "LB fell from " + std::to_string(parent->solb) + " to " + std::to_string(node.solb));
    for (int i = 0; i < node.num_agents(); ++i)
      if (node.lower_bounds[i] < parent->lower_bounds[i])
        note(shared.monotone_violations, "lb of agent " + std::to_string(i) + " fell from " +
                                             std::to_string(parent->lower_bounds[i]) + " to " +
                                             std::to_string(node.lower_bounds[i]));
  }

  void on_select(const CTNode& node, double lb) override {
    ++shared.selected_checked;
    if (!bounded(node.soc, w_, lb))
      note(shared.local_violations, "selected node " + std::to_string(node.id) + " soc " + std::to_string(node.soc) +
                                        " > w*LB " + fmt(lb, 1));
  }

  std::int64_t generated() const { return generated_; }
  std::int64_t generated_gb() const { return generated_gb_; }

 private:
  void note(std::vector<std::string>& sink, const std::string& what) {
    if (sink.size() < 5) sink.push_back(where_ + ": " + what);
  }

  double w_;
  std::string where_;
  std::int64_t generated_ = 0;
  std::int64_t generated_gb_ = 0;
};

Verdict criterion_3() {
  build_medium_set();
  Verdict v;
  int solved = 0, runs = 0;
  for (const Instance& inst : shared.medium) {
    for (FlexMode mode : kModes)
      for (LowLevelVariant ll : kLowLevels) {
        SolverConfig config;
        config.w = 1.05;
        config.flex = mode;
        config.low_level = ll;
        config.time_limit_s = 30;
        const std::string where = describe(inst) + " " + label(config);
        Audit audit(config.w, where);
        const SolveResult r = solve(inst, config, &audit);
        ++runs;
        if (audit.generated() != r.metrics.generated || audit.generated_gb() != r.metrics.generated_gb)
          if (shared.recorder_mismatches.size() < 5)
            shared.recorder_mismatches.push_back(where + ": observed " + std::to_string(audit.generated()) + "/" +
                                                 std::to_string(audit.generated_gb()) + " recorded " +
                                                 std::to_string(r.metrics.generated) + "/" +
                                                 std::to_string(r.metrics.generated_gb));
        if (r.outcome == Outcome::solved) {
          ++solved;
          if (!bounded(r.metrics.soc, config.w, r.metrics.lb))
            v.fail(where + ": final soc above w*LB");
          shared.solutions.push_back({&inst, *r.solution, "criterion 3 " + label(config)});
        }
      }
  }
  shared.solved_3 = true;
  for (const auto& s : shared.local_violations) v.fail(s);
  v.detail = std::to_string(shared.generated_checked) + " generated and " + std::to_string(shared.selected_checked) +
             " selected nodes checked, " + std::to_string(solved) + "/" + std::to_string(runs) + " runs solved";
  return v;
}

// Independent restatement of the flex rules.
struct FlexOracle {
  double w;
  int agent;
  std::vector<int> costs, lbs;

  double delta_max() const {
    double sum = 0;
    for (std::size_t j = 0; j < costs.size(); ++j)
      if (static_cast<int>(j) != agent) sum += w * lbs[j] - costs[j];
    return sum;
  }
};

Verdict criterion_4() {
  Verdict v;
  Rng rng(4242);
  const double ws[] = {1.0, 1.01, 1.02, 1.05, 1.1, 1.2, 1.5, 2.0};
  std::uniform_int_distribution<int> pick_w(0, 7), agents(2, 8), lb(0, 60), over(-3, 3), conflicts(0, 25),
      delay(0, 40), shrink(0, 6), coin(0, 3);
  const int tuples = 20000;
  int negative = 0;
  for (int n = 0; n < tuples; ++n) {
    FlexOracle o;
    o.w = ws[pick_w(rng)];
    const int k = agents(rng);
    o.agent = std::uniform_int_distribution<int>(0, k - 1)(rng);
    for (int j = 0; j < k; ++j) {
      const int l = lb(rng);
      o.lbs.push_back(l);
      o.costs.push_back(std::max(l, static_cast<int>(std::floor(o.w * l)) + over(rng)));
    }
    FlexInputs in;
    in.w = o.w;
    in.agent = o.agent;
    in.costs = o.costs;
    in.lower_bounds = o.lbs;
    in.lb_parent = o.lbs[o.agent];
    in.total_conflicts = coin(rng) == 0 ? 0 : conflicts(rng);
    in.agent_conflicts = in.total_conflicts == 0 ? 0 : std::uniform_int_distribution<int>(0, in.total_conflicts)(rng);
    in.delay_sum = delay(rng);

    std::vector<int> frontier_lbs = o.lbs;
    for (int& l : frontier_lbs) l = std::max(0, l - (coin(rng) == 0 ? shrink(rng) : 0));
    double frontier_lb = 0;
    for (int l : frontier_lbs) frontier_lb += l;
    const FrontierView frontier{frontier_lb, frontier_lbs};

    const double dmax = o.delta_max();
    const double rho = in.total_conflicts == 0 ? 0.0 : static_cast<double>(in.agent_conflicts) / in.total_conflicts;
    if (dmax < 0) ++negative;
    const std::string where = "tuple " + std::to_string(n);

    const FlexComputation cfd = cfd_flex(in), dfd = dfd_flex(in), mfd = mfd_flex(in, frontier);
    const FlexComputation gfd = gfd_flex(in);
    for (const auto& [name, f] : {std::pair{"gfd", &gfd}, std::pair{"cfd", &cfd}, std::pair{"dfd", &dfd},
                                  std::pair{"mfd", &mfd}}) {
      const std::string tag = where + " " + name;
      if (std::abs(f->delta_max - dmax) > 1e-9) v.fail(tag + ": delta_max " + fmt(f->delta_max) + " != " + fmt(dmax));
      if (f->rho < 0 || f->rho > 1) v.fail(tag + ": rho out of range");
      if (dmax < 0) {
        if (f->delta != dmax) v.fail(tag + ": negative maximum not passed through");
      } else if (f->delta < -1e-12 || f->delta > dmax + 1e-9) {
        v.fail(tag + ": delta " + fmt(f->delta) + " outside [0, " + fmt(dmax) + "]");
      }
    }
    if (dmax >= 0) {
      if (std::abs(gfd.delta - dmax) > 1e-9) v.fail(where + ": gfd is not greedy");
      if (std::abs(cfd.delta - rho * dmax) > 1e-9) v.fail(where + ": cfd share");
      const double dd = std::min<double>(in.delay_sum, dmax);
      if (std::abs(dfd.delta - (dd + rho * (dmax - dd))) > 1e-9) v.fail(where + ": dfd share");
      if (dfd.delta + 1e-12 < cfd.delta) v.fail(where + ": dfd below cfd");
      int others_cost = 0;
      for (std::size_t j = 0; j < o.costs.size(); ++j)
        if (static_cast<int>(j) != o.agent) others_cost += o.costs[j];
      const bool gate = o.w * in.lb_parent + mfd.delta + others_cost <= o.w * frontier_lb + 1e-9;
      if ((mfd.branch == FlexBranch::mixed_delay || mfd.branch == FlexBranch::mixed_conflict) && !gate)
        v.fail(where + ": mfd accepted an unbounded flex");
      if (mfd.delta > dfd.delta + 1e-9) v.fail(where + ": mfd above dfd");
    }
    FlexInputs no_delay = in;
    no_delay.delay_sum = 0;
    if (dfd_flex(no_delay).delta != cfd_flex(no_delay).delta) v.fail(where + ": dfd with no delay differs from cfd");
  }
  v.detail = std::to_string(tuples) + " tuples, " + std::to_string(negative) + " with negative maximum";
  return v;
}

Verdict criterion_5() {
  Verdict v;
  Rng rng(99);
  std::uniform_int_distribution<int> side(2, 5), kind(0, 6), time(0, 7), coin(0, 1);
  const double ws[] = {1.0, 1.02, 1.05, 1.2, 1.5, 2.0};
  const double deltas[] = {0.0, 0.0, 0.5, 1.0, 2.5};
  int requests = 0, feasible = 0, tighter = 0;
  while (requests < 600) {
    const int h = side(rng), wd = side(rng);
    GridMap map = random_map(h, wd, coin(rng) ? 0.0 : 0.15, rng);
    std::vector<VertexId> open;
    for (VertexId c = 0; c < map.num_cells(); ++c)
      if (map.is_passable(c)) open.push_back(c);
    if (open.size() < 2) continue;
    std::uniform_int_distribution<std::size_t> cell(0, open.size() - 1);
    const VertexId s = open[cell(rng)], g = open[cell(rng)];
    if (testing::constrained_optimum(map, 0, s, g, {}) == std::nullopt) continue;

    std::vector<Constraint> cs;
    const int count = std::uniform_int_distribution<int>(0, 6)(rng);
    for (int c = 0; c < count; ++c) {
      const VertexId u = open[cell(rng)];
      const int t = 1 + time(rng);
      switch (kind(rng)) {
        case 0:
        case 1: cs.push_back(Constraint::at_vertex(0, u, t)); break;
        case 2: {
          const auto n = map.neighbors(u);
          if (!n.empty()) cs.push_back(Constraint::at_edge(0, u, n[coin(rng) % n.size()], t));
          break;
        }
        case 3:
          if (u != s) cs.push_back(Constraint::in_range(0, u, t / 2));
          break;
        case 4: cs.push_back(Constraint::length_more_than(0, g, t)); break;
        case 5: cs.push_back(Constraint::length_at_most(0, g, t + 4)); break;
        case 6:
          if (u != g && u != s) cs.push_back(Constraint::length_at_most(1, u, t));
          break;
      }
    }
    const ConstraintTable table(map, 0, cs);
    const HeuristicTable heuristic = compute_h(map, g);

    // Random other agents steer the focal search away from shortest paths.
    std::vector<Path> walkers;
    for (AgentId a = 1; a <= 3; ++a) {
      Path walk{a, {open[cell(rng)]}};
      for (int t = 0; t < 12; ++t) {
        auto n = map.neighbors(walk.cells.back());
        n.push_back(walk.cells.back());
        walk.cells.push_back(n[std::uniform_int_distribution<std::size_t>(0, n.size() - 1)(rng)]);
      }
      walkers.push_back(std::move(walk));
    }
    std::vector<const Path*> others;
    for (const Path& p : walkers) others.push_back(&p);
    const ConflictAvoidanceTable avoidance(map, others, 0);

    LowLevelRequest req;
    req.start = s;
    req.target = g;
    req.heuristic = &heuristic;
    req.constraints = &table;
    req.avoidance = &avoidance;
    req.w = ws[std::uniform_int_distribution<int>(0, 5)(rng)];
    req.delta = deltas[std::uniform_int_distribution<int>(0, 4)(rng)];
    ++requests;

    const auto expect = testing::constrained_optimum(map, 0, s, g, cs);
    const auto focal = focal_search(map, req);
    const auto fastar = fastar_search(map, req);
    const std::string where = "request " + std::to_string(requests);
    if (!expect) {
      if (focal || fastar) v.fail(where + ": found a path where none exists");
      continue;
    }
    if (!focal || !fastar) {
      v.fail(where + ": missed a path of cost " + std::to_string(*expect));
      continue;
    }
    ++feasible;
    if (fastar->lb < focal->lb) v.fail(where + ": fastar lb " + std::to_string(fastar->lb) + " < focal lb " +
                                       std::to_string(focal->lb));
    if (fastar->lb != *expect) v.fail(where + ": fastar lb " + std::to_string(fastar->lb) + " != optimum " +
                                      std::to_string(*expect));
    if (fastar->lb > focal->lb) ++tighter;
  }
  v.detail = std::to_string(requests) + " requests, " + std::to_string(feasible) + " feasible, fastar tighter on " +
             std::to_string(tighter);
  return v;
}

Verdict criterion_6() {
  if (!shared.solved_3) criterion_3();
  Verdict v;
  for (const auto& s : shared.monotone_violations) v.fail(s);
  v.detail = std::to_string(shared.monotone_checked) + " parent-child pairs checked";
  return v;
}

Verdict criterion_7() {
  if (!shared.solved_1) criterion_1();
  if (!shared.solved_2) criterion_2();
  if (!shared.solved_3) criterion_3();
  Verdict v;
  for (const Emitted& e : shared.solutions) {
    const ValidationReport r = validate(e.solution, *e.instance);
    if (!r.ok()) v.fail(e.where + " " + describe(*e.instance) + ": " + r.violations.front().message);
  }
  v.detail = std::to_string(shared.solutions.size()) + " solutions validated";
  return v;
}

Verdict criterion_8() {
  Verdict v;
  auto expect = [&](const std::string& what, double got, double want) {
    if (got != want) v.fail(what + ": got " + fmt(got, 6) + ", want " + fmt(want, 6));
  };
  // Root plus 7 children, 5 of them within w * LB at generation.
  MetricsRecorder r;
  r.root(40);
  for (bool gb : {true, true, false, true, false, true, true}) r.generated(gb);
  // Expansions at depths 1, 2, 2, 3; the solution sits at depth 4.
  for (int depth : {1, 2, 2, 3}) r.expanded(depth);
  for (int lb : {40, 42, 41, 50}) r.lower_bound(lb);
  auto usage = [](double delta_max, double used) {
    FlexUsage u;
    u.delta_max = delta_max;
    u.usage = used;
    return u;
  };
  for (const FlexUsage& u : {usage(3, 0), usage(3, 0.5), usage(6, 1), usage(8, 4.5), usage(12, 9.99),
                             usage(30, 10), usage(40, 25), usage(-2, 7)})
    r.replan(u);
  const RunMetrics m = r.finish(Outcome::solved, 54, 4, 1.0);
  expect("generated", m.generated, 8);
  expect("gb ratio", m.gb_ratio(), 6.0 / 8.0);
  expect("depth/expansion", m.depth_expansion_ratio(), 4.0 / 5.0);
  expect("lbi", m.lbi(), 10.0 / 40.0);
  expect("suboptimality", m.global_suboptimality().value_or(-1), 54.0 / 50.0);
  const FlexHistogram h = m.histogram();
  // Buckets: [0,1) 0 and 0.5; [1,2) 1; [2,5) 4.5; [5,10) 9.99; [10,20) 10; [20,inf) 25.
  const double counts[] = {2, 1, 1, 1, 1, 1};
  for (std::size_t b = 0; b < h.size(); ++b) expect("histogram bucket " + std::to_string(b), h[b], 100.0 * counts[b] / 7);

  const RunMetrics t = r.finish(Outcome::timeout, 54, 4, 1.0);
  expect("unsolved depth", t.depth, 3);
  expect("unsolved depth/expansion", t.depth_expansion_ratio(), 3.0 / 4.0);
  expect("unsolved soc", t.soc, -1);

  if (!shared.solved_3) criterion_3();
  for (const auto& s : shared.recorder_mismatches) v.fail(s);
  v.detail = "scripted trace plus recorder totals of " + std::to_string(shared.medium.size() * 10) + " instrumented runs";
  return v;
}

Verdict criterion_9() {
  Verdict v;
  Rng rng(31337);
  std::uniform_int_distribution<int> agents(40, 60);
  struct Tally {
    double gb = 0;
    int solved = 0;
    int runs = 0;
  } gfd, mfd;
  for (int n = 0; n < 25; ++n) {
    const int k = agents(rng);
    const Instance inst = random_instance(32, 32, 0.2, k, rng);
    for (auto [mode, tally] : {std::pair{FlexMode::gfd, &gfd}, std::pair{FlexMode::mfd, &mfd}}) {
      SolverConfig config;
      config.w = 1.05;
      config.flex = mode;
      config.time_limit_s = 120;
      const SolveResult r = solve(inst, config);
      tally->gb += r.metrics.gb_ratio();
      tally->runs += 1;
      if (r.outcome == Outcome::solved) {
        tally->solved += 1;
        const ValidationReport report = validate(*r.solution, inst);
        if (!report.ok()) v.fail("instance " + std::to_string(n) + " " + to_string(mode) + ": invalid solution");
      }
    }
  }
  const double gb_g = gfd.gb / gfd.runs, gb_m = mfd.gb / mfd.runs;
  const double sr_g = static_cast<double>(gfd.solved) / gfd.runs, sr_m = static_cast<double>(mfd.solved) / mfd.runs;
  if (gb_m < gb_g) v.fail("mean GB ratio mfd " + fmt(gb_m) + " < gfd " + fmt(gb_g));
  if (sr_m < sr_g - 0.05) v.fail("success rate mfd " + fmt(sr_m) + " < gfd " + fmt(sr_g) + " - 0.05");
  v.detail = "GB ratio gfd " + fmt(gb_g) + " mfd " + fmt(gb_m) + "; success gfd " + fmt(sr_g) + " mfd " + fmt(sr_m);
  return v;
}

std::vector<std::string> rows_without_runtime(const std::filesystem::path& csv) {
  std::ifstream in(csv);
  std::vector<std::string> rows;
  std::string line;
  int runtime_column = -1;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::stringstream s(line);
    std::string f;
    while (std::getline(s, f, ',')) fields.push_back(f);
    if (runtime_column < 0) {
      for (std::size_t i = 0; i < fields.size(); ++i)
        if (fields[i] == "runtime_s") runtime_column = static_cast<int>(i);
      rows.push_back(line);
      continue;
    }
    fields.erase(fields.begin() + runtime_column);
    std::string joined;
    for (const auto& x : fields) joined += x + ",";
    rows.push_back(joined);
  }
  return rows;
}

Verdict criterion_10() {
  Verdict v;
  testing::ScratchDir dir("acceptance-determinism");
  testing::write_benchmark_files(dir.path(), 16, 16, 0.2, 14, 3, 5);
  auto spec_for = [&](const std::string& csv, int parallelism) {
    nlohmann::json j{{"map", "map.map"},
                     {"scens", {"s0.scen", "s1.scen", "s2.scen"}},
                     {"agents", {8, 14}},
                     {"w", {1.05, 1.2}},
                     {"modes", {"none", "gfd", "cfd", "dfd", "mfd"}},
                     {"time_limit", 30},
                     {"repetitions", 2},
                     {"seed", 17},
                     {"parallelism", parallelism},
                     {"csv", csv}};
    return bench_spec_from_json(j, dir.path());
  };
  const BenchSpec first = spec_for("a.csv", 1), second = spec_for("b.csv", 2);
  run_benchmark(first);
  run_benchmark(second);
  const auto a = rows_without_runtime(first.csv), b = rows_without_runtime(second.csv);
  if (a.size() != b.size()) v.fail("row counts differ: " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  std::size_t differing = 0;
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i)
    if (a[i] != b[i]) {
      ++differing;
      v.fail("row " + std::to_string(i) + " differs:\n    " + a[i] + "\n    " + b[i]);
    }
  const std::size_t data_rows = a.size() > 2 ? a.size() - 2 : 0;
  if (data_rows != 120) v.fail("expected 120 rows, got " + std::to_string(data_rows));
  v.detail = std::to_string(data_rows) + " rows compared, " + std::to_string(differing) + " differ";
  return v;
}

struct Criterion {
  int number;
  const char* name;
  std::function<Verdict()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "bounded suboptimality against the exact optimum", criterion_1},
      {2, "optimality at w = 1", criterion_2},
      {3, "local boundedness of generated and selected nodes", criterion_3},
      {4, "flex bounds", criterion_4},
      {5, "FA* lower-bound dominance and exactness", criterion_5},
      {6, "lower-bound monotonicity", criterion_6},
      {7, "solution validity", criterion_7},
      {8, "metrics correctness", criterion_8},
      {9, "MFD vs GFD on 32x32 maps", criterion_9},
      {10, "benchmark determinism", criterion_10},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failed = 0;
  for (const Criterion& c : criteria) {
    if (!selected.empty() && !selected.contains(c.number)) continue;
    const auto started = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    std::cout << (v.pass ? "[PASS] " : "[FAIL] ") << c.number << ". " << c.name << " (" << v.detail << "; "
              << fmt(secs, 1) << "s)\n";
    for (const auto& f : v.failures) std::cout << "       " << f << '\n';
    std::cout.flush();
    if (!v.pass) ++failed;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << '\n';
  return failed == 0 ? 0 : 1;
}

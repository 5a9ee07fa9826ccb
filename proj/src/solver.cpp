#include "flexmapf/solver.hpp"

#include <algorithm>

namespace flexmapf {

const char* to_string(LowLevelVariant v) { return v == LowLevelVariant::focal ? "focal" : "fastar"; }

std::optional<LowLevelVariant> parse_low_level(const std::string& text) {
  if (text == "focal") return LowLevelVariant::focal;
  if (text == "fastar") return LowLevelVariant::fastar;
  return std::nullopt;
}

Solver::Solver(const Instance& instance, SolverConfig config, SolverObserver* observer)
    : instance_(instance), config_(config), observer_(observer), frontier_(config.w) {
  if (config_.w < 1.0) throw std::invalid_argument("suboptimality factor must be >= 1");
  const int k = instance.num_agents();
  for (AgentId i = 0; i < k; ++i) {
    starts_.push_back(instance.start(i));
    targets_.push_back(instance.target(i));
    heuristics_.push_back(compute_h(instance.map(), instance.target(i)));
  }
  problem_.map = &instance_.map();
  problem_.starts = starts_;
  problem_.targets = targets_;
  problem_.heuristics = heuristics_;
  started_ = std::chrono::steady_clock::now();
}

double Solver::elapsed() const {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - started_).count();
}

std::optional<LowLevelResult> Solver::run_low_level(const LowLevelRequest& req) {
  auto result = config_.low_level == LowLevelVariant::fastar ? fastar_search(instance_.map(), req)
                                                              : focal_search(instance_.map(), req);
  if (result) recorder_.low_level(result->expanded);
  return result;
}

void Solver::set_estimates(CTNode& node) const {
  const double error = cost_error_count_ > 0 ? cost_error_sum_ / cost_error_count_ : 0.0;
  node.d_hat = node.conflict_total;
  node.f_hat = node.soc + error * node.conflict_total;
}

void Solver::refresh_conflicts(CTNode& node, const CTNode* parent) {
  const int k = node.num_agents();
  if (parent == nullptr) {
    const auto ptrs = node.path_ptrs();
    ConflictReport report = detect_conflicts(ptrs, k);
    node.conflicts = std::move(report.conflicts);
  } else {
    std::vector<bool> replanned(k, false);
    for (AgentId a : node.replanned) replanned[a] = true;
    node.conflicts.clear();
    for (const Conflict& c : parent->conflicts)
      if (!replanned[c.agent1] && !replanned[c.agent2]) node.conflicts.push_back(c);
    for (AgentId a : node.replanned) {
      for (AgentId b = 0; b < k; ++b) {
        if (b == a || (replanned[b] && b < a)) continue;
        detect_pair_conflicts(*node.paths[a], *node.paths[b], node.conflicts);
      }
    }
  }
  node.agent_conflicts.assign(k, 0);
  for (const Conflict& c : node.conflicts) {
    ++node.agent_conflicts[c.agent1];
    ++node.agent_conflicts[c.agent2];
  }
  node.conflict_total = static_cast<int>(node.conflicts.size());
}

std::unique_ptr<CTNode> Solver::init_root() {
  const int k = instance_.num_agents();
  auto root = std::make_unique<CTNode>();
  root->paths.resize(k);
  root->costs.assign(k, 0);
  root->lower_bounds.assign(k, 0);
  root->id = next_id_++;

  std::vector<const Path*> planned;
  for (AgentId i = 0; i < k; ++i) {
    const ConstraintTable table(instance_.map(), i, {});
    const ConflictAvoidanceTable avoidance(instance_.map(), planned, i);
    LowLevelRequest req;
    req.agent = i;
    req.start = starts_[i];
    req.target = targets_[i];
    req.heuristic = &heuristics_[i];
    req.constraints = &table;
    req.avoidance = &avoidance;
    req.w = config_.w;
    auto result = run_low_level(req);
    if (!result) return nullptr;
    root->paths[i] = std::make_shared<const Path>(std::move(result->path));
    root->costs[i] = result->cost;
    root->lower_bounds[i] = result->lb;
    planned.push_back(root->paths[i].get());
  }
  root->recompute_totals();
  refresh_conflicts(*root, nullptr);
  set_estimates(*root);
  return root;
}

std::optional<Solver::ChildBuild> Solver::generate_child(const CTNode& parent, const Constraint& constraint,
                                                         double lb, const CTNode& lb_node) {
  ChildBuild build;
  build.node = std::make_unique<CTNode>();
  CTNode& child = *build.node;
  child.constraints = parent.constraints;
  child.constraints.push_back(constraint);
  child.paths = parent.paths;
  child.costs = parent.costs;
  child.lower_bounds = parent.lower_bounds;
  child.parent = &parent;
  child.depth = parent.depth + 1;

  const int k = parent.num_agents();
  for (AgentId m = 0; m < k; ++m)
    if (violates(*parent.paths[m], constraint)) child.replanned.push_back(m);

  for (AgentId m : child.replanned) {
    const auto binding = constraints_for(m, child.constraints);
    const ConstraintTable table(instance_.map(), m, binding);
    if (table.infeasible()) return std::nullopt;

    FlexInputs inputs;
    inputs.w = config_.w;
    inputs.agent = m;
    inputs.costs = child.costs;
    inputs.lower_bounds = child.lower_bounds;
    inputs.lb_parent = parent.lower_bounds[m];
    inputs.agent_conflicts = parent.agent_conflicts[m];
    inputs.total_conflicts = parent.conflict_total;
    if (config_.flex == FlexMode::dfd || config_.flex == FlexMode::mfd)
      inputs.delay_sum = estimate_delays(binding, m, *parent.paths[m]).sum;
    const FrontierView frontier{lb, lb_node.lower_bounds};
    const FlexComputation flex = compute_flex(config_.flex, inputs, frontier);

    std::vector<const Path*> others = child.path_ptrs();
    const ConflictAvoidanceTable avoidance(instance_.map(), others, m);
    LowLevelRequest req;
    req.agent = m;
    req.start = starts_[m];
    req.target = targets_[m];
    req.heuristic = &heuristics_[m];
    req.constraints = &table;
    req.avoidance = &avoidance;
    req.w = config_.w;
    req.delta = flex.delta;
    req.lb_parent = parent.lower_bounds[m];
    build.parent_tau.push_back(threshold(config_.w, req.lb_parent, req.lb_parent, flex.delta));

    auto result = run_low_level(req);
    if (!result) return std::nullopt;
    child.costs[m] = result->cost;
    child.lower_bounds[m] = std::max(result->lb, parent.lower_bounds[m]);
    child.paths[m] = std::make_shared<const Path>(std::move(result->path));

    FlexUsage usage;
    usage.delta_max = flex.delta_max;
    usage.delta = flex.delta;
    usage.usage = std::max(0.0, child.costs[m] - config_.w * child.lower_bounds[m]);
    usage.branch = flex.branch;
    recorder_.replan(usage);
  }
  child.recompute_totals();
  refresh_conflicts(child, &parent);
  return build;
}

bool Solver::try_bypass(CTNode& parent, const ChildBuild& build) {
  const CTNode& child = *build.node;
  if (child.replanned.empty() || child.conflict_total >= parent.conflict_total) return false;
  for (std::size_t r = 0; r < child.replanned.size(); ++r) {
    const AgentId m = child.replanned[r];
    if (child.costs[m] > build.parent_tau[r] + 1e-9) return false;
  }
  int soc = parent.soc;
  for (AgentId m : child.replanned) soc += child.costs[m] - parent.costs[m];
  if (!bounded(soc, config_.w, parent.solb)) return false;

  for (AgentId m : child.replanned) {
    parent.paths[m] = child.paths[m];
    parent.costs[m] = child.costs[m];
  }
  parent.conflicts = child.conflicts;
  parent.agent_conflicts = child.agent_conflicts;
  parent.conflict_total = child.conflict_total;
  parent.recompute_totals();
  return true;
}

Solver::Expansion Solver::expand(CTNode& node) {
  Expansion out;
  const ClassifyOptions options{config_.prioritize, config_.symmetry};
  out.conflict = choose_conflict(problem_, node, options);
  const auto [first, second] = split_conflict(out.conflict);

  // The expanded node still counts toward LB until its children are pushed.
  double lb = node.solb;
  const CTNode* lb_node = &node;
  if (const CTNode* top = frontier_.min_lb_node(); top != nullptr && top->solb < node.solb) {
    lb = top->solb;
    lb_node = top;
  }

  std::vector<ChildBuild> builds;
  for (const Constraint& c : {first, second}) {
    auto build = generate_child(node, c, lb, *lb_node);
    if (build) builds.push_back(std::move(*build));
  }

  if (config_.bypass) {
    for (const ChildBuild& b : builds) {
      if (try_bypass(node, b)) {
        out.bypassed = true;
        return out;
      }
    }
  }

  for (const ChildBuild& b : builds) {
    cost_error_sum_ += std::max(0, b.node->soc - node.soc);
    ++cost_error_count_;
  }
  for (ChildBuild& b : builds) {
    b.node->id = next_id_++;
    set_estimates(*b.node);
    recorder_.generated(bounded(b.node->soc, config_.w, lb));
    if (observer_) observer_->on_generate(*b.node, &node, lb);
    out.children.push_back(std::move(b.node));
  }
  return out;
}

SolveResult Solver::solve() {
  started_ = std::chrono::steady_clock::now();
  SolveResult result;
  auto finish = [&](Outcome outcome, int soc = -1, int depth = 0) {
    result.outcome = outcome;
    result.metrics = recorder_.finish(outcome, soc, depth, elapsed());
    return result;
  };

  auto root = init_root();
  if (!root) return finish(Outcome::infeasible);
  recorder_.root(root->solb);
  if (observer_) observer_->on_generate(*root, nullptr, root->solb);
  frontier_.push(root.get());
  nodes_.push_back(std::move(root));

  while (true) {
    if (frontier_.empty()) return finish(Outcome::infeasible);
    const int lb = frontier_.lower_bound();
    recorder_.lower_bound(lb);
    if (elapsed() >= config_.time_limit_s) return finish(Outcome::timeout);
    CTNode* node = frontier_.select();
    if (observer_) observer_->on_select(*node, lb);

    if (node->conflict_total == 0) {
      Solution solution;
      for (const auto& p : node->paths) solution.paths.push_back(*p);
      result.solution = std::move(solution);
      return finish(Outcome::solved, node->soc, node->depth);
    }

    recorder_.expanded(node->depth);
    Expansion expansion = expand(*node);
    if (expansion.bypassed) {
      set_estimates(*node);
      frontier_.push(node);
      continue;
    }
    for (auto& child : expansion.children) {
      frontier_.push(child.get());
      nodes_.push_back(std::move(child));
    }
  }
}

SolveResult solve(const Instance& instance, const SolverConfig& config, SolverObserver* observer) {
  Solver solver(instance, config, observer);
  return solver.solve();
}

}  // namespace flexmapf

// flexmapf: bounded-suboptimal multi-agent path finding from the command line.
//
//   flexmapf solve    --map m.map --scen s.scen --agents 20 --suboptimality 1.05 --flex mfd
//   flexmapf bench    spec.json
//   flexmapf validate --map m.map --scen s.scen --agents 20 --solution out.txt
//   flexmapf oracle   --map m.map --scen s.scen --agents 3
//   flexmapf generate --height 32 --width 32 --density 0.2 --agents 50 --map-out m.map --scen-out s.scen

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "flexmapf/bench.hpp"
#include "flexmapf/generator.hpp"
#include "flexmapf/oracle.hpp"
#include "flexmapf/solver.hpp"
#include "flexmapf/validator.hpp"

using namespace flexmapf;

namespace {

constexpr int kExitSolved = 0;
constexpr int kExitTimeout = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitUsage = 64;

struct InstanceArgs {
  std::string map;
  std::string scen;
  int agents = 0;

  void add_to(CLI::App* app) {
    app->add_option("--map", map, "MovingAI .map file")->required()->check(CLI::ExistingFile);
    app->add_option("--scen", scen, "MovingAI .scen file")->required()->check(CLI::ExistingFile);
    app->add_option("--agents", agents, "use the first N scenario entries")->required()->check(CLI::PositiveNumber);
  }

  Instance load() const {
    GridMap grid = parse_map_file(map);
    auto specs = parse_scenario_file(scen, grid, agents);
    return Instance(std::move(grid), std::move(specs));
  }
};

struct SolveArgs {
  InstanceArgs instance;
  double w = 1.2;
  std::string flex = "none";
  std::string lowlevel = "focal";
  bool bypass = true;
  bool prioritize = true;
  bool symmetry = true;
  double time_limit = 60.0;
  std::uint64_t seed = 0;
  std::string out;
  std::string metrics;
};

int run_solve(const SolveArgs& args) {
  const Instance instance = args.instance.load();
  SolverConfig config;
  config.w = args.w;
  config.flex = *parse_flex_mode(args.flex);
  config.low_level = *parse_low_level(args.lowlevel);
  config.bypass = args.bypass;
  config.prioritize = args.prioritize;
  config.symmetry = args.symmetry;
  config.time_limit_s = args.time_limit;
  config.seed = args.seed;

  const SolveResult result = solve(instance, config);
  const RunMetrics& m = result.metrics;
  std::cout << to_string(result.outcome) << " soc=" << m.soc << " lb=" << m.lb << " expanded=" << m.expanded
            << " generated=" << m.generated << " runtime=" << m.runtime_s << "s\n";

  if (result.solution && !args.out.empty()) {
    std::ofstream out(args.out);
    if (!out) throw std::runtime_error("cannot write " + args.out);
    write_solution(out, instance.map(), *result.solution);
  }
  std::string sidecar = args.metrics;
  if (sidecar.empty() && !args.out.empty()) sidecar = args.out + ".metrics.json";
  if (!sidecar.empty()) {
    std::ofstream out(sidecar);
    if (!out) throw std::runtime_error("cannot write " + sidecar);
    out << metrics_json(config, result).dump(2) << '\n';
  }
  switch (result.outcome) {
    case Outcome::solved: return kExitSolved;
    case Outcome::timeout: return kExitTimeout;
    case Outcome::infeasible: return kExitInfeasible;
  }
  return kExitInfeasible;
}

int run_bench(const std::string& spec_path, int parallel) {
  BenchSpec spec = load_bench_spec(spec_path);
  if (parallel > 0) spec.parallelism = parallel;
  const auto rows = run_benchmark(spec);
  if (spec.csv.empty()) write_csv(std::cout, rows);
  write_summary(std::cout, success_rates(rows));
  return 0;
}

int run_validate(const InstanceArgs& args, const std::string& solution_path) {
  const Instance instance = args.load();
  std::ifstream in(solution_path);
  if (!in) throw std::invalid_argument("cannot open " + solution_path);
  const ValidationReport report = validate(read_solution(in, instance.map()), instance);
  for (const Violation& v : report.violations)
    std::cout << to_string(v.kind) << " t=" << v.t << ": " << v.message << '\n';
  std::cout << (report.ok() ? "valid" : "invalid") << " (" << report.violations.size() << " violations)\n";
  return report.ok() ? 0 : 1;
}

int run_oracle(const InstanceArgs& args) {
  const OracleResult result = optimal_soc(args.load());
  if (!result.soc) {
    std::cout << "unsolvable\n";
    return kExitInfeasible;
  }
  std::cout << "optimal soc " << *result.soc << '\n';
  return 0;
}

struct GenerateArgs {
  int height = 32;
  int width = 32;
  double density = 0.2;
  int agents = 10;
  std::uint64_t seed = 0;
  std::string map_out;
  std::string scen_out;
};

int run_generate(const GenerateArgs& args) {
  Rng rng(args.seed);
  GridMap map = random_map(args.height, args.width, args.density, rng);
  const auto agents = random_agents(map, args.agents, rng);
  std::ofstream map_out(args.map_out);
  std::ofstream scen_out(args.scen_out);
  if (!map_out || !scen_out) throw std::runtime_error("cannot write generated files");
  map_out << serialize_map(map);
  const std::string map_name = std::filesystem::path(args.map_out).filename().string();
  scen_out << serialize_scenario(map, agents, map_name);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounded-suboptimal multi-agent path finding"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "solve one instance");
  solve_args.instance.add_to(solve_cmd);
  solve_cmd->add_option("-w,--suboptimality", solve_args.w, "suboptimality factor w >= 1")
      ->check(CLI::Range(1.0, 1e9));
  solve_cmd->add_option("--flex", solve_args.flex, "flex distribution")
      ->check(CLI::IsMember({"none", "gfd", "cfd", "dfd", "mfd"}));
  solve_cmd->add_option("--lowlevel", solve_args.lowlevel, "low-level search")->check(CLI::IsMember({"focal", "fastar"}));
  solve_cmd->add_flag("--bypass,!--no-bypass", solve_args.bypass, "adopt conflict-reducing child paths");
  solve_cmd->add_flag("--prioritize,!--no-prioritize", solve_args.prioritize, "prefer cardinal conflicts");
  solve_cmd->add_flag("--symmetry,!--no-symmetry", solve_args.symmetry, "target and corridor reasoning");
  solve_cmd->add_option("--time-limit", solve_args.time_limit, "seconds")->check(CLI::NonNegativeNumber);
  solve_cmd->add_option("--seed", solve_args.seed);
  solve_cmd->add_option("--out", solve_args.out, "solution file; metrics go to <out>.metrics.json");
  solve_cmd->add_option("--metrics", solve_args.metrics, "metrics JSON path");

  std::string bench_spec;
  int bench_parallel = 0;
  auto* bench_cmd = app.add_subcommand("bench", "run a benchmark spec");
  bench_cmd->add_option("spec", bench_spec, "JSON bench spec")->required()->check(CLI::ExistingFile);
  bench_cmd->add_option("--parallel", bench_parallel, "worker threads, overrides the spec");

  InstanceArgs validate_args;
  std::string solution_path;
  auto* validate_cmd = app.add_subcommand("validate", "check a solution file");
  validate_args.add_to(validate_cmd);
  validate_cmd->add_option("--solution", solution_path)->required()->check(CLI::ExistingFile);

  InstanceArgs oracle_args;
  auto* oracle_cmd = app.add_subcommand("oracle", "exact optimum for tiny instances");
  oracle_args.add_to(oracle_cmd);

  GenerateArgs gen;
  auto* gen_cmd = app.add_subcommand("generate", "random map and scenario");
  gen_cmd->add_option("--height", gen.height)->check(CLI::PositiveNumber);
  gen_cmd->add_option("--width", gen.width)->check(CLI::PositiveNumber);
  gen_cmd->add_option("--density", gen.density)->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("--agents", gen.agents)->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_option("--map-out", gen.map_out)->required();
  gen_cmd->add_option("--scen-out", gen.scen_out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*solve_cmd) return run_solve(solve_args);
    if (*bench_cmd) return run_bench(bench_spec, bench_parallel);
    if (*validate_cmd) return run_validate(validate_args, solution_path);
    if (*oracle_cmd) return run_oracle(oracle_args);
    if (*gen_cmd) return run_generate(gen);
  } catch (const ParseError& e) {
    std::cerr << "error: line " << e.line() << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const InstanceError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const OracleLimitError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

#include "flexmapf/bench.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace flexmapf {

namespace fs = std::filesystem;
using nlohmann::json;

void BenchSpec::check() const {
  if (map.empty()) throw std::invalid_argument("bench spec: 'map' is required");
  if (scens.empty()) throw std::invalid_argument("bench spec: 'scens' must not be empty");
  if (agents.empty()) throw std::invalid_argument("bench spec: 'agents' must not be empty");
  if (ws.empty()) throw std::invalid_argument("bench spec: 'w' must not be empty");
  if (modes.empty()) throw std::invalid_argument("bench spec: 'modes' must not be empty");
  for (int k : agents)
    if (k < 1) throw std::invalid_argument("bench spec: agent counts must be positive");
  for (double w : ws)
    if (!(w >= 1.0)) throw std::invalid_argument("bench spec: w values must be >= 1");
  if (time_limit_s < 0) throw std::invalid_argument("bench spec: 'time_limit' must be non-negative");
  if (repetitions < 1) throw std::invalid_argument("bench spec: 'repetitions' must be >= 1");
  if (parallelism < 1) throw std::invalid_argument("bench spec: 'parallelism' must be >= 1");
}

namespace {

fs::path resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

template <typename T>
std::vector<T> scalar_or_list(const json& j, const char* key) {
  const json& v = j.at(key);
  if (v.is_array()) return v.get<std::vector<T>>();
  return {v.get<T>()};
}

}  // namespace

BenchSpec bench_spec_from_json(const json& j, const fs::path& base) {
  BenchSpec spec;
  try {
    spec.map = resolve(base, j.at("map").get<std::string>());
    for (const auto& s : scalar_or_list<std::string>(j, "scens")) spec.scens.push_back(resolve(base, s));
    spec.agents = scalar_or_list<int>(j, "agents");
    spec.ws = scalar_or_list<double>(j, "w");
    for (const auto& m : scalar_or_list<std::string>(j, "modes")) {
      auto mode = parse_flex_mode(m);
      if (!mode) throw std::invalid_argument("bench spec: unknown flex mode '" + m + "'");
      spec.modes.push_back(*mode);
    }
    if (j.contains("lowlevel")) {
      const auto text = j.at("lowlevel").get<std::string>();
      auto ll = parse_low_level(text);
      if (!ll) throw std::invalid_argument("bench spec: unknown low-level variant '" + text + "'");
      spec.low_level = *ll;
    }
    spec.bypass = j.value("bypass", spec.bypass);
    spec.prioritize = j.value("prioritize", spec.prioritize);
    spec.symmetry = j.value("symmetry", spec.symmetry);
    spec.time_limit_s = j.value("time_limit", spec.time_limit_s);
    spec.repetitions = j.value("repetitions", spec.repetitions);
    spec.seed = j.value("seed", spec.seed);
    spec.parallelism = j.value("parallelism", spec.parallelism);
    if (j.contains("csv")) spec.csv = resolve(base, j.at("csv").get<std::string>());
    if (j.contains("summary")) spec.summary = resolve(base, j.at("summary").get<std::string>());
    if (j.contains("plot")) spec.plot = resolve(base, j.at("plot").get<std::string>());
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bench spec: ") + e.what());
  }
  spec.check();
  return spec;
}

BenchSpec load_bench_spec(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw std::invalid_argument("cannot open bench spec " + file.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::invalid_argument("bench spec " + file.string() + ": " + e.what());
  }
  return bench_spec_from_json(j, file.parent_path());
}

ResultRow make_row(const std::string& instance, int repetition, int k, const SolverConfig& config,
                   const SolveResult& result) {
  const RunMetrics& m = result.metrics;
  ResultRow row;
  row.instance = instance;
  row.repetition = repetition;
  row.k = k;
  row.w = config.w;
  row.mode = config.flex;
  row.low_level = config.low_level;
  row.outcome = to_string(result.outcome);
  row.soc = result.outcome == Outcome::solved ? m.soc : -1;
  row.lb0 = m.lb0;
  row.lb = m.lb;
  row.suboptimality = m.global_suboptimality().value_or(-1.0);
  row.runtime_s = m.runtime_s;
  row.generated = m.generated;
  row.expanded = m.expanded;
  row.depth = m.depth;
  row.gb_ratio = m.gb_ratio();
  row.depth_expansion_ratio = m.depth_expansion_ratio();
  row.lbi = m.lbi();
  row.flex_replans = static_cast<int>(
      std::count_if(m.flex.begin(), m.flex.end(), [](const FlexUsage& u) { return u.delta_max >= 0; }));
  row.flex_histogram = m.histogram();
  return row;
}

json metrics_json(const SolverConfig& config, const SolveResult& result) {
  const RunMetrics& m = result.metrics;
  json j;
  j["schema"] = "flexmapf-metrics v1";
  j["config"] = {{"w", config.w},
                 {"flex", to_string(config.flex)},
                 {"lowlevel", to_string(config.low_level)},
                 {"bypass", config.bypass},
                 {"prioritize", config.prioritize},
                 {"symmetry", config.symmetry},
                 {"time_limit", config.time_limit_s},
                 {"seed", config.seed}};
  j["outcome"] = to_string(result.outcome);
  j["soc"] = result.outcome == Outcome::solved ? json(m.soc) : json(nullptr);
  j["lb0"] = m.lb0;
  j["lb"] = m.lb;
  const auto sub = m.global_suboptimality();
  j["suboptimality"] = sub ? json(*sub) : json(nullptr);
  j["generated"] = m.generated;
  j["generated_gb"] = m.generated_gb;
  j["expanded"] = m.expanded;
  j["depth"] = m.depth;
  j["gb_ratio"] = m.gb_ratio();
  j["depth_expansion_ratio"] = m.depth_expansion_ratio();
  j["lbi"] = m.lbi();
  j["runtime_s"] = m.runtime_s;
  j["low_level_expanded"] = m.low_level_expanded;
  j["flex_bucket_edges"] = kFlexBucketEdges;
  j["flex_histogram"] = m.histogram();
  j["flex_replans"] = m.flex.size();
  return j;
}

std::vector<SuccessRate> success_rates(const std::vector<ResultRow>& rows) {
  std::vector<SuccessRate> out;
  for (const ResultRow& r : rows) {
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const SuccessRate& s) { return s.k == r.k && s.w == r.w && s.mode == r.mode; });
    if (it == out.end()) {
      out.push_back({r.k, r.w, r.mode, 0, 0});
      it = out.end() - 1;
    }
    ++it->runs;
    if (r.solved()) ++it->solved;
  }
  return out;
}

namespace {

std::string fmt(double v, int precision = 6) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(precision) << v;
  return s.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << kCsvVersionLine << '\n';
  out << "instance,repetition,k,w,mode,lowlevel,outcome,soc,lb0,lb,suboptimality,runtime_s,generated,expanded,"
         "depth,gb_ratio,depth_expansion_ratio,lbi,flex_replans";
  for (std::size_t b = 0; b < kFlexBucketEdges.size(); ++b) out << ",flex_pct_" << b;
  out << ",error\n";
  for (const ResultRow& r : rows) {
    out << csv_field(r.instance) << ',' << r.repetition << ',' << r.k << ',' << fmt(r.w, 4) << ','
        << to_string(r.mode) << ',' << to_string(r.low_level) << ',' << r.outcome << ',' << r.soc << ',' << r.lb0
        << ',' << r.lb << ',' << fmt(r.suboptimality) << ',' << fmt(r.runtime_s) << ',' << r.generated << ','
        << r.expanded << ',' << r.depth << ',' << fmt(r.gb_ratio) << ',' << fmt(r.depth_expansion_ratio) << ','
        << fmt(r.lbi) << ',' << r.flex_replans;
    for (double h : r.flex_histogram) out << ',' << fmt(h, 4);
    out << ',' << csv_field(r.error) << '\n';
  }
}

void write_summary(std::ostream& out, const std::vector<SuccessRate>& rates) {
  out << kCsvVersionLine << '\n' << "k,w,mode,runs,solved,success_rate\n";
  for (const SuccessRate& s : rates)
    out << s.k << ',' << fmt(s.w, 4) << ',' << to_string(s.mode) << ',' << s.runs << ',' << s.solved << ','
        << fmt(s.rate()) << '\n';
}

namespace {

using ConfigKey = std::pair<double, FlexMode>;

std::vector<ConfigKey> configs_in_order(const std::vector<ResultRow>& rows) {
  std::vector<ConfigKey> keys;
  for (const ResultRow& r : rows)
    if (std::find(keys.begin(), keys.end(), ConfigKey{r.w, r.mode}) == keys.end()) keys.push_back({r.w, r.mode});
  return keys;
}

std::vector<int> ks_in_order(const std::vector<ResultRow>& rows) {
  std::vector<int> ks;
  for (const ResultRow& r : rows)
    if (std::find(ks.begin(), ks.end(), r.k) == ks.end()) ks.push_back(r.k);
  std::sort(ks.begin(), ks.end());
  return ks;
}

double quantile(std::vector<double> sorted, double q) {
  if (sorted.empty()) return 0.0;
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

json emit_plot_data(const std::vector<ResultRow>& rows) {
  json out;
  out["schema"] = "flexmapf-plot v1";
  out["flex_bucket_edges"] = kFlexBucketEdges;
  out["success_rate"] = json::array();
  out["gb_ratio"] = json::array();
  out["depth_expansion"] = json::array();
  out["lbi"] = json::array();
  out["flex_histogram"] = json::array();
  out["suboptimality_pairs"] = json::array();

  const auto configs = configs_in_order(rows);
  const auto ks = ks_in_order(rows);
  for (const auto& [w, mode] : configs) {
    json rate{{"w", w}, {"mode", to_string(mode)}, {"k", json::array()}, {"value", json::array()}};
    json gb = rate;
    std::array<double, kFlexBucketEdges.size()> weighted{};
    double replans = 0;
    for (int k : ks) {
      std::vector<const ResultRow*> group;
      for (const ResultRow& r : rows)
        if (r.w == w && r.mode == mode && r.k == k) group.push_back(&r);
      if (group.empty()) continue;
      double solved = 0, gb_sum = 0, de_sum = 0;
      int de_runs = 0;
      std::vector<double> lbis;
      for (const ResultRow* r : group) {
        solved += r->solved() ? 1 : 0;
        gb_sum += r->gb_ratio;
        if (r->expanded > 0 || r->solved()) {
          de_sum += r->depth_expansion_ratio;
          ++de_runs;
        }
        lbis.push_back(r->lbi);
        for (std::size_t b = 0; b < weighted.size(); ++b) weighted[b] += r->flex_histogram[b] * r->flex_replans;
        replans += r->flex_replans;
      }
      const double n = static_cast<double>(group.size());
      rate["k"].push_back(k);
      rate["value"].push_back(solved / n);
      gb["k"].push_back(k);
      gb["value"].push_back(gb_sum / n);
      out["depth_expansion"].push_back({{"w", w}, {"mode", to_string(mode)}, {"k", k}, {"runs", de_runs},
                                        {"mean_ratio", de_runs > 0 ? de_sum / de_runs : 0.0}});
      std::sort(lbis.begin(), lbis.end());
      out["lbi"].push_back({{"w", w}, {"mode", to_string(mode)}, {"k", k}, {"min", lbis.front()},
                            {"q1", quantile(lbis, 0.25)}, {"median", quantile(lbis, 0.5)},
                            {"q3", quantile(lbis, 0.75)}, {"max", lbis.back()}, {"values", lbis}});
    }
    out["success_rate"].push_back(rate);
    out["gb_ratio"].push_back(gb);
    json percent = json::array();
    for (double v : weighted) percent.push_back(replans > 0 ? v / replans : 0.0);
    out["flex_histogram"].push_back({{"w", w}, {"mode", to_string(mode)}, {"replans", replans}, {"percent", percent}});
  }

  // Scatter of SOC / LB for instances solved under both modes at the same w.
  using RunKey = std::tuple<std::string, int, int>;
  for (std::size_t a = 0; a < configs.size(); ++a) {
    for (std::size_t b = a + 1; b < configs.size(); ++b) {
      if (configs[a].first != configs[b].first) continue;
      std::map<RunKey, double> first;
      for (const ResultRow& r : rows)
        if (r.w == configs[a].first && r.mode == configs[a].second && r.solved())
          first[{r.instance, r.repetition, r.k}] = r.suboptimality;
      json points = json::array();
      for (const ResultRow& r : rows) {
        if (r.w != configs[b].first || r.mode != configs[b].second || !r.solved()) continue;
        auto it = first.find({r.instance, r.repetition, r.k});
        if (it != first.end()) points.push_back({it->second, r.suboptimality});
      }
      out["suboptimality_pairs"].push_back({{"w", configs[a].first},
                                            {"mode_a", to_string(configs[a].second)},
                                            {"mode_b", to_string(configs[b].second)},
                                            {"points", points}});
    }
  }
  return out;
}

std::vector<ResultRow> run_benchmark(const BenchSpec& spec) {
  spec.check();
  const GridMap map = parse_map_file(spec.map.string());

  struct Job {
    std::size_t instance;
    int k;
    int repetition;
    SolverConfig config;
    std::string name;
  };
  struct Loaded {
    std::string name;
    std::vector<AgentSpec> all;
  };
  std::vector<Loaded> loaded;
  for (const fs::path& scen : spec.scens) {
    Loaded l;
    l.name = scen.filename().string();
    std::ifstream in(scen);
    if (!in) throw std::invalid_argument("cannot open scenario " + scen.string());
    try {
      l.all = parse_scenario(in, map);
    } catch (const ParseError& e) {
      throw std::invalid_argument(scen.string() + ":" + std::to_string(e.line()) + ": " + e.what());
    }
    loaded.push_back(std::move(l));
  }

  std::vector<Job> jobs;
  for (std::size_t s = 0; s < loaded.size(); ++s)
    for (int k : spec.agents)
      for (double w : spec.ws)
        for (FlexMode mode : spec.modes)
          for (int rep = 0; rep < spec.repetitions; ++rep) {
            SolverConfig config;
            config.w = w;
            config.flex = mode;
            config.low_level = spec.low_level;
            config.bypass = spec.bypass;
            config.prioritize = spec.prioritize;
            config.symmetry = spec.symmetry;
            config.time_limit_s = spec.time_limit_s;
            config.seed = spec.seed + static_cast<std::uint64_t>(rep);
            jobs.push_back({s, k, rep, config, loaded[s].name});
          }

  std::vector<ResultRow> rows(jobs.size());
  auto run_job = [&](std::size_t j) {
    const Job& job = jobs[j];
    const Loaded& l = loaded[job.instance];
    if (static_cast<int>(l.all.size()) < job.k) {
      ResultRow row;
      row.instance = job.name;
      row.repetition = job.repetition;
      row.k = job.k;
      row.w = job.config.w;
      row.mode = job.config.flex;
      row.low_level = job.config.low_level;
      row.outcome = "error";
      row.error = "scenario has only " + std::to_string(l.all.size()) + " agents";
      rows[j] = row;
      return;
    }
    try {
      const Instance instance(map, std::vector<AgentSpec>(l.all.begin(), l.all.begin() + job.k));
      const SolveResult result = solve(instance, job.config);
      rows[j] = make_row(job.name, job.repetition, job.k, job.config, result);
    } catch (const std::exception& e) {
      ResultRow row;
      row.instance = job.name;
      row.repetition = job.repetition;
      row.k = job.k;
      row.w = job.config.w;
      row.mode = job.config.flex;
      row.low_level = job.config.low_level;
      row.outcome = "error";
      row.error = e.what();
      rows[j] = row;
    }
  };

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j = next++; j < jobs.size(); j = next++) run_job(j);
  };
  const int threads = std::min<int>(spec.parallelism, static_cast<int>(jobs.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  auto write_file = [](const fs::path& path, auto&& emit) {
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    emit(out);
  };
  write_file(spec.csv, [&](std::ostream& out) { write_csv(out, rows); });
  write_file(spec.summary, [&](std::ostream& out) { write_summary(out, success_rates(rows)); });
  write_file(spec.plot, [&](std::ostream& out) { out << emit_plot_data(rows).dump(2) << '\n'; });
  return rows;
}

}  // namespace flexmapf

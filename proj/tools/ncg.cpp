// ncg: generate instances, play the coloring game, analyze the exact chain,
// run scaling sweeps, reduce networks under preference scoring, and sample
// local/global optima. Every output file embeds the resolved configuration
// and master seed, so reruns are byte-identical.

#include <CLI11.hpp>
#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <string>
#include <vector>

#include "ncg/amc.hpp"
#include "ncg/borda.hpp"
#include "ncg/game.hpp"
#include "ncg/graph.hpp"
#include "ncg/io.hpp"
#include "ncg/local_search.hpp"
#include "ncg/samplers.hpp"
#include "ncg/sweep.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr uint64_t kTagGenGraph = 0x47;
constexpr uint64_t kTagGenPrefs = 0x50;
constexpr uint64_t kTagGenPlay = 0x4c;

// Flat key=value config support: file entries become --key=value tokens
// unless the flag already appears on the command line, so explicit flags
// always win.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::string path;
  for (size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size())
      path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0)
      path = args[i].substr(9);
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw ncg::ValidationError("cannot open config file: " + path);
  auto given = [&](const std::string& key) {
    const std::string opt = "--" + key;
    for (const auto& a : args)
      if (a == opt || a.rfind(opt + "=", 0) == 0) return true;
    return false;
  };
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ncg::ValidationError(path + " line " + std::to_string(lineno) +
                                 ": expected key=value");
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    if (given(key)) continue;
    args.push_back(value.empty() ? "--" + key : "--" + key + "=" + value);
  }
  return args;
}

std::ofstream must_open(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw ncg::ValidationError("cannot write file: " + path.string());
  return out;
}

fs::path prepare_out_dir(const std::string& out) {
  fs::path dir(out);
  fs::create_directories(dir);
  return dir;
}

json meta_json(const ncg::RunMeta& meta) {
  return json{{"version", ncg::k_tool_version},
              {"command", meta.command},
              {"seed", meta.seed},
              {"config", meta.config}};
}

void write_meta_comments(std::ostream& out, const ncg::RunMeta& meta) {
  for (const auto& line : meta.lines()) out << "# " << line << "\n";
}

void write_json(const fs::path& path, const json& j) {
  auto out = must_open(path);
  out << j.dump(2) << "\n";
}

bool palette_fits(int q, int delta) {
  return delta == 0 ? q >= 1 : q >= delta + 2;
}

// --- gen ---------------------------------------------------------------

struct GenOpts {
  int n = 20;
  double p = 0.3;
  int q = 13;
  uint64_t seed = 1;
  int retry = 0;
  bool allow_small_q = false;
  std::string out = "out";
};

void run_gen(const GenOpts& o) {
  ncg::Graph graph;
  int attempt = 0;
  bool found = false;
  for (; attempt <= o.retry; ++attempt) {
    graph = ncg::generate_er(o.n, o.p, ncg::stream_key(o.seed, kTagGenGraph,
                                                       attempt));
    if (o.allow_small_q || palette_fits(o.q, ncg::max_degree(graph))) {
      found = true;
      break;
    }
  }
  if (!found)
    throw ncg::ValidationError(
        "no generated graph satisfied q >= max degree + 2 within " +
        std::to_string(o.retry + 1) +
        " attempts; raise --q or --retry (or pass --allow-small-q)");

  ncg::PreferenceProfile prefs =
      ncg::random_profile(o.n, o.q, ncg::stream_key(o.seed, kTagGenPrefs));
  ncg::ConvergenceResult played = ncg::play_to_convergence(
      graph, o.q, ncg::stream_key(o.seed, kTagGenPlay), 1'000'000, false,
      o.allow_small_q);
  if (!played.converged)
    throw ncg::ValidationError(
        "initial play did not converge within 1e6 rounds; the palette is "
        "too small for this graph");

  ncg::RunMeta meta;
  meta.command = "gen";
  meta.seed = o.seed;
  meta.config = {{"n", std::to_string(o.n)},
                 {"p", ncg::format_double(o.p)},
                 {"q", std::to_string(o.q)},
                 {"retry", std::to_string(o.retry)},
                 {"attempt", std::to_string(attempt)},
                 {"allow_small_q", o.allow_small_q ? "1" : "0"}};

  fs::path dir = prepare_out_dir(o.out);
  ncg::save_graph(graph, (dir / "graph.txt").string(), meta.lines());
  ncg::save_profile(prefs, (dir / "prefs.csv").string(), meta.lines());
  ncg::save_coloring(played.final_state.assignment, o.q,
                     (dir / "coloring.txt").string(), meta.lines());
  std::cout << "gen: n=" << o.n << " edges=" << graph.edge_count()
            << " max_degree=" << ncg::max_degree(graph)
            << " attempt=" << attempt << " rounds=" << played.rounds << "\n";
}

// --- play --------------------------------------------------------------

struct PlayOpts {
  std::string graph;
  std::string coloring;  // optional start
  int q = 0;             // 0: take q from the coloring file
  uint64_t seed = 1;
  int max_rounds = 1'000'000;
  bool allow_small_q = false;
  std::string out = "out";
};

void run_play(const PlayOpts& o) {
  ncg::Graph graph = ncg::load_graph(o.graph);
  int q = o.q;
  ncg::ConvergenceResult result;
  if (!o.coloring.empty()) {
    auto [start, file_q] = ncg::load_coloring(o.coloring);
    if (q == 0) q = file_q;
    result = ncg::play_from(graph, start, q, o.seed, o.max_rounds, true,
                            o.allow_small_q);
  } else {
    if (q == 0)
      throw ncg::ValidationError("--q is required without --coloring");
    result = ncg::play_to_convergence(graph, q, o.seed, o.max_rounds, true,
                                      o.allow_small_q);
  }

  ncg::RunMeta meta;
  meta.command = "play";
  meta.seed = o.seed;
  meta.config = {{"graph", o.graph},
                 {"coloring", o.coloring},
                 {"q", std::to_string(q)},
                 {"max_rounds", std::to_string(o.max_rounds)},
                 {"allow_small_q", o.allow_small_q ? "1" : "0"}};

  fs::path dir = prepare_out_dir(o.out);
  {
    auto csv = must_open(dir / "trajectory.csv");
    write_meta_comments(csv, meta);
    csv << "round,satisfied_count,conflict_edge_count\n";
    for (const auto& p : result.trajectory)
      csv << p.round << "," << p.satisfied << "," << p.conflict_edges << "\n";
  }
  ncg::save_coloring(result.final_state.assignment, q,
                     (dir / "final_coloring.txt").string(), meta.lines());
  json j{{"meta", meta_json(meta)},
         {"converged", result.converged},
         {"rounds", result.rounds},
         {"n", graph.vertex_count()},
         {"q", q}};
  write_json(dir / "play.json", j);
  std::cout << "play: converged=" << (result.converged ? "yes" : "no")
            << " rounds=" << result.rounds << "\n";
}

// --- exact -------------------------------------------------------------

struct ExactOpts {
  std::string graph;
  int q = 3;
  int64_t cap = 200'000;
  int64_t t_max = 200;
  bool dump_chain = false;
  bool allow_small_q = false;
  uint64_t seed = 1;
  std::string out = "out";
};

void run_exact(const ExactOpts& o) {
  ncg::Graph graph = ncg::load_graph(o.graph);
  auto [space, chain] = ncg::build_chain(graph, o.q, o.cap, o.allow_small_q);
  Eigen::MatrixXd fundamental = ncg::fundamental_matrix(chain);
  Eigen::VectorXd steps = ncg::expected_absorption(fundamental);
  ncg::AbsorptionSummary summary =
      ncg::absorption_variance(fundamental, steps);
  ncg::LimitCheckReport limit = ncg::limit_distribution_check(chain, o.t_max);

  ncg::RunMeta meta;
  meta.command = "exact";
  meta.seed = o.seed;
  meta.config = {{"graph", o.graph},
                 {"q", std::to_string(o.q)},
                 {"cap", std::to_string(o.cap)},
                 {"t_max", std::to_string(o.t_max)}};

  fs::path dir = prepare_out_dir(o.out);
  json states = json::array();
  for (int64_t i = 0; i < chain.transient_count(); ++i) {
    states.push_back(
        {{"state", chain.transient_ids[i]},
         {"coloring", ncg::decode_state(chain.transient_ids[i], space.n,
                                        space.q)},
         {"expected_steps", steps(i)},
         {"second_moment", summary.second_moment(i)},
         {"variance", summary.variance(i)}});
  }
  json limit_j{{"decayed", limit.decayed}, {"t_max", limit.t_max}};
  if (!limit.curve.empty()) {
    limit_j["final_max_entry"] = limit.curve.back().max_entry;
    limit_j["final_min_absorbed_mass"] = limit.curve.back().min_absorbed_mass;
  }
  json j{{"meta", meta_json(meta)},
         {"n", space.n},
         {"q", space.q},
         {"num_states", space.size},
         {"num_transient", chain.transient_count()},
         {"num_absorbing", chain.absorbing_count()},
         {"limit_check", limit_j},
         {"states", states}};
  write_json(dir / "exact.json", j);

  if (o.dump_chain) {
    auto csv = must_open(dir / "chain.csv");
    write_meta_comments(csv, meta);
    csv << "from_state,to_state,probability\n";
    for (int64_t row = 0; row < chain.transient_count(); ++row) {
      for (int64_t col = 0; col < chain.transient_count(); ++col)
        if (chain.Q(row, col) > 0.0)
          csv << chain.transient_ids[row] << "," << chain.transient_ids[col]
              << "," << ncg::format_double(chain.Q(row, col)) << "\n";
      for (int64_t col = 0; col < chain.absorbing_count(); ++col)
        if (chain.R(row, col) > 0.0)
          csv << chain.transient_ids[row] << "," << chain.absorbing_ids[col]
              << "," << ncg::format_double(chain.R(row, col)) << "\n";
    }
    for (int64_t a : chain.absorbing_ids)
      csv << a << "," << a << ",1\n";
  }
  std::cout << "exact: states=" << space.size
            << " transient=" << chain.transient_count()
            << " decayed=" << (limit.decayed ? "yes" : "no") << "\n";
}

// --- sweep -------------------------------------------------------------

struct SweepOpts {
  std::vector<int> sizes = {8, 16, 32, 64, 128, 256};
  double p = -1.0;              // set: fixed-p family
  double expected_degree = 6.0;
  int q = 0;  // 0: max degree + 2 per instance
  int trials = 500;
  int trials_per_graph = 1;
  uint64_t seed = 1;
  double epsilon = 0.05;
  int max_rounds = 1'000'000;
  int threads = 0;
  std::string out = "out";
};

json size_stats_json(const ncg::SizeStats& s) {
  json j{{"n", s.n},         {"trials", s.trials},
         {"mean", s.mean},   {"variance", s.variance},
         {"se_mean", s.se_mean}, {"se_variance", s.se_variance}};
  if (s.n >= 3) {
    j["mean_ratio"] = s.mean_ratio;
    j["variance_ratio"] = s.variance_ratio;
  }
  return j;
}

void run_sweep_cmd(const SweepOpts& o) {
  ncg::SweepConfig cfg;
  cfg.sizes = o.sizes;
  if (o.p >= 0.0) {
    cfg.family = ncg::GraphFamily::fixed_p;
    cfg.family_value = o.p;
  } else {
    cfg.family = ncg::GraphFamily::expected_degree;
    cfg.family_value = o.expected_degree;
  }
  cfg.q_fixed = o.q;
  cfg.trials = o.trials;
  cfg.trials_per_graph = o.trials_per_graph;
  cfg.master_seed = o.seed;
  cfg.max_rounds = o.max_rounds;
  cfg.threads = o.threads;

  std::vector<ncg::TrialSample> samples = ncg::run_sweep(cfg);

  ncg::RunMeta meta;
  meta.command = "sweep";
  meta.seed = o.seed;
  std::string sizes_str;
  for (size_t i = 0; i < o.sizes.size(); ++i)
    sizes_str += (i ? "," : "") + std::to_string(o.sizes[i]);
  meta.config = {{"sizes", sizes_str},
                 {"family", cfg.family == ncg::GraphFamily::fixed_p
                                ? "fixed_p"
                                : "expected_degree"},
                 {"family_value", ncg::format_double(cfg.family_value)},
                 {"q", std::to_string(o.q)},
                 {"trials", std::to_string(o.trials)},
                 {"trials_per_graph", std::to_string(o.trials_per_graph)},
                 {"epsilon", ncg::format_double(o.epsilon)},
                 {"max_rounds", std::to_string(o.max_rounds)}};

  fs::path dir = prepare_out_dir(o.out);
  {
    auto csv = must_open(dir / "samples.csv");
    write_meta_comments(csv, meta);
    csv << "n,graph_id,trial_id,T,seed\n";
    for (const auto& s : samples)
      csv << s.n << "," << s.graph_id << "," << s.trial_id << "," << s.rounds
          << "," << s.seed << "\n";
  }

  json report{{"meta", meta_json(meta)}};
  if (samples.size() >= 2) {
    try {
      ncg::ScalingReport scaling = ncg::scaling_report(samples);
      json per_size = json::array();
      for (const auto& s : scaling.per_size) per_size.push_back(size_stats_json(s));
      report["scaling"] = {
          {"per_size", per_size},
          {"envelope_c", scaling.envelope_c},
          {"envelope_d", scaling.envelope_d},
          {"mean_ratio_nonincreasing_tail", scaling.mean_ratio_nonincreasing_tail},
          {"variance_ratio_nonincreasing_tail",
           scaling.variance_ratio_nonincreasing_tail},
          {"reference_two_round_bound", scaling.reference_two_round_bound}};
    } catch (const ncg::ValidationError& e) {
      report["scaling"] = {{"skipped", e.what()}};
    }
    try {
      ncg::TailReport tails = ncg::tail_checks(samples, o.epsilon);
      json rows = json::array();
      for (const auto& r : tails.rows)
        rows.push_back({{"n", r.n},
                        {"trials", r.trials},
                        {"frac_above_m_log", r.frac_above_m_log},
                        {"frac_at_least_n", r.frac_at_least_n}});
      report["tails"] = {
          {"epsilon", tails.epsilon},
          {"m_factor", tails.m_factor},
          {"rows", rows},
          {"tail_below_epsilon_at_largest", tails.tail_below_epsilon_at_largest},
          {"t_ge_n_zero_at_largest", tails.t_ge_n_zero_at_largest},
          {"t_ge_n_nonincreasing", tails.t_ge_n_nonincreasing}};
    } catch (const ncg::ValidationError& e) {
      report["tails"] = {{"skipped", e.what()}};
    }
    // Quantile table at the largest size.
    std::vector<ncg::TrialSample> largest;
    for (const auto& s : samples)
      if (s.n == o.sizes.back()) largest.push_back(s);
    ncg::TailQuantileTable table = ncg::tail_quantile_table(largest);
    json rows = json::array();
    for (const auto& r : table.rows)
      rows.push_back({{"delta", r.delta},
                      {"quantile", r.quantile},
                      {"fitted_bound", r.fitted_bound}});
    report["quantiles_at_largest"] = {
        {"n", table.n},
        {"trials", table.trials},
        {"c_hat", std::isinf(table.c_hat) ? json() : json(table.c_hat)},
        {"reference_two_round_bound", table.reference_two_round_bound},
        {"rows", rows}};
  }
  write_json(dir / "report.json", report);
  std::cout << "sweep: " << samples.size() << " samples over "
            << o.sizes.size() << " sizes\n";
}

// --- reduce ------------------------------------------------------------

struct BordaIoOpts {
  std::string graph;
  std::string prefs;
  std::string coloring;
  uint64_t seed = 1;
  std::string out = "out";
};

struct LoadedInstance {
  ncg::Graph graph;
  ncg::PreferenceProfile prefs;
  ncg::ColorAssignment coloring;
  int q = 0;
};

LoadedInstance load_instance(const std::string& graph_path,
                             const std::string& prefs_path,
                             const std::string& coloring_path) {
  LoadedInstance inst;
  inst.graph = ncg::load_graph(graph_path);
  inst.prefs = ncg::load_profile(prefs_path);
  auto [colors, q] = ncg::load_coloring(coloring_path);
  inst.coloring = colors;
  inst.q = q;
  ncg::validate_profile(inst.prefs, inst.graph.vertex_count(), inst.q);
  ncg::validate_assignment(inst.graph, inst.coloring, inst.q);
  return inst;
}

void run_reduce(const BordaIoOpts& o) {
  LoadedInstance inst = load_instance(o.graph, o.prefs, o.coloring);
  ncg::AvailableColorLists avail =
      ncg::available_colors(inst.prefs, inst.coloring);
  ncg::ReductionOutcome outcome =
      ncg::reduce_network(inst.graph, inst.prefs, inst.coloring, avail);

  ncg::RunMeta meta;
  meta.command = "reduce";
  meta.seed = o.seed;
  meta.config = {{"graph", o.graph},
                 {"prefs", o.prefs},
                 {"coloring", o.coloring},
                 {"q", std::to_string(inst.q)}};

  fs::path dir = prepare_out_dir(o.out);
  const int remaining = outcome.graph.vertex_count();
  if (remaining > 0) {
    ncg::save_graph(outcome.graph, (dir / "reduced_graph.txt").string(),
                    meta.lines());
    ncg::save_profile(outcome.prefs, (dir / "reduced_prefs.csv").string(),
                      meta.lines());
    ncg::save_coloring(outcome.coloring, inst.q,
                       (dir / "reduced_coloring.txt").string(), meta.lines());
  }
  json j{{"meta", meta_json(meta)},
         {"payoff_gained", outcome.payoff_gained},
         {"quitters", outcome.quitters},
         {"vertices_remaining", remaining},
         {"orig_ids", outcome.orig_ids}};
  write_json(dir / "reduction.json", j);
  std::cout << "reduce: quitters=" << outcome.quitters.size()
            << " payoff=" << outcome.payoff_gained
            << " remaining=" << remaining << "\n";
}

// --- localopt ----------------------------------------------------------

struct LocalOptOpts : BordaIoOpts {
  int64_t steps = 2000;
  std::string mode = "standard";
  int max_phases = 0;
};

void run_localopt(const LocalOptOpts& o) {
  LoadedInstance inst = load_instance(o.graph, o.prefs, o.coloring);
  ncg::LocalOptimumResult result = ncg::local_optimal_run(
      inst.graph, inst.prefs, inst.coloring, inst.q, o.steps, o.seed,
      ncg::parse_acceptance_mode(o.mode), o.max_phases);

  ncg::RunMeta meta;
  meta.command = "localopt";
  meta.seed = o.seed;
  meta.config = {{"graph", o.graph},
                 {"prefs", o.prefs},
                 {"coloring", o.coloring},
                 {"q", std::to_string(inst.q)},
                 {"steps", std::to_string(o.steps)},
                 {"mode", o.mode},
                 {"max_phases", std::to_string(o.max_phases)}};

  fs::path dir = prepare_out_dir(o.out);
  {
    auto csv = must_open(dir / "trace.csv");
    write_meta_comments(csv, meta);
    csv << "phase,welfare,vertices_remaining\n";
    for (const auto& p : result.trace)
      csv << p.phase << "," << p.welfare << "," << p.vertices_remaining
          << "\n";
  }
  json j{{"meta", meta_json(meta)},
         {"total_welfare", result.total_welfare},
         {"phases", result.trace.empty() ? 0 : result.trace.back().phase},
         {"departure_order", result.departure_order}};
  write_json(dir / "localopt.json", j);
  std::cout << "localopt: welfare=" << result.total_welfare << "\n";
}

// --- estimate ----------------------------------------------------------

struct EstimateOpts : BordaIoOpts {
  int k = 1000;
  int64_t steps = 2000;
  std::string mode = "standard";
  int threads = 0;
};

void run_estimate(const EstimateOpts& o) {
  LoadedInstance inst = load_instance(o.graph, o.prefs, o.coloring);
  ncg::EstimateResult result = ncg::estimate_expected_optimum(
      inst.graph, inst.prefs, inst.coloring, inst.q, o.k, o.steps, o.seed,
      ncg::parse_acceptance_mode(o.mode), o.threads);

  ncg::RunMeta meta;
  meta.command = "estimate";
  meta.seed = o.seed;
  meta.config = {{"graph", o.graph},     {"prefs", o.prefs},
                 {"coloring", o.coloring}, {"q", std::to_string(inst.q)},
                 {"k", std::to_string(o.k)}, {"steps", std::to_string(o.steps)},
                 {"mode", o.mode}};

  fs::path dir = prepare_out_dir(o.out);
  {
    auto csv = must_open(dir / "estimate_samples.csv");
    write_meta_comments(csv, meta);
    csv << "rep,welfare\n";
    for (size_t i = 0; i < result.samples.size(); ++i)
      csv << i << "," << result.samples[i] << "\n";
  }
  json j{{"meta", meta_json(meta)},
         {"k", o.k},
         {"mean", result.mean},
         {"max", result.max}};
  write_json(dir / "estimate.json", j);
  std::cout << "estimate: mean=" << result.mean << " max=" << result.max
            << "\n";
}

// --- anneal ------------------------------------------------------------

struct AnnealOpts : BordaIoOpts {
  int64_t steps = 200'000;
  std::vector<std::string> schedules = {"log1p", "linear", "quadratic"};
  std::string mode = "standard";
  double lambda0 = 1.0;
  double ratio = 2.0;
  int64_t stage = 1000;
};

void run_anneal(const AnnealOpts& o) {
  LoadedInstance inst = load_instance(o.graph, o.prefs, o.coloring);
  const ncg::AcceptanceMode mode = ncg::parse_acceptance_mode(o.mode);

  ncg::RunMeta meta;
  meta.command = "anneal";
  meta.seed = o.seed;
  std::string schedules_str;
  for (size_t i = 0; i < o.schedules.size(); ++i)
    schedules_str += (i ? "," : "") + o.schedules[i];
  meta.config = {{"graph", o.graph},
                 {"prefs", o.prefs},
                 {"coloring", o.coloring},
                 {"q", std::to_string(inst.q)},
                 {"steps", std::to_string(o.steps)},
                 {"schedule", schedules_str},
                 {"mode", o.mode},
                 {"lambda0", ncg::format_double(o.lambda0)},
                 {"ratio", ncg::format_double(o.ratio)},
                 {"stage", std::to_string(o.stage)}};

  fs::path dir = prepare_out_dir(o.out);
  json runs = json::array();
  for (const std::string& name : o.schedules) {
    ncg::TemperatureSchedule schedule = ncg::TemperatureSchedule::parse(name);
    schedule.lambda0 = o.lambda0;
    schedule.ratio = o.ratio;
    schedule.stage = o.stage;
    ncg::SaTrace trace =
        ncg::sa_run(inst.graph, inst.prefs, inst.coloring, inst.q, o.steps,
                    schedule, mode, ncg::stream_key(o.seed, 0x73, runs.size()));
    {
      auto csv = must_open(dir / ("anneal_" + name + ".csv"));
      write_meta_comments(csv, meta);
      csv << "iteration,lambda,welfare,accepted\n";
      for (size_t t = 0; t < trace.lambda.size(); ++t)
        csv << (t + 1) << "," << ncg::format_double(trace.lambda[t]) << ","
            << trace.welfare[t + 1] << "," << int(trace.accepted[t]) << "\n";
    }
    json run{{"schedule", name},
             {"best_welfare", trace.best_welfare},
             {"reaching_time", trace.reaching_time},
             {"final_welfare", trace.welfare.back()}};
    for (const auto& ref : ncg::k_schedule_references)
      if (name == ref.schedule)
        run["reference"] = {{"best_welfare", ref.best_welfare},
                            {"reaching_time", ref.reaching_time}};
    runs.push_back(run);
    std::cout << "anneal[" << name << "]: best=" << trace.best_welfare
              << " reached_at=" << trace.reaching_time << "\n";
  }
  json j{{"meta", meta_json(meta)},
         {"welfare_ceiling",
          static_cast<long long>(inst.q - 1) * inst.graph.vertex_count()},
         {"runs", runs}};
  write_json(dir / "anneal.json", j);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"network coloring game toolkit"};
  app.require_subcommand(1);
  std::string config_sink;

  GenOpts gen;
  auto* gen_cmd = app.add_subcommand("gen",
      "generate a random instance: graph, preferences, initial coloring");
  gen_cmd->add_option("--n", gen.n, "vertex count")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--p", gen.p, "edge probability")
      ->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("--q", gen.q, "palette size")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", gen.seed, "master seed");
  gen_cmd->add_option("--retry", gen.retry,
                      "extra regeneration attempts when q < max degree + 2");
  gen_cmd->add_flag("--allow-small-q", gen.allow_small_q,
                    "skip the q >= max degree + 2 check");
  gen_cmd->add_option("--out", gen.out, "output directory");
  gen_cmd->add_option("--config", config_sink, "key=value defaults file");
  gen_cmd->callback([&] { run_gen(gen); });

  PlayOpts play;
  auto* play_cmd =
      app.add_subcommand("play", "play the game to convergence");
  play_cmd->add_option("--graph", play.graph, "graph file")->required();
  play_cmd->add_option("--coloring", play.coloring,
                       "optional starting coloring file");
  play_cmd->add_option("--q", play.q, "palette size (0: from coloring file)");
  play_cmd->add_option("--seed", play.seed, "master seed");
  play_cmd->add_option("--max-rounds", play.max_rounds, "round cap");
  play_cmd->add_flag("--allow-small-q", play.allow_small_q,
                     "skip the q >= max degree + 2 check");
  play_cmd->add_option("--out", play.out, "output directory");
  play_cmd->add_option("--config", config_sink, "key=value defaults file");
  play_cmd->callback([&] { run_play(play); });

  ExactOpts exact;
  auto* exact_cmd = app.add_subcommand(
      "exact", "exact absorbing-chain analysis on a small instance");
  exact_cmd->add_option("--graph", exact.graph, "graph file")->required();
  exact_cmd->add_option("--q", exact.q, "palette size")
      ->check(CLI::PositiveNumber);
  exact_cmd->add_option("--cap", exact.cap, "state-count cap");
  exact_cmd->add_option("--t-max", exact.t_max, "power for the decay check");
  exact_cmd->add_flag("--dump-chain", exact.dump_chain,
                      "write the transition list as CSV");
  exact_cmd->add_flag("--allow-small-q", exact.allow_small_q,
                      "skip the q >= max degree + 2 check");
  exact_cmd->add_option("--seed", exact.seed, "master seed (metadata only)");
  exact_cmd->add_option("--out", exact.out, "output directory");
  exact_cmd->add_option("--config", config_sink, "key=value defaults file");
  exact_cmd->callback([&] { run_exact(exact); });

  SweepOpts sweep;
  auto* sweep_cmd = app.add_subcommand(
      "sweep", "rounds-to-convergence statistics across sizes");
  sweep_cmd->add_option("--sizes", sweep.sizes, "sizes, ascending")
      ->delimiter(',');
  sweep_cmd->add_option("--p", sweep.p, "fixed edge probability family");
  sweep_cmd->add_option("--expected-degree", sweep.expected_degree,
                        "fixed expected-degree family (default)");
  sweep_cmd->add_option("--q", sweep.q,
                        "palette size (0: max degree + 2 per instance)");
  sweep_cmd->add_option("--trials", sweep.trials, "trials per size");
  sweep_cmd->add_option("--trials-per-graph", sweep.trials_per_graph,
                        "trials sharing one generated graph");
  sweep_cmd->add_option("--seed", sweep.seed, "master seed");
  sweep_cmd->add_option("--epsilon", sweep.epsilon, "tail level");
  sweep_cmd->add_option("--max-rounds", sweep.max_rounds, "round cap");
  sweep_cmd->add_option("--threads", sweep.threads, "worker threads (0: auto)");
  sweep_cmd->add_option("--out", sweep.out, "output directory");
  sweep_cmd->add_option("--config", config_sink, "key=value defaults file");
  sweep_cmd->callback([&] { run_sweep_cmd(sweep); });

  BordaIoOpts reduce;
  auto* reduce_cmd = app.add_subcommand(
      "reduce", "remove vertices already holding their best remaining color");
  reduce_cmd->add_option("--graph", reduce.graph, "graph file")->required();
  reduce_cmd->add_option("--prefs", reduce.prefs, "preference file")
      ->required();
  reduce_cmd->add_option("--coloring", reduce.coloring, "coloring file")
      ->required();
  reduce_cmd->add_option("--seed", reduce.seed, "master seed (metadata only)");
  reduce_cmd->add_option("--out", reduce.out, "output directory");
  reduce_cmd->add_option("--config", config_sink, "key=value defaults file");
  reduce_cmd->callback([&] { run_reduce(reduce); });

  LocalOptOpts localopt;
  auto* localopt_cmd = app.add_subcommand(
      "localopt", "alternate reduction and resampling until everyone departs");
  localopt_cmd->add_option("--graph", localopt.graph, "graph file")->required();
  localopt_cmd->add_option("--prefs", localopt.prefs, "preference file")
      ->required();
  localopt_cmd->add_option("--coloring", localopt.coloring, "coloring file")
      ->required();
  localopt_cmd->add_option("--steps", localopt.steps,
                           "resampling steps per phase");
  localopt_cmd->add_option("--seed", localopt.seed, "master seed");
  localopt_cmd->add_option("--mode", localopt.mode,
                           "acceptance mode: standard|literal");
  localopt_cmd->add_option("--max-phases", localopt.max_phases,
                           "phase cap (0: 10 n)");
  localopt_cmd->add_option("--out", localopt.out, "output directory");
  localopt_cmd->add_option("--config", config_sink, "key=value defaults file");
  localopt_cmd->callback([&] { run_localopt(localopt); });

  EstimateOpts estimate;
  auto* estimate_cmd = app.add_subcommand(
      "estimate", "mean locally-optimal welfare over repeated runs");
  estimate_cmd->add_option("--graph", estimate.graph, "graph file")->required();
  estimate_cmd->add_option("--prefs", estimate.prefs, "preference file")
      ->required();
  estimate_cmd->add_option("--coloring", estimate.coloring, "coloring file")
      ->required();
  estimate_cmd->add_option("--k", estimate.k, "repetitions");
  estimate_cmd->add_option("--steps", estimate.steps,
                           "resampling steps per phase");
  estimate_cmd->add_option("--seed", estimate.seed, "master seed");
  estimate_cmd->add_option("--mode", estimate.mode,
                           "acceptance mode: standard|literal");
  estimate_cmd->add_option("--threads", estimate.threads,
                           "worker threads (0: auto)");
  estimate_cmd->add_option("--out", estimate.out, "output directory");
  estimate_cmd->add_option("--config", config_sink, "key=value defaults file");
  estimate_cmd->callback([&] { run_estimate(estimate); });

  AnnealOpts anneal;
  auto* anneal_cmd = app.add_subcommand(
      "anneal", "annealed welfare maximization with schedule comparison");
  anneal_cmd->add_option("--graph", anneal.graph, "graph file")->required();
  anneal_cmd->add_option("--prefs", anneal.prefs, "preference file")
      ->required();
  anneal_cmd->add_option("--coloring", anneal.coloring, "coloring file")
      ->required();
  anneal_cmd->add_option("--steps", anneal.steps, "iterations per schedule");
  anneal_cmd->add_option("--seed", anneal.seed, "master seed");
  anneal_cmd
      ->add_option("--schedule", anneal.schedules,
                   "schedules to run: log1p|linear|quadratic|constant|geometric")
      ->delimiter(',');
  anneal_cmd->add_option("--mode", anneal.mode,
                         "acceptance mode: standard|literal");
  anneal_cmd->add_option("--lambda0", anneal.lambda0,
                         "base value for constant/geometric");
  anneal_cmd->add_option("--ratio", anneal.ratio, "geometric growth factor");
  anneal_cmd->add_option("--stage", anneal.stage, "geometric stage length");
  anneal_cmd->add_option("--out", anneal.out, "output directory");
  anneal_cmd->add_option("--config", config_sink, "key=value defaults file");
  anneal_cmd->callback([&] { run_anneal(anneal); });

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = expand_config(std::move(args));
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const ncg::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ncg::InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

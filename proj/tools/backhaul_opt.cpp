// backhaul_opt: generate topologies, solve demand LPs, build and check
// schedules, and run seeded experiment batches.
//
// Exit codes: 0 success, 1 schedule violations or placement failure,
// 2 infeasible LP, 3 usage, input or I/O error.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "backhaul/error.hpp"
#include "backhaul/experiment.hpp"
#include "backhaul/formulations.hpp"
#include "backhaul/generator.hpp"
#include "backhaul/json_io.hpp"
#include "backhaul/scheduler.hpp"
#include "backhaul/validator.hpp"

namespace {

using namespace backhaul;

constexpr int kOk = 0;
constexpr int kViolations = 1;
constexpr int kInfeasible = 2;
constexpr int kUsage = 3;

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::PlacementFailure: return kViolations;
    case ErrorCode::Infeasible:
    case ErrorCode::InfeasibleFloor:
    case ErrorCode::Unbounded: return kInfeasible;
    default: return kUsage;
  }
}

void emit(const Json& doc, const std::string& out) {
  if (out.empty() || out == "-")
    std::cout << doc.dump(2) << '\n';
  else
    write_json_file(out, doc);
}

std::optional<std::uint64_t> env_seed() {
  const char* raw = std::getenv("BACKHAUL_OPT_SEED");
  if (!raw || !*raw) return std::nullopt;
  try {
    std::size_t used = 0;
    const auto v = std::stoull(raw, &used, 0);
    if (used == std::string(raw).size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::InvalidArgument, std::string("BACKHAUL_OPT_SEED is not an integer: ") + raw);
}

// Topology with the radio chains the setting prescribes; interference pairs
// are kept as given.
NetworkTopology prepared(const std::string& topology_path, const std::string& label) {
  auto topo = topology_from_json(read_json_file(topology_path));
  if (!label.empty()) assign_radio_chains(topo, parse_setting(label));
  return topo;
}

struct GenerateArgs {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<int> num_small_bs;
  std::optional<int> macro_degree;
  std::optional<int> max_small_children;
  std::optional<int> budget;
};

int cmd_generate(const GenerateArgs& a) {
  GeneratorConfig config = a.config.empty() ? GeneratorConfig{} : generator_config_from_json(read_json_file(a.config));
  if (auto s = env_seed()) config.seed = *s;
  if (a.seed) config.seed = *a.seed;
  if (a.num_small_bs) config.num_small_bs = *a.num_small_bs;
  if (a.macro_degree) config.macro_degree = *a.macro_degree;
  if (a.max_small_children) config.max_small_children = *a.max_small_children;
  if (a.budget) config.interference_pair_budget = *a.budget;
  emit(to_json(generate(config)), a.out);
  return kOk;
}

struct SolveArgs {
  std::string topology;
  std::string objective = "equal_demand";
  std::string setting = "LI-LR";
  std::string fair_floor = "auto";
  std::string out;
};

int cmd_solve(const SolveArgs& a) {
  const auto named = parse_setting(a.setting);
  const auto topo = prepared(a.topology, a.setting);
  const auto objective = parse_objective(a.objective);
  DemandSolution solution;
  if (objective == Objective::AggregateFair && a.fair_floor != "auto") {
    double floor = 0.0;
    try {
      std::size_t used = 0;
      floor = std::stod(a.fair_floor, &used);
      if (used != a.fair_floor.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "--fair-floor must be 'auto' or a number, got " + a.fair_floor);
    }
    solution = solve_fair_aggregate(topo, named.setting, floor);
  } else {
    solution = solve_objective(topo, named.setting, objective);
  }
  emit(to_json(solution, named.label, topo), a.out);
  return kOk;
}

int cmd_schedule(const std::string& topology, const std::string& solution_path, const std::string& out) {
  const auto doc = solution_from_json(read_json_file(solution_path));
  const auto topo = prepared(topology, doc.setting);
  const auto sched = schedule(topo, doc.solution.p_first);
  for (const auto& d : sched.deviations) std::cerr << "deviation: " << d << '\n';
  emit(to_json(sched), out);
  return kOk;
}

int cmd_validate(const std::string& topology, const std::string& solution_path, const std::string& schedule_path,
                 const std::string& out) {
  const auto doc = solution_from_json(read_json_file(solution_path));
  const auto topo = prepared(topology, doc.setting);
  const auto sched = schedule_from_json(read_json_file(schedule_path));
  const auto report = validate_schedule(topo, doc.solution.p_first, doc.solution.per_bs_demand, sched);
  emit(to_json(report), out);
  return report.feasible() ? kOk : kViolations;
}

struct ExperimentArgs {
  std::string spec;
  std::string out;
  int jobs = 1;
  std::optional<int> trials;
  std::optional<std::uint64_t> seed;
};

int cmd_experiment(const ExperimentArgs& a) {
  ExperimentSpec spec = a.spec.empty() ? ExperimentSpec{} : experiment_spec_from_json(read_json_file(a.spec));
  if (auto s = env_seed()) spec.generator.seed = *s;
  if (a.seed) spec.generator.seed = *a.seed;
  if (a.trials) {
    if (*a.trials < 1) throw Error(ErrorCode::InvalidArgument, "--trials must be at least 1");
    spec.num_trials = *a.trials;
  }
  const auto trials = run_experiment(spec, a.jobs);
  write_experiment(a.out, spec, trials);
  const auto summary = experiment_summary(spec, trials);
  std::cout << "trials: " << trials.size() << ", realizability: " << summary["realizability"]["rate"].get<double>()
            << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maximum demand, schedules and experiments for tree-style mmWave backhaul networks"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate_cmd = app.add_subcommand("generate", "Write a random topology");
  generate_cmd->add_option("--config", gen.config, "Generator config JSON")->check(CLI::ExistingFile);
  generate_cmd->add_option("-o,--out", gen.out, "Output path (stdout if omitted)");
  generate_cmd->add_option("--seed", gen.seed, "PRNG seed");
  generate_cmd->add_option("--num-small-bs", gen.num_small_bs);
  generate_cmd->add_option("--macro-degree", gen.macro_degree);
  generate_cmd->add_option("--max-small-children", gen.max_small_children);
  generate_cmd->add_option("--interference-budget", gen.budget, "Number of interference pairs to draw");

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve a demand LP");
  solve_cmd->add_option("--topology", solve.topology)->required()->check(CLI::ExistingFile);
  solve_cmd->add_option("--objective", solve.objective, "equal_demand | aggregate | aggregate_fair")
      ->capture_default_str();
  solve_cmd->add_option("--setting", solve.setting, "MI-ER, LI-LR(2), ...; bare LR keeps the file's radio chains")
      ->capture_default_str();
  solve_cmd->add_option("--fair-floor", solve.fair_floor, "'auto' or a per-BS floor in Gbps")->capture_default_str();
  solve_cmd->add_option("-o,--out", solve.out, "Output path (stdout if omitted)");

  std::string topology_path;
  std::string solution_path;
  std::string schedule_path;
  std::string out_path;
  auto* schedule_cmd = app.add_subcommand("schedule", "Build a schedule for a solution");
  schedule_cmd->add_option("--topology", topology_path)->required()->check(CLI::ExistingFile);
  schedule_cmd->add_option("--solution", solution_path)->required()->check(CLI::ExistingFile);
  schedule_cmd->add_option("-o,--out", out_path, "Output path (stdout if omitted)");

  auto* validate_cmd = app.add_subcommand("validate", "Check a schedule against a solution");
  validate_cmd->add_option("--topology", topology_path)->required()->check(CLI::ExistingFile);
  validate_cmd->add_option("--solution", solution_path)->required()->check(CLI::ExistingFile);
  validate_cmd->add_option("--schedule", schedule_path)->required()->check(CLI::ExistingFile);
  validate_cmd->add_option("-o,--out", out_path, "Report path (stdout if omitted)");

  ExperimentArgs exp;
  auto* experiment_cmd = app.add_subcommand("experiment", "Run a seeded batch and write CSVs");
  experiment_cmd->add_option("--spec", exp.spec, "Experiment spec JSON")->check(CLI::ExistingFile);
  experiment_cmd->add_option("-o,--out", exp.out, "Output directory")->required();
  experiment_cmd->add_option("-j,--jobs", exp.jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  experiment_cmd->add_option("--trials", exp.trials);
  experiment_cmd->add_option("--seed", exp.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (generate_cmd->parsed()) return cmd_generate(gen);
    if (solve_cmd->parsed()) return cmd_solve(solve);
    if (schedule_cmd->parsed()) return cmd_schedule(topology_path, solution_path, out_path);
    if (validate_cmd->parsed()) return cmd_validate(topology_path, solution_path, schedule_path, out_path);
    if (experiment_cmd->parsed()) return cmd_experiment(exp);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

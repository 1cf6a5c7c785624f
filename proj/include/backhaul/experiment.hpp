#pragma once

// Batch runs over seeded generator topologies: every trial solves each
// (setting, objective), schedules the solution and validates the schedule.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "backhaul/formulations.hpp"
#include "backhaul/generator.hpp"
#include "backhaul/json_io.hpp"

namespace backhaul {

struct ExperimentSpec {
  std::vector<std::string> settings = standard_setting_labels();
  std::vector<Objective> objectives{Objective::EqualDemand, Objective::Aggregate, Objective::AggregateFair};
  int num_trials = 50;
  GeneratorConfig generator;  // generator.seed is the batch seed
};

// Throws Error(Parse) or Error(InvalidArgument) for empty lists, unknown
// labels or num_trials < 1.
ExperimentSpec experiment_spec_from_json(const Json& doc);
Json to_json(const ExperimentSpec& spec);

// splitmix64(seed ^ trial): the generator seed of one trial.
std::uint64_t trial_seed(std::uint64_t batch_seed, int trial);

struct RunOutcome {
  std::string setting;
  Objective objective = Objective::EqualDemand;

  bool solved = false;
  std::string error;  // solver error when !solved
  DemandSolution solution;
  double aggregate = 0.0;
  std::optional<double> jain;
  int macro_chains = 0;      // min radio chains at the macro
  int max_small_chains = 0;  // largest min radio chains over small cells

  bool scheduled = false;
  std::string schedule_error;  // PlacementFailure message when !scheduled
  std::size_t violations = 0;
  double realized_d_b = 0.0;

  // Scheduled with an empty validation report.
  bool realized() const { return scheduled && violations == 0; }
};

struct TrialResult {
  int trial = 0;
  std::uint64_t seed = 0;
  NetworkTopology topology;
  // Equal-demand optimum per setting label (absent when infeasible).
  std::map<std::string, double> max_demand;
  std::vector<RunOutcome> runs;

  const RunOutcome* find(const std::string& setting, Objective objective) const;
};

TrialResult run_trial(const ExperimentSpec& spec, int trial);

// Trials run on up to `jobs` threads; results are ordered by trial index.
std::vector<TrialResult> run_experiment(const ExperimentSpec& spec, int jobs = 1);

// max_demand_by_setting.csv, aggregate_by_objective.csv, jain_by_objective.csv,
// min_radio_chains_hist.csv (one row per trial each) and summary.json.
void write_experiment(const std::filesystem::path& dir, const ExperimentSpec& spec,
                      const std::vector<TrialResult>& trials);

Json experiment_summary(const ExperimentSpec& spec, const std::vector<TrialResult>& trials);

}  // namespace backhaul

#pragma once

// JSON documents exchanged by the command-line tool.
//
// Parsers throw Error(Parse) for structurally wrong documents; file helpers
// throw Error(Io). Integer-keyed maps are written as objects keyed by the
// decimal id ("per_bs": {"1": 3.3, ...}).

#include <filesystem>
#include <map>
#include <string>

#include <json.hpp>

#include "backhaul/formulations.hpp"
#include "backhaul/generator.hpp"
#include "backhaul/model.hpp"
#include "backhaul/scheduler.hpp"
#include "backhaul/validator.hpp"

namespace backhaul {

using Json = nlohmann::json;

Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& doc);

// Links carry id, parent, child, hops and phy_rate_gbps; capacity_gbps,
// p_first_max and p_last_max are optional overrides of the derived profile.
Json to_json(const NetworkTopology& topology);
NetworkTopology topology_from_json(const Json& doc);

// Missing keys keep their defaults; unknown keys are rejected.
Json to_json(const GeneratorConfig& config);
GeneratorConfig generator_config_from_json(const Json& doc);

struct SolutionDocument {
  std::string setting;
  DemandSolution solution;
};

// Adds jain_index (null when every demand is zero), min_radio_chains and the
// link profiles of `topology` to the solved values.
Json to_json(const DemandSolution& solution, const std::string& setting, const NetworkTopology& topology);
SolutionDocument solution_from_json(const Json& doc);

Json to_json(const Schedule& sched);
Schedule schedule_from_json(const Json& doc);

Json to_json(const ValidationReport& report);

}  // namespace backhaul

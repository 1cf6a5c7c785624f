#include "backhaul/json_io.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "backhaul/capacity.hpp"
#include "backhaul/error.hpp"

namespace backhaul {

namespace {

template <class F>
auto parsing(const char* what, F&& body) {
  try {
    return body();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::Parse, std::string(what) + ": " + e.what());
  }
}

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::Parse, what); }

int parse_id(const std::string& key) {
  std::size_t used = 0;
  int id = 0;
  try {
    id = std::stoi(key, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != key.size()) parse_error("expected an integer key, got \"" + key + "\"");
  return id;
}

template <class T>
Json keyed(const std::map<int, T>& values) {
  Json out = Json::object();
  for (const auto& [k, v] : values) out[std::to_string(k)] = v;
  return out;
}

template <class T>
std::map<int, T> unkeyed(const Json& obj, const char* field) {
  if (!obj.is_object()) parse_error(std::string(field) + " must be an object");
  std::map<int, T> out;
  for (const auto& [k, v] : obj.items()) out[parse_id(k)] = v.template get<T>();
  return out;
}

const char* kind_name(IntervalKind k) { return k == IntervalKind::Active ? "active" : "pause"; }

Json chain_list(const std::vector<ChainInterval>& ivs) {
  Json out = Json::array();
  for (const auto& iv : ivs) out.push_back({{"chain", iv.chain}, {"start", iv.start}, {"end", iv.end}});
  return out;
}

std::vector<ChainInterval> chain_list_from(const Json& arr) {
  std::vector<ChainInterval> out;
  for (const auto& iv : arr) out.push_back({iv.at("chain").get<int>(), iv.at("start").get<double>(), iv.at("end").get<double>()});
  return out;
}

}  // namespace

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::Parse, path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& doc) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << doc.dump(2) << '\n';
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

Json to_json(const NetworkTopology& topology) {
  Json stations = Json::array();
  for (const auto& s : topology.stations)
    stations.push_back({{"id", s.id}, {"kind", s.kind == StationKind::Macro ? "macro" : "small"}, {"radio_chains", s.radio_chains}});
  Json links = Json::array();
  for (const auto& l : topology.links) {
    Json j = {{"id", l.id}, {"parent", l.parent}, {"child", l.child}, {"hops", l.hop_count}, {"phy_rate_gbps", l.phy_rate_gbps}};
    // Only profiles that differ from the derived one are written.
    try {
      const auto derived = link_profile(l.hop_count, l.phy_rate_gbps);
      if (derived.capacity_gbps != l.capacity_gbps) j["capacity_gbps"] = l.capacity_gbps;
      if (derived.p_first_max != l.p_first_max) j["p_first_max"] = l.p_first_max;
      if (derived.p_last_max != l.p_last_max) j["p_last_max"] = l.p_last_max;
    } catch (const Error&) {
      j["capacity_gbps"] = l.capacity_gbps;
      j["p_first_max"] = l.p_first_max;
      j["p_last_max"] = l.p_last_max;
    }
    links.push_back(std::move(j));
  }
  Json pairs = Json::array();
  for (const auto& [a, b] : topology.interference_pairs) pairs.push_back({a, b});
  return {{"stations", stations}, {"links", links}, {"interference", pairs}};
}

NetworkTopology topology_from_json(const Json& doc) {
  return parsing("topology", [&] {
    if (!doc.is_object()) parse_error("topology must be an object");
    NetworkTopology topo;
    for (const auto& s : doc.at("stations")) {
      BaseStation bs;
      bs.id = s.at("id").get<int>();
      const auto kind = s.at("kind").get<std::string>();
      if (kind == "macro")
        bs.kind = StationKind::Macro;
      else if (kind == "small")
        bs.kind = StationKind::Small;
      else
        parse_error("station " + std::to_string(bs.id) + " has unknown kind \"" + kind + "\"");
      bs.radio_chains = s.value("radio_chains", 1);
      topo.stations.push_back(bs);
    }
    for (const auto& l : doc.at("links")) {
      const int parent = l.at("parent").get<int>();
      const int child = l.at("child").get<int>();
      const int hops = l.at("hops").get<int>();
      const double phy = l.value("phy_rate_gbps", kDefaultPhyRateGbps);
      LogicalLink link = make_link(parent, child, hops, phy);
      link.id = l.value("id", child);
      link.capacity_gbps = l.value("capacity_gbps", link.capacity_gbps);
      link.p_first_max = l.value("p_first_max", link.p_first_max);
      link.p_last_max = l.value("p_last_max", link.p_last_max);
      topo.links.push_back(link);
    }
    if (doc.contains("interference")) {
      for (const auto& p : doc.at("interference")) {
        if (!p.is_array() || p.size() != 2) parse_error("interference entries must be [a, b] pairs");
        topo.add_interference(p[0].get<int>(), p[1].get<int>());
      }
    }
    return topo;
  });
}

Json to_json(const GeneratorConfig& c) {
  return {{"seed", c.seed},
          {"num_small_bs", c.num_small_bs},
          {"macro_degree", c.macro_degree},
          {"max_small_children", c.max_small_children},
          {"hop_distribution", keyed(c.hop_distribution)},
          {"interference_pair_budget", c.interference_pair_budget},
          {"phy_rate_gbps", c.phy_rate_gbps}};
}

GeneratorConfig generator_config_from_json(const Json& doc) {
  return parsing("generator config", [&] {
    if (!doc.is_object()) parse_error("generator config must be an object");
    static const std::set<std::string> known{"seed",         "num_small_bs",           "macro_degree",
                                              "max_small_children", "hop_distribution", "interference_pair_budget",
                                              "phy_rate_gbps"};
    for (const auto& [k, _] : doc.items())
      if (!known.count(k)) parse_error("unknown generator config key \"" + k + "\"");
    GeneratorConfig c;
    c.seed = doc.value("seed", c.seed);
    c.num_small_bs = doc.value("num_small_bs", c.num_small_bs);
    c.macro_degree = doc.value("macro_degree", c.macro_degree);
    c.max_small_children = doc.value("max_small_children", c.max_small_children);
    if (doc.contains("hop_distribution")) c.hop_distribution = unkeyed<double>(doc.at("hop_distribution"), "hop_distribution");
    c.interference_pair_budget = doc.value("interference_pair_budget", c.interference_pair_budget);
    c.phy_rate_gbps = doc.value("phy_rate_gbps", c.phy_rate_gbps);
    return c;
  });
}

Json to_json(const DemandSolution& s, const std::string& setting, const NetworkTopology& topology) {
  Json doc;
  doc["objective"] = to_string(s.objective);
  doc["setting"] = setting;
  doc["d_b_gbps"] = s.d_b_gbps ? Json(*s.d_b_gbps) : Json(nullptr);
  doc["per_bs"] = keyed(s.per_bs_demand.per_bs);
  doc["aggregate_gbps"] = s.per_bs_demand.aggregate();
  doc["p_first"] = keyed(s.p_first);
  doc["p_last"] = keyed(s.p_last);
  try {
    doc["jain_index"] = jain_index(s.per_bs_demand);
  } catch (const Error&) {
    doc["jain_index"] = nullptr;
  }
  doc["min_radio_chains"] = keyed(min_radio_chains(topology, s.p_first));
  Json profiles = Json::object();
  for (const auto& l : topology.links)
    profiles[std::to_string(l.id)] = {{"hops", l.hop_count},
                                      {"capacity_gbps", l.capacity_gbps},
                                      {"p_first_max", l.p_first_max},
                                      {"p_last_max", l.p_last_max}};
  doc["profiles"] = profiles;
  return doc;
}

SolutionDocument solution_from_json(const Json& doc) {
  return parsing("solution", [&] {
    if (!doc.is_object()) parse_error("solution must be an object");
    SolutionDocument out;
    out.setting = doc.value("setting", std::string{});
    out.solution.objective = doc.contains("objective") ? parse_objective(doc.at("objective").get<std::string>())
                                                       : Objective::EqualDemand;
    if (doc.contains("d_b_gbps") && !doc.at("d_b_gbps").is_null()) out.solution.d_b_gbps = doc.at("d_b_gbps").get<double>();
    out.solution.per_bs_demand.per_bs = unkeyed<double>(doc.at("per_bs"), "per_bs");
    out.solution.p_first = unkeyed<double>(doc.at("p_first"), "p_first");
    if (doc.contains("p_last")) out.solution.p_last = unkeyed<double>(doc.at("p_last"), "p_last");
    return out;
  });
}

Json to_json(const Schedule& sched) {
  Json links = Json::array();
  for (const auto& [id, ls] : sched.per_link) {
    Json fp = Json::array();
    for (const auto& iv : ls.footprint) fp.push_back({{"start", iv.start}, {"end", iv.end}, {"kind", kind_name(iv.kind)}});
    links.push_back({{"id", id}, {"footprint", fp}, {"parent_side", chain_list(ls.parent_side)}, {"child_side", chain_list(ls.child_side)}});
  }
  Json chains = Json::array();
  for (const auto& [key, ivs] : sched.per_bs_chains) {
    Json list = Json::array();
    for (const auto& iv : ivs) list.push_back({{"start", iv.start}, {"end", iv.end}});
    chains.push_back({{"bs", key.first}, {"chain", key.second}, {"intervals", list}});
  }
  return {{"links", links}, {"chains", chains}, {"deviations", sched.deviations}};
}

Schedule schedule_from_json(const Json& doc) {
  return parsing("schedule", [&] {
    if (!doc.is_object()) parse_error("schedule must be an object");
    Schedule sched;
    for (const auto& l : doc.at("links")) {
      LinkSchedule ls;
      ls.link_id = l.at("id").get<int>();
      for (const auto& iv : l.at("footprint")) {
        const auto kind = iv.value("kind", std::string("active"));
        if (kind != "active" && kind != "pause") parse_error("unknown interval kind \"" + kind + "\"");
        ls.footprint.push_back({iv.at("start").get<double>(), iv.at("end").get<double>(),
                                kind == "active" ? IntervalKind::Active : IntervalKind::Pause});
      }
      ls.parent_side = chain_list_from(l.at("parent_side"));
      ls.child_side = chain_list_from(l.at("child_side"));
      if (!sched.per_link.emplace(ls.link_id, ls).second)
        parse_error("link " + std::to_string(ls.link_id) + " listed twice");
    }
    if (doc.contains("chains")) {
      for (const auto& c : doc.at("chains")) {
        auto& list = sched.per_bs_chains[{c.at("bs").get<int>(), c.at("chain").get<int>()}];
        for (const auto& iv : c.at("intervals")) list.push_back({iv.at("start").get<double>(), iv.at("end").get<double>()});
      }
    }
    if (doc.contains("deviations")) sched.deviations = doc.at("deviations").get<std::vector<std::string>>();
    return sched;
  });
}

Json to_json(const ValidationReport& report) {
  Json violations = Json::array();
  for (const auto& v : report.violations) violations.push_back({{"kind", to_string(v.kind)}, {"detail", v.detail}});
  return {{"feasible", report.feasible()},
          {"violations", violations},
          {"realized_d_b", report.realized_d_b},
          {"realized_rates", keyed(report.realized_rates)}};
}

}  // namespace backhaul

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "backhaul/json_io.hpp"
#include "support/fixtures.hpp"

using namespace backhaul;
namespace fs = std::filesystem;

namespace {

const fs::path& workdir() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / "backhaul_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

fs::path at(const std::string& name) { return workdir() / name; }

std::string quoted(const fs::path& p) { return "'" + p.string() + "'"; }

// Runs the tool with `args`; stdout and stderr go to files in the work dir.
int run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + quoted(BACKHAUL_OPT_PATH) + " " + args + " >" +
                          quoted(at("stdout.txt")) + " 2>" + quoted(at("stderr.txt"));
  const int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json load(const std::string& name) { return read_json_file(at(name)); }

void save(const std::string& name, const Json& doc) { write_json_file(at(name), doc); }

}  // namespace

TEST_CASE("equal demand on the chain example") {
  save("chain.json", to_json(fixtures::chain(13.3)));
  REQUIRE(run("solve --topology " + quoted(at("chain.json")) + " --objective equal_demand --setting MI-ER -o " +
              quoted(at("chain_sol.json"))) == 0);
  const auto sol = load("chain_sol.json");
  CHECK(sol["d_b_gbps"].get<double>() == doctest::Approx(3.325).epsilon(1e-9));
  CHECK(sol["setting"] == "MI-ER");
  CHECK(sol["p_first"]["1"].get<double>() == doctest::Approx(0.5));

  // Solution on stdout when no output path is given.
  REQUIRE(run("solve --topology " + quoted(at("chain.json")) + " --setting MI-ER") == 0);
  CHECK(Json::parse(slurp(at("stdout.txt")))["d_b_gbps"].get<double>() == doctest::Approx(3.325));
}

TEST_CASE("generate, solve, schedule and validate end to end") {
  for (const char* objective : {"equal_demand", "aggregate", "aggregate_fair"}) {
    for (const char* setting : {"MI-ER", "LI-LR(2)", "LI-ER"}) {
      CAPTURE(objective);
      CAPTURE(setting);
      const std::string budget = std::string(setting).rfind("MI", 0) == 0 ? "0" : "6";
      REQUIRE(run("generate --seed 31 --interference-budget " + budget + " -o " + quoted(at("topo.json"))) == 0);
      REQUIRE(run("solve --topology " + quoted(at("topo.json")) + " --objective " + objective + " --setting '" +
                  setting + "' -o " + quoted(at("sol.json"))) == 0);
      REQUIRE(run("schedule --topology " + quoted(at("topo.json")) + " --solution " + quoted(at("sol.json")) + " -o " +
                  quoted(at("sched.json"))) == 0);
      REQUIRE(run("validate --topology " + quoted(at("topo.json")) + " --solution " + quoted(at("sol.json")) +
                  " --schedule " + quoted(at("sched.json")) + " -o " + quoted(at("report.json"))) == 0);
      const auto report = load("report.json");
      CHECK(report["feasible"] == true);
      CHECK(report["violations"].empty());
    }
  }
}

TEST_CASE("validate rejects a tampered schedule") {
  save("star.json", to_json(fixtures::star(2, 1, 1, 13.3)));
  REQUIRE(run("solve --topology " + quoted(at("star.json")) + " --setting MI-LR -o " + quoted(at("star_sol.json"))) == 0);
  REQUIRE(run("schedule --topology " + quoted(at("star.json")) + " --solution " + quoted(at("star_sol.json")) +
              " -o " + quoted(at("star_sched.json"))) == 0);
  auto sched = load("star_sched.json");
  for (auto& link : sched["links"]) {
    if (link["id"] != 2) continue;
    for (const char* side : {"footprint", "parent_side", "child_side"})
      for (auto& iv : link[side]) {
        iv["start"] = iv["start"].get<double>() - 0.1;
        iv["end"] = iv["end"].get<double>() - 0.1;
      }
  }
  save("tampered.json", sched);
  CHECK(run("validate --topology " + quoted(at("star.json")) + " --solution " + quoted(at("star_sol.json")) +
            " --schedule " + quoted(at("tampered.json"))) == 1);
  const auto report = Json::parse(slurp(at("stdout.txt")));
  CHECK(report["feasible"] == false);
  bool chain_overlap = false;
  for (const auto& v : report["violations"]) chain_overlap = chain_overlap || v["kind"] == "ChainOverlap";
  CHECK(chain_overlap);
}

TEST_CASE("validating against the wrong topology") {
  save("chain.json", to_json(fixtures::chain(13.3)));
  REQUIRE(run("solve --topology " + quoted(at("chain.json")) + " --setting MI-ER -o " + quoted(at("c_sol.json"))) == 0);
  REQUIRE(run("schedule --topology " + quoted(at("chain.json")) + " --solution " + quoted(at("c_sol.json")) + " -o " +
              quoted(at("c_sched.json"))) == 0);
  auto other = fixtures::chain(13.3);
  other.links[0] = make_link(0, 1, 1, 13.3);
  save("other.json", to_json(other));
  CHECK(run("validate --topology " + quoted(at("other.json")) + " --solution " + quoted(at("c_sol.json")) +
            " --schedule " + quoted(at("c_sched.json"))) == 1);
  const auto report = Json::parse(slurp(at("stdout.txt")));
  bool mismatch = false;
  for (const auto& v : report["violations"]) mismatch = mismatch || v["kind"] == "FootprintMismatch";
  CHECK(mismatch);
}

TEST_CASE("interference-limited setting on a pair-free topology") {
  REQUIRE(run("generate --seed 8 --interference-budget 0 -o " + quoted(at("free.json"))) == 0);
  REQUIRE(run("solve --topology " + quoted(at("free.json")) + " --setting MI-ER -o " + quoted(at("mi.json"))) == 0);
  REQUIRE(run("solve --topology " + quoted(at("free.json")) + " --setting LI-ER -o " + quoted(at("li.json"))) == 0);
  CHECK(load("mi.json")["d_b_gbps"].get<double>() ==
        doctest::Approx(load("li.json")["d_b_gbps"].get<double>()).epsilon(1e-12));
}

TEST_CASE("exit codes") {
  save("chain.json", to_json(fixtures::chain(13.3)));
  CHECK(run("solve --topology " + quoted(at("chain.json")) +
            " --objective aggregate_fair --fair-floor 99 --setting MI-ER") == 2);
  CHECK(run("solve --topology " + quoted(at("chain.json")) +
            " --objective aggregate_fair --fair-floor 1.5 --setting MI-ER") == 0);
  CHECK(run("solve --topology " + quoted(at("chain.json")) + " --objective aggregate_fair --fair-floor lots") == 3);
  CHECK(run("solve --topology " + quoted(at("chain.json")) + " --setting XX-ER") == 3);
  CHECK(run("solve --topology " + quoted(at("chain.json")) + " --objective best") == 3);
  CHECK(run("solve --topology " + quoted(at("missing.json"))) == 3);
  CHECK(run("solve") == 3);
  CHECK(run("frobnicate") == 3);
  CHECK(run("") == 3);
  CHECK(run("--help") == 0);

  auto paired = fixtures::star(2, 1, 2, 13.3);
  paired.add_interference(1, 2);
  save("paired.json", to_json(paired));
  CHECK(run("solve --topology " + quoted(at("paired.json")) + " --setting MI-ER") == 3);
  CHECK(slurp(at("stderr.txt")).find("InterferenceNotMinimal") != std::string::npos);
  CHECK(run("solve --topology " + quoted(at("paired.json")) + " --setting LI-ER") == 0);

  {
    std::ofstream bad(at("bad.json"));
    bad << "{";
  }
  CHECK(run("solve --topology " + quoted(at("bad.json"))) == 3);
}

TEST_CASE("seed precedence") {
  REQUIRE(run("generate --seed 5 -o " + quoted(at("s5.json"))) == 0);
  REQUIRE(run("generate -o " + quoted(at("env5.json")), "BACKHAUL_OPT_SEED=5") == 0);
  REQUIRE(run("generate --seed 5 -o " + quoted(at("flag5.json")), "BACKHAUL_OPT_SEED=6") == 0);
  REQUIRE(run("generate -o " + quoted(at("env6.json")), "BACKHAUL_OPT_SEED=6") == 0);
  CHECK(load("s5.json") == load("env5.json"));
  CHECK(load("s5.json") == load("flag5.json"));
  CHECK(load("s5.json") != load("env6.json"));

  save("cfg.json", Json{{"seed", 6}, {"num_small_bs", 20}});
  REQUIRE(run("generate --config " + quoted(at("cfg.json")) + " -o " + quoted(at("cfg_env.json")), "BACKHAUL_OPT_SEED=5") == 0);
  CHECK(load("cfg_env.json") == load("s5.json"));
  CHECK(run("generate", "BACKHAUL_OPT_SEED=abc") == 3);

  CHECK(run("generate --num-small-bs 3 --macro-degree 5") == 3);
}

TEST_CASE("experiment command") {
  save("spec.json", Json{{"num_trials", 2}, {"generator", {{"num_small_bs", 6}, {"macro_degree", 2}}}});
  const auto out = at("exp");
  REQUIRE(run("experiment --spec " + quoted(at("spec.json")) + " -o " + quoted(out) + " -j 2") == 0);
  for (const char* f : {"max_demand_by_setting.csv", "aggregate_by_objective.csv", "jain_by_objective.csv",
                        "min_radio_chains_hist.csv", "summary.json"})
    CHECK(fs::exists(out / f));
  CHECK(read_json_file(out / "summary.json")["trials"] == 2);
  CHECK(slurp(at("stdout.txt")).find("realizability: 1") != std::string::npos);

  REQUIRE(run("experiment --spec " + quoted(at("spec.json")) + " -o " + quoted(at("exp3")) + " --trials 3 --seed 4") == 0);
  CHECK(read_json_file(at("exp3") / "summary.json")["spec"]["generator"]["seed"] == 4);
  CHECK(run("experiment --spec " + quoted(at("spec.json")) + " -o " + quoted(at("exp0")) + " --trials 0") == 3);
  CHECK(run("experiment --spec " + quoted(at("spec.json"))) == 3);
}

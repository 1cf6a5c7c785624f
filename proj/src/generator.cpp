#include "backhaul/generator.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "backhaul/error.hpp"

namespace backhaul {

namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, n) by rejection, no modulo bias.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do x = engine_();
    while (x >= limit);
    return x % n;
  }

  // Uniform in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

void check(const GeneratorConfig& c) {
  auto bad = [](const std::string& why) { throw Error(ErrorCode::InfeasibleConfig, why); };
  if (c.num_small_bs < 1) bad("num_small_bs must be at least 1");
  if (c.macro_degree < 1) bad("macro_degree must be at least 1");
  if (c.macro_degree > c.num_small_bs) bad("macro_degree exceeds num_small_bs");
  if (c.max_small_children < 0) bad("max_small_children must be non-negative");
  if (c.max_small_children == 0 && c.num_small_bs > c.macro_degree)
    bad("small cells beyond the macro's children need max_small_children > 0");
  if (c.interference_pair_budget < 0) bad("interference_pair_budget must be non-negative");
  if (!(c.phy_rate_gbps > 0.0) || !std::isfinite(c.phy_rate_gbps)) bad("phy_rate_gbps must be positive");
  double total = 0.0;
  for (const auto& [hops, w] : c.hop_distribution) {
    if (hops < 1) bad("hop counts must be at least 1");
    if (!(w >= 0.0) || !std::isfinite(w)) bad("hop weights must be non-negative");
    total += w;
  }
  if (!(total > 0.0)) bad("hop distribution has no mass");
}

int draw_hops(Rng& rng, const std::map<int, double>& dist) {
  double total = 0.0;
  for (const auto& [_, w] : dist) total += w;
  double u = rng.unit() * total;
  int last = dist.begin()->first;
  for (const auto& [hops, w] : dist) {
    if (w <= 0.0) continue;
    last = hops;
    if (u < w) return hops;
    u -= w;
  }
  return last;
}

// Pairs of links attached to one BS, neither yet paired there.
std::vector<LinkPair> legal_pairs(const Tree& tree, const std::set<LinkPair>& chosen) {
  std::vector<LinkPair> out;
  std::vector<int> stations{tree.macro()};
  stations.insert(stations.end(), tree.small_cells().begin(), tree.small_cells().end());
  for (int bs : stations) {
    const auto attached = tree.attached_links(bs);
    std::set<int> busy;
    for (const auto& [a, b] : chosen)
      if (attached.count(a) && attached.count(b)) busy.insert({a, b});
    for (auto i = attached.begin(); i != attached.end(); ++i) {
      if (busy.count(*i)) continue;
      for (auto j = std::next(i); j != attached.end(); ++j)
        if (!busy.count(*j)) out.push_back(make_link_pair(*i, *j));
    }
  }
  return out;
}

}  // namespace

NetworkTopology generate(const GeneratorConfig& config) {
  check(config);
  Rng rng(config.seed);

  NetworkTopology topo;
  topo.stations.push_back({0, StationKind::Macro, 1});
  std::vector<int> child_count(static_cast<std::size_t>(config.num_small_bs) + 1, 0);
  for (int bs = 1; bs <= config.num_small_bs; ++bs) {
    topo.stations.push_back({bs, StationKind::Small, 1});
    int parent = 0;
    if (bs > config.macro_degree) {
      std::vector<int> open;
      for (int s = 1; s < bs; ++s)
        if (child_count[static_cast<std::size_t>(s)] < config.max_small_children) open.push_back(s);
      parent = open[rng.below(open.size())];
      ++child_count[static_cast<std::size_t>(parent)];
    }
    topo.links.push_back(make_link(parent, bs, draw_hops(rng, config.hop_distribution), config.phy_rate_gbps));
  }

  {
    const Tree tree(topo);
    for (int k = 0; k < config.interference_pair_budget; ++k) {
      const auto options = legal_pairs(tree, topo.interference_pairs);
      if (options.empty()) break;
      const auto& [a, b] = options[rng.below(options.size())];
      topo.add_interference(a, b);
    }
  }
  assign_radio_chains(topo, parse_setting("MI-ER"));
  return topo;
}

void assign_radio_chains(NetworkTopology& topology, const NamedSetting& setting) {
  if (setting.setting.radio_chains == RadioRegime::Enough) {
    std::map<int, int> attached;
    for (const auto& l : topology.links) {
      ++attached[l.parent];
      ++attached[l.child];
    }
    for (auto& s : topology.stations) s.radio_chains = std::max(1, attached[s.id]);
    return;
  }
  if (!setting.macro_chains) return;
  for (auto& s : topology.stations) s.radio_chains = s.kind == StationKind::Macro ? *setting.macro_chains : 1;
}

NetworkTopology for_setting(const NetworkTopology& topology, const NamedSetting& setting) {
  NetworkTopology out = topology;
  if (setting.setting.interference == InterferenceRegime::Minimal) out.interference_pairs.clear();
  assign_radio_chains(out, setting);
  return out;
}

}  // namespace backhaul

#include "support/fixtures.hpp"

#include "backhaul/generator.hpp"

namespace fixtures {

int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

NetworkTopology star(int children, int hops, int macro_chains, double phy) {
  NetworkTopology t;
  t.stations.push_back({0, StationKind::Macro, macro_chains});
  for (int i = 1; i <= children; ++i) {
    t.stations.push_back({i, StationKind::Small, 1});
    t.links.push_back(make_link(0, i, hops, phy));
  }
  return t;
}

NetworkTopology chain(double phy) {
  NetworkTopology t;
  t.stations = {{0, StationKind::Macro, 1}, {1, StationKind::Small, 2}, {2, StationKind::Small, 1}};
  t.links = {make_link(0, 1, 2, phy), make_link(1, 2, 3, phy)};
  return t;
}

NetworkTopology single_link(int hops, double phy) {
  NetworkTopology t;
  t.stations = {{0, StationKind::Macro, 1}, {1, StationKind::Small, 1}};
  t.links = {make_link(0, 1, hops, phy)};
  return t;
}

NetworkTopology seventeen_link_tree() {
  NetworkTopology t;
  t.stations.push_back({0, StationKind::Macro, 8});
  // child -> (parent, hops)
  const std::vector<std::pair<int, int>> shape{
      {0, 2}, {0, 3}, {0, 1}, {0, 2}, {0, 3}, {0, 2}, {0, 1}, {0, 3},  // 1..8
      {1, 2}, {1, 3}, {2, 2}, {4, 1}, {5, 2}, {9, 3}, {9, 2}, {11, 2}, {6, 3}};  // 9..17
  for (std::size_t k = 0; k < shape.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    t.stations.push_back({id, StationKind::Small, 1});
    t.links.push_back(make_link(shape[k].first, id, shape[k].second));
  }
  return t;
}

NetworkTopology random_small_topology(std::mt19937_64& rng, int max_links) {
  GeneratorConfig c;
  c.seed = rng();
  c.num_small_bs = uniform(rng, 1, max_links);
  c.macro_degree = uniform(rng, 1, c.num_small_bs);
  c.max_small_children = uniform(rng, 1, 3);
  c.interference_pair_budget = uniform(rng, 0, 4);
  auto t = generate(c);
  for (auto& s : t.stations) s.radio_chains = uniform(rng, 1, 3);
  return t;
}

lp::LinearProgram random_lp(std::mt19937_64& rng, int max_vars) {
  lp::LinearProgram p;
  const int n = uniform(rng, 1, max_vars);
  const int m = n >= 9 ? uniform(rng, 1, 2) : n >= 6 ? uniform(rng, 1, 3) : uniform(rng, 1, 5);
  for (int j = 0; j < n; ++j) {
    const double lower = uniform(rng, 0, 9) < 7 ? 0.0 : -uniform(rng, 1, 3);
    const double upper = uniform(rng, 0, 9) < 6 ? lp::kInfinity : lower + uniform(rng, 0, 6);
    p.add_variable("x" + std::to_string(j), uniform(rng, -3, 5), lower, upper);
  }
  for (int i = 0; i < m; ++i) {
    if (i > 0 && uniform(rng, 0, 9) == 0) {
      p.constraints.push_back(p.constraints.back());  // duplicate row
      continue;
    }
    std::vector<double> coeffs(static_cast<std::size_t>(n));
    for (auto& c : coeffs) c = uniform(rng, 0, 9) < 3 ? 0.0 : uniform(rng, -4, 4);
    const int r = uniform(rng, 0, 19);
    const auto rel = r < 14 ? lp::Relation::Le : r < 17 ? lp::Relation::Ge : lp::Relation::Eq;
    const double rhs = uniform(rng, 0, 4) == 0 ? 0.0 : uniform(rng, -3, 10);
    p.add_constraint(std::move(coeffs), rel, rhs);
  }
  return p;
}

}  // namespace fixtures

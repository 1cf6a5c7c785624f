#include "backhaul/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "backhaul/error.hpp"

namespace backhaul {

LinkPair make_link_pair(int a, int b) { return a < b ? LinkPair{a, b} : LinkPair{b, a}; }

bool NetworkTopology::interferes(int a, int b) const {
  return interference_pairs.count(make_link_pair(a, b)) != 0;
}

const BaseStation* NetworkTopology::find_station(int id) const {
  auto it = std::find_if(stations.begin(), stations.end(), [id](const BaseStation& s) { return s.id == id; });
  return it == stations.end() ? nullptr : &*it;
}

const LogicalLink* NetworkTopology::find_link(int id) const {
  auto it = std::find_if(links.begin(), links.end(), [id](const LogicalLink& l) { return l.id == id; });
  return it == links.end() ? nullptr : &*it;
}

double TrafficDemand::aggregate() const {
  return std::accumulate(per_bs.begin(), per_bs.end(), 0.0,
                         [](double acc, const auto& kv) { return acc + kv.second; });
}

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::NoMacro: return "NoMacro";
    case ViolationKind::DuplicateMacro: return "DuplicateMacro";
    case ViolationKind::DuplicateStationId: return "DuplicateStationId";
    case ViolationKind::UnknownStation: return "UnknownStation";
    case ViolationKind::LinkIdMismatch: return "LinkIdMismatch";
    case ViolationKind::InboundToMacro: return "InboundToMacro";
    case ViolationKind::NotATree: return "NotATree";
    case ViolationKind::Disconnected: return "Disconnected";
    case ViolationKind::InvalidRadioChains: return "InvalidRadioChains";
    case ViolationKind::InvalidLinkParameters: return "InvalidLinkParameters";
    case ViolationKind::SelfInterference: return "SelfInterference";
    case ViolationKind::UnknownLink: return "UnknownLink";
    case ViolationKind::NoSharedEndpoint: return "NoSharedEndpoint";
    case ViolationKind::TooManyPartnersAtBS: return "TooManyPartnersAtBS";
  }
  return "Unknown";
}

namespace {

bool in_unit_fraction(double p) { return p > 0.0 && p <= 1.0; }

std::string link_parameter_problem(const LogicalLink& link) {
  if (link.hop_count < 1) return "hop count must be at least 1";
  if (!(link.phy_rate_gbps > 0.0)) return "physical rate must be positive";
  if (!(link.capacity_gbps > 0.0)) return "capacity must be positive";
  if (!in_unit_fraction(link.p_first_max) || !in_unit_fraction(link.p_last_max))
    return "endpoint schedule fractions must lie in (0,1]";
  if (link.hop_count == 1 && (link.p_first_max != 1.0 || link.p_last_max != 1.0))
    return "single-hop link must have unit endpoint fractions";
  return {};
}

}  // namespace

std::vector<ModelViolation> validate_tree(const NetworkTopology& topology) {
  std::vector<ModelViolation> out;
  auto report = [&out](ViolationKind kind, int station, int link, std::string detail) {
    out.push_back(ModelViolation{kind, station, link, std::move(detail)});
  };

  std::set<int> ids;
  std::vector<int> macros;
  for (const auto& s : topology.stations) {
    if (!ids.insert(s.id).second)
      report(ViolationKind::DuplicateStationId, s.id, -1, "station id " + std::to_string(s.id) + " repeated");
    if (s.radio_chains < 1)
      report(ViolationKind::InvalidRadioChains, s.id, -1, "station " + std::to_string(s.id) + " has no radio chain");
    if (s.kind == StationKind::Macro) macros.push_back(s.id);
  }
  if (macros.empty()) report(ViolationKind::NoMacro, -1, -1, "topology has no macro-cell BS");
  for (std::size_t k = 1; k < macros.size(); ++k)
    report(ViolationKind::DuplicateMacro, macros[k], -1, "second macro-cell BS " + std::to_string(macros[k]));

  auto kind_of = [&topology](int id) -> std::optional<StationKind> {
    const BaseStation* s = topology.find_station(id);
    if (s == nullptr) return std::nullopt;
    return s->kind;
  };

  std::map<int, int> inbound_count;
  for (const auto& link : topology.links) {
    const auto parent_kind = kind_of(link.parent);
    const auto child_kind = kind_of(link.child);
    if (!parent_kind || !child_kind) {
      report(ViolationKind::UnknownStation, !parent_kind ? link.parent : link.child, link.id,
             "link " + std::to_string(link.id) + " references an unknown station");
      continue;
    }
    if (link.id != link.child)
      report(ViolationKind::LinkIdMismatch, link.child, link.id,
             "link " + std::to_string(link.id) + " must carry the id of its child " + std::to_string(link.child));
    if (*child_kind == StationKind::Macro)
      report(ViolationKind::InboundToMacro, link.child, link.id, "macro-cell BS cannot have an inbound link");
    if (link.parent == link.child)
      report(ViolationKind::NotATree, link.child, link.id, "self loop at " + std::to_string(link.child));
    if (auto problem = link_parameter_problem(link); !problem.empty())
      report(ViolationKind::InvalidLinkParameters, link.child, link.id,
             "link " + std::to_string(link.id) + ": " + problem);
    ++inbound_count[link.child];
  }

  for (const auto& s : topology.stations) {
    if (s.kind != StationKind::Small) continue;
    const int n = inbound_count.count(s.id) ? inbound_count[s.id] : 0;
    if (n > 1)
      report(ViolationKind::NotATree, s.id, -1,
             "BS " + std::to_string(s.id) + " has " + std::to_string(n) + " inbound links");
  }

  // Reachability from the macro; catches orphans and cycles among small cells.
  if (macros.size() == 1) {
    std::map<int, std::vector<int>> kids;
    for (const auto& link : topology.links) kids[link.parent].push_back(link.child);
    std::set<int> seen{macros.front()};
    std::vector<int> stack{macros.front()};
    while (!stack.empty()) {
      const int bs = stack.back();
      stack.pop_back();
      for (int c : kids[bs])
        if (seen.insert(c).second) stack.push_back(c);
    }
    for (const auto& s : topology.stations)
      if (s.kind == StationKind::Small && !seen.count(s.id))
        report(ViolationKind::Disconnected, s.id, -1,
               "BS " + std::to_string(s.id) + " is not reachable from the macro-cell BS");
  }
  return out;
}

std::vector<ModelViolation> validate_interference_model(const NetworkTopology& topology) {
  std::vector<ModelViolation> out;
  std::map<std::pair<int, int>, int> partners;  // (bs, link) -> partner count at bs

  for (const auto& [a, b] : topology.interference_pairs) {
    if (a == b) {
      out.push_back({ViolationKind::SelfInterference, -1, a, "link " + std::to_string(a) + " paired with itself"});
      continue;
    }
    const LogicalLink* la = topology.find_link(a);
    const LogicalLink* lb = topology.find_link(b);
    if (la == nullptr || lb == nullptr) {
      const int missing = la == nullptr ? a : b;
      out.push_back({ViolationKind::UnknownLink, -1, missing, "interference pair names unknown link " + std::to_string(missing)});
      continue;
    }
    std::optional<int> shared;
    for (int x : {la->parent, la->child})
      if (x == lb->parent || x == lb->child) shared = x;
    if (!shared) {
      std::ostringstream os;
      os << "links " << a << " and " << b << " share no BS";
      out.push_back({ViolationKind::NoSharedEndpoint, -1, a, os.str()});
      continue;
    }
    ++partners[{*shared, a}];
    ++partners[{*shared, b}];
  }

  for (const auto& [key, count] : partners) {
    if (count > 1) {
      std::ostringstream os;
      os << "link " << key.second << " has " << count << " interference partners at BS " << key.first;
      out.push_back({ViolationKind::TooManyPartnersAtBS, key.first, key.second, os.str()});
    }
  }
  return out;
}

Tree::Tree(NetworkTopology topology) : topology_(std::move(topology)) {
  if (auto violations = validate_tree(topology_); !violations.empty())
    throw Error(ErrorCode::InvalidTopology, "invalid topology: " + violations.front().detail,
                violations.front().station);

  for (std::size_t k = 0; k < topology_.stations.size(); ++k) {
    const auto& s = topology_.stations[k];
    station_index_[s.id] = k;
    children_[s.id];
    if (s.kind == StationKind::Macro) {
      macro_ = s.id;
      parent_[s.id] = -1;
    } else {
      small_cells_.push_back(s.id);
    }
  }
  std::sort(small_cells_.begin(), small_cells_.end());
  for (std::size_t k = 0; k < topology_.links.size(); ++k) {
    const auto& l = topology_.links[k];
    link_index_[l.id] = k;
    parent_[l.child] = l.parent;
    children_[l.parent].push_back(l.child);
  }
  for (auto& [bs, kids] : children_) std::sort(kids.begin(), kids.end());

  // Post-order accumulation of subtree sets.
  auto order = depth_first_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    auto& set = subtree_[*it];
    if (*it != macro_) set.insert(*it);
    for (int c : children_[*it]) set.insert(subtree_[c].begin(), subtree_[c].end());
  }
}

const BaseStation& Tree::station(int bs) const {
  auto it = station_index_.find(bs);
  if (it == station_index_.end()) throw Error(ErrorCode::UnknownBS, "unknown BS " + std::to_string(bs), bs);
  return topology_.stations[it->second];
}

const LogicalLink& Tree::link(int link_id) const {
  auto it = link_index_.find(link_id);
  if (it == link_index_.end())
    throw Error(ErrorCode::MissingLink, "unknown link " + std::to_string(link_id), link_id);
  return topology_.links[it->second];
}

int Tree::parent(int bs) const {
  auto it = parent_.find(bs);
  if (it == parent_.end()) throw Error(ErrorCode::UnknownBS, "unknown BS " + std::to_string(bs), bs);
  return it->second;
}

const std::vector<int>& Tree::children(int bs) const {
  auto it = children_.find(bs);
  if (it == children_.end()) throw Error(ErrorCode::UnknownBS, "unknown BS " + std::to_string(bs), bs);
  return it->second;
}

std::optional<int> Tree::inbound_link(int bs) const {
  if (parent(bs) < 0) return std::nullopt;
  return bs;
}

const std::set<int>& Tree::subtree(int bs) const {
  auto it = subtree_.find(bs);
  if (it == subtree_.end()) throw Error(ErrorCode::UnknownBS, "unknown BS " + std::to_string(bs), bs);
  return it->second;
}

std::set<int> Tree::attached_links(int bs) const {
  std::set<int> out(children(bs).begin(), children(bs).end());
  if (auto in = inbound_link(bs)) out.insert(*in);
  return out;
}

std::optional<int> Tree::shared_endpoint(int a, int b) const {
  const auto& la = link(a);
  const auto& lb = link(b);
  for (int x : {la.parent, la.child})
    if (x == lb.parent || x == lb.child) return x;
  return std::nullopt;
}

std::vector<int> Tree::depth_first_order() const {
  std::vector<int> order;
  std::vector<int> stack{macro_};
  while (!stack.empty()) {
    const int bs = stack.back();
    stack.pop_back();
    order.push_back(bs);
    const auto& kids = children_.at(bs);
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
  }
  return order;
}

std::set<int> subtree_bs_set(const NetworkTopology& topology, int bs_id) {
  if (topology.find_station(bs_id) == nullptr)
    throw Error(ErrorCode::UnknownBS, "unknown BS " + std::to_string(bs_id), bs_id);
  return Tree(topology).subtree(bs_id);
}

std::set<int> attached_links(const NetworkTopology& topology, int bs_id) {
  if (topology.find_station(bs_id) == nullptr)
    throw Error(ErrorCode::UnknownBS, "unknown BS " + std::to_string(bs_id), bs_id);
  return Tree(topology).attached_links(bs_id);
}

}  // namespace backhaul

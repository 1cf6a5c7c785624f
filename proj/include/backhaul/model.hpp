#pragma once

// Domain types for a tree-style relay-assisted mmWave backhaul network.
//
// Every small-cell BS B_i has exactly one inbound logical link, and that link
// carries the id of its child BS (link i points into B_i). Relays are not
// modelled as nodes; a logical link keeps only its hop count and the derived
// end-to-end profile (capacity and the endpoint schedule fractions).

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace backhaul {

enum class StationKind { Macro, Small };

struct BaseStation {
  int id = 0;
  StationKind kind = StationKind::Small;
  int radio_chains = 1;
};

struct LogicalLink {
  int id = 0;
  int parent = 0;
  int child = 0;
  int hop_count = 1;
  double phy_rate_gbps = 0.0;
  double capacity_gbps = 0.0;  // C_i
  double p_first_max = 1.0;    // P_i^f
  double p_last_max = 1.0;     // P_i^l
};

// Unordered pair of link ids, stored with first < second.
using LinkPair = std::pair<int, int>;

LinkPair make_link_pair(int a, int b);

struct NetworkTopology {
  std::vector<BaseStation> stations;
  std::vector<LogicalLink> links;
  std::set<LinkPair> interference_pairs;

  void add_interference(int a, int b) { interference_pairs.insert(make_link_pair(a, b)); }
  bool interferes(int a, int b) const;

  const BaseStation* find_station(int id) const;
  const LogicalLink* find_link(int id) const;
};

// Per-BS demand in Gbps; the aggregate D_M is always the sum of the entries.
struct TrafficDemand {
  std::map<int, double> per_bs;

  double aggregate() const;
};

enum class ViolationKind {
  // structural
  NoMacro,
  DuplicateMacro,
  DuplicateStationId,
  UnknownStation,
  LinkIdMismatch,
  InboundToMacro,
  NotATree,
  Disconnected,
  InvalidRadioChains,
  InvalidLinkParameters,
  // interference model
  SelfInterference,
  UnknownLink,
  NoSharedEndpoint,
  TooManyPartnersAtBS,
};

const char* to_string(ViolationKind kind);

struct ModelViolation {
  ViolationKind kind;
  int station = -1;  // offending BS, when there is one
  int link = -1;     // offending link, when there is one
  std::string detail;
};

// Empty iff the links form a spanning tree rooted at the unique macro BS and
// every station/link carries admissible parameters.
std::vector<ModelViolation> validate_tree(const NetworkTopology& topology);

// Empty iff every interference pair shares an endpoint BS and, at each BS,
// every attached link has at most one partner among the other links there.
std::vector<ModelViolation> validate_interference_model(const NetworkTopology& topology);

// Read-only index over a topology that passed validate_tree.
class Tree {
 public:
  // Keeps its own copy of the topology. Throws Error(InvalidTopology) when
  // validate_tree reports anything.
  explicit Tree(NetworkTopology topology);

  const NetworkTopology& topology() const { return topology_; }
  int macro() const { return macro_; }
  bool contains(int bs) const { return parent_.count(bs) != 0; }
  bool is_macro(int bs) const { return bs == macro_; }

  const BaseStation& station(int bs) const;
  const LogicalLink& link(int link_id) const;

  // Small-cell ids in ascending order.
  const std::vector<int>& small_cells() const { return small_cells_; }
  // Link ids in ascending order (equal to small_cells()).
  const std::vector<int>& link_ids() const { return small_cells_; }

  int parent(int bs) const;                     // -1 for the macro
  const std::vector<int>& children(int bs) const;  // ascending ids
  std::optional<int> inbound_link(int bs) const;

  // B_i plus every small-cell descendant. The macro maps to all small cells.
  const std::set<int>& subtree(int bs) const;
  // Inbound link (small cells only) plus every child link.
  std::set<int> attached_links(int bs) const;

  // BS at which two links meet, if any.
  std::optional<int> shared_endpoint(int a, int b) const;

  // Pre-order depth-first sequence starting at the macro.
  std::vector<int> depth_first_order() const;

 private:
  NetworkTopology topology_;
  int macro_ = -1;
  std::vector<int> small_cells_;
  std::map<int, int> parent_;
  std::map<int, std::vector<int>> children_;
  std::map<int, std::set<int>> subtree_;
  std::map<int, std::size_t> station_index_;
  std::map<int, std::size_t> link_index_;
};

// 𝓑_i for a small-cell BS. Throws Error(UnknownBS) / Error(InvalidTopology).
std::set<int> subtree_bs_set(const NetworkTopology& topology, int bs_id);

// 𝓛_i (small cell) or 𝓛_M (macro). Throws Error(UnknownBS) / Error(InvalidTopology).
std::set<int> attached_links(const NetworkTopology& topology, int bs_id);

}  // namespace backhaul

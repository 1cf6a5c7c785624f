#include "backhaul/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

#include "backhaul/error.hpp"
#include "backhaul/interval_set.hpp"

namespace backhaul {

namespace {

// Shortfall tolerated when the last few ticks of a request do not fit; far
// below the 1e-9 checking tolerance.
constexpr Tick kSlackTicks = 100;

struct Piece {
  int chain = 0;
  Segment segment;
};

struct LinkState {
  const LogicalLink* link = nullptr;
  Tick active = 0;  // p^f
  Tick pause = 0;   // p^f (1 - P^f) / P^f
  Tick child = 0;   // p^f P^l / P^f
  bool placed = false;
  IntervalSet active_times;
  std::vector<Piece> parent_pieces;
  std::vector<Segment> pause_pieces;  // in selection order
  IntervalSet pause_times;
  IntervalSet footprint;
  IntervalSet child_times;
};

class Builder {
 public:
  Builder(const Tree& tree, const std::map<int, double>& p_first) : tree_(tree) {
    for (int id : tree.link_ids()) {
      const auto& link = tree.link(id);
      auto it = p_first.find(id);
      if (it == p_first.end()) throw Error(ErrorCode::MissingLink, "no p_f for link " + std::to_string(id), id);
      double p = it->second;
      if (!std::isfinite(p) || p < -1e-9 || p > link.p_first_max + 1e-9)
        throw Error(ErrorCode::InconsistentInput,
                    "p_f of link " + std::to_string(id) + " outside [0, " + std::to_string(link.p_first_max) + "]",
                    id);
      if (link.hop_count > 1 && link.p_first_max + link.p_last_max > 1.0 + 1e-12)
        throw Error(ErrorCode::InconsistentInput,
                    "multi-hop link " + std::to_string(id) + " cannot keep its endpoints apart (P^f + P^l > 1)", id);
      p = std::clamp(p, 0.0, link.p_first_max);

      LinkState st;
      st.link = &link;
      st.active = to_ticks(p);
      if (link.hop_count > 1) {
        st.pause = to_ticks(p / link.p_first_max) - st.active;
        st.child = std::min(to_ticks(p * link.p_last_max / link.p_first_max), st.pause);
      }
      links_.emplace(id, std::move(st));
    }
    for (const auto& s : tree.topology().stations)
      busy_[s.id].assign(static_cast<std::size_t>(s.radio_chains), IntervalSet{});
  }

  Schedule run() {
    std::vector<int> stack{tree_.macro()};
    while (!stack.empty()) {
      const int bs = stack.back();
      stack.pop_back();
      for (int c : tree_.children(bs)) stack.push_back(c);
      process(bs);
    }
    return collect();
  }

 private:
  LinkState& state(int id) { return links_.at(id); }

  bool interferes(int a, int b) const { return tree_.topology().interferes(a, b); }

  IntervalSet busy_union(int bs) const {
    IntervalSet out;
    for (const auto& c : busy_.at(bs)) out.insert(c);
    return out;
  }

  [[noreturn]] void fail(int link_id, const std::string& what) const {
    throw Error(ErrorCode::PlacementFailure, "link " + std::to_string(link_id) + ": " + what, link_id);
  }

  // Fills the lowest-index chain with blank time first, in time order, then
  // spills onto the next chain without reusing times the link already holds.
  void place_active(int bs, LinkState& st, const IntervalSet& forbidden) {
    Tick need = st.active;
    auto& chains = busy_.at(bs);
    for (std::size_t k = 0; k < chains.size() && need > 0; ++k) {
      const IntervalSet avail = chains[k].complement().minus(forbidden).minus(st.active_times);
      for (const auto& seg : avail.take_cyclic(0, need)) {
        chains[k].insert(seg.start, seg.end);
        st.active_times.insert(seg.start, seg.end);
        st.parent_pieces.push_back({static_cast<int>(k), seg});
        need -= seg.length();
      }
    }
    if (need > kSlackTicks)
      fail(st.link->id, "active time short by " + std::to_string(to_fraction(need)) + " of the frame at BS " +
                            std::to_string(bs));
    st.active -= need;
  }

  // Pause time follows the link's first active piece; times in `preferred`
  // (other links' active periods) are used before blank ones.
  void place_pause(LinkState& st, const IntervalSet& allowed, const IntervalSet& preferred) {
    Tick need = st.pause;
    if (need == 0) return;
    const IntervalSet usable = allowed.minus(st.active_times);
    const Tick from = st.parent_pieces.empty() ? 0 : st.parent_pieces.front().segment.end % kFrameTicks;
    auto take = [&](const IntervalSet& pool) {
      for (const auto& seg : pool.minus(st.pause_times).take_cyclic(from, need)) {
        st.pause_pieces.push_back(seg);
        st.pause_times.insert(seg.start, seg.end);
        need -= seg.length();
      }
    };
    take(usable.intersect(preferred));
    if (need > 0) take(usable);
    if (need > kSlackTicks) fail(st.link->id, "pause time does not fit outside interfering footprints");
    st.pause -= need;
    st.child = std::min(st.child, st.pause);
  }

  void finalize(LinkState& st) {
    st.footprint = st.active_times;
    st.footprint.insert(st.pause_times);
    if (st.link->hop_count == 1) {
      st.child_times = st.active_times;
    } else {
      // Last-hop activity takes the tail of the pause sequence.
      Tick need = st.child;
      for (auto it = st.pause_pieces.rbegin(); it != st.pause_pieces.rend() && need > 0; ++it) {
        const Tick take = std::min(need, it->length());
        st.child_times.insert(it->end - take, it->end);
        need -= take;
      }
    }
    st.placed = true;
  }

  void place_simple(int bs, LinkState& st, const IntervalSet& forbidden, const IntervalSet& preferred) {
    place_active(bs, st, forbidden);
    place_pause(st, IntervalSet::full().minus(forbidden), preferred);
    finalize(st);
  }

  void process(int bs) {
    std::vector<int> pending;
    for (int c : tree_.children(bs)) {
      auto& st = state(c);
      if (st.active == 0)
        finalize(st);
      else
        pending.push_back(c);
    }
    auto take = [&pending](int id) { pending.erase(std::find(pending.begin(), pending.end(), id)); };

    if (auto in = tree_.inbound_link(bs)) {
      auto& inbound = state(*in);
      if (!inbound.placed) throw std::logic_error("inbound link scheduled after its child BS");
      auto& first_chain = busy_.at(bs).front();
      if (first_chain.overlaps(inbound.child_times)) throw std::logic_error("first radio chain not empty");
      first_chain.insert(inbound.child_times);

      auto partner = std::find_if(pending.begin(), pending.end(), [&](int c) { return interferes(*in, c); });
      if (partner != pending.end()) {
        const int id = *partner;
        auto& st = state(id);
        place_simple(bs, st, inbound.footprint, busy_union(bs));
        const bool spilled = std::any_of(st.parent_pieces.begin(), st.parent_pieces.end(),
                                         [](const Piece& p) { return p.chain > 0; });
        if (spilled)
          deviations_.push_back("link " + std::to_string(id) + " interferes with inbound link " +
                                std::to_string(*in) + " and spilled past the first radio chain at BS " +
                                std::to_string(bs));
        take(id);
      }
    }

    // Links with no interfering sibling among the pending ones.
    const std::vector<int> snapshot = pending;
    for (int id : snapshot) {
      const bool lone = std::none_of(pending.begin(), pending.end(), [&](int o) { return o != id && interferes(id, o); });
      if (!lone) continue;
      place_simple(bs, state(id), IntervalSet{}, IntervalSet{});
      take(id);
    }

    // Remaining links come in interfering pairs.
    while (!pending.empty()) {
      const int a = pending.front();
      auto it = std::find_if(pending.begin() + 1, pending.end(), [&](int o) { return interferes(a, o); });
      if (it == pending.end()) throw std::logic_error("unpaired interfering link");
      const int b = *it;
      auto& sa = state(a);
      auto& sb = state(b);
      place_active(bs, sa, IntervalSet{});
      place_active(bs, sb, sa.active_times);
      const IntervalSet others = busy_union(bs);
      place_pause(sa, IntervalSet::full().minus(sb.active_times), others);
      IntervalSet allowed_b = IntervalSet::full().minus(sa.active_times);
      allowed_b.erase(sa.pause_times);
      place_pause(sb, allowed_b, others);
      finalize(sa);
      finalize(sb);
      take(a);
      take(b);
    }
  }

  Schedule collect() const {
    Schedule out;
    for (const auto& [id, st] : links_) {
      LinkSchedule ls;
      ls.link_id = id;
      for (const auto& seg : st.active_times.segments())
        ls.footprint.push_back({to_fraction(seg.start), to_fraction(seg.end), IntervalKind::Active});
      const IntervalSet pauses = st.footprint.minus(st.active_times);
      for (const auto& seg : pauses.segments())
        ls.footprint.push_back({to_fraction(seg.start), to_fraction(seg.end), IntervalKind::Pause});
      std::sort(ls.footprint.begin(), ls.footprint.end(),
                [](const TimeInterval& x, const TimeInterval& y) { return x.start < y.start; });

      // Merge contiguous pieces on the same chain.
      std::vector<Piece> pieces = st.parent_pieces;
      std::sort(pieces.begin(), pieces.end(), [](const Piece& x, const Piece& y) {
        return std::tie(x.segment.start, x.chain) < std::tie(y.segment.start, y.chain);
      });
      std::vector<Piece> merged;
      for (const auto& p : pieces) {
        if (!merged.empty() && merged.back().chain == p.chain && merged.back().segment.end == p.segment.start)
          merged.back().segment.end = p.segment.end;
        else
          merged.push_back(p);
      }
      for (const auto& p : merged)
        ls.parent_side.push_back({p.chain, to_fraction(p.segment.start), to_fraction(p.segment.end)});
      for (const auto& seg : st.child_times.segments())
        ls.child_side.push_back({0, to_fraction(seg.start), to_fraction(seg.end)});
      out.per_link.emplace(id, std::move(ls));
    }
    for (const auto& [bs, chains] : busy_) {
      for (std::size_t k = 0; k < chains.size(); ++k) {
        if (chains[k].empty()) continue;
        auto& list = out.per_bs_chains[{bs, static_cast<int>(k)}];
        for (const auto& seg : chains[k].segments()) list.push_back({to_fraction(seg.start), to_fraction(seg.end)});
      }
    }
    out.deviations = deviations_;
    return out;
  }

  const Tree& tree_;
  std::map<int, LinkState> links_;
  std::map<int, std::vector<IntervalSet>> busy_;
  std::vector<std::string> deviations_;
};

}  // namespace

Schedule schedule(const NetworkTopology& topology, const std::map<int, double>& p_first) {
  const Tree tree(topology);
  if (auto v = validate_interference_model(topology); !v.empty())
    throw Error(ErrorCode::InvalidTopology, "interference model violated: " + v.front().detail);
  return Builder(tree, p_first).run();
}

std::map<int, double> achieved_rates(const NetworkTopology& topology, const Schedule& sched) {
  std::map<int, double> out;
  auto total = [](const std::vector<ChainInterval>& v) {
    double t = 0.0;
    for (const auto& iv : v) t += iv.end - iv.start;
    return t;
  };
  for (const auto& link : topology.links) {
    auto it = sched.per_link.find(link.id);
    if (it == sched.per_link.end()) {
      out[link.id] = 0.0;
      continue;
    }
    const double first = total(it->second.parent_side) / link.p_first_max;
    const double last = total(it->second.child_side) / link.p_last_max;
    out[link.id] = std::max(0.0, std::min(first, last)) * link.capacity_gbps;
  }
  return out;
}

}  // namespace backhaul

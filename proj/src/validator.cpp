#include "backhaul/validator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "backhaul/error.hpp"

namespace backhaul {

namespace {

using Span = std::pair<double, double>;

// Sorted, merged union of spans.
std::vector<Span> normalize(std::vector<Span> spans) {
  std::sort(spans.begin(), spans.end());
  std::vector<Span> out;
  for (const auto& s : spans) {
    if (!out.empty() && s.first <= out.back().second)
      out.back().second = std::max(out.back().second, s.second);
    else
      out.push_back(s);
  }
  return out;
}

double measure(const std::vector<Span>& merged) {
  double total = 0.0;
  for (const auto& [a, b] : merged) total += b - a;
  return total;
}

double overlap(const std::vector<Span>& x, const std::vector<Span>& y) {
  double total = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < x.size() && j < y.size()) {
    const double lo = std::max(x[i].first, y[j].first);
    const double hi = std::min(x[i].second, y[j].second);
    if (hi > lo) total += hi - lo;
    if (x[i].second < y[j].second)
      ++i;
    else
      ++j;
  }
  return total;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

struct Tagged {
  Span span;
  int link = 0;
};

class Checker {
 public:
  Checker(const NetworkTopology& topology, const std::map<int, double>& p_first, const TrafficDemand& demands,
          const Schedule& sched)
      : topo_(topology), p_first_(p_first), demands_(demands), sched_(sched) {}

  ValidationReport run() {
    auto tree_issues = validate_tree(topo_);
    auto model_issues = tree_issues.empty() ? validate_interference_model(topo_) : std::vector<ModelViolation>{};
    for (const auto& v : tree_issues) add(ScheduleViolationKind::InvalidInput, "topology: " + v.detail);
    for (const auto& v : model_issues) add(ScheduleViolationKind::InvalidInput, "interference model: " + v.detail);
    if (!tree_issues.empty()) return std::move(report_);
    const Tree tree(topo_);

    for (const auto& [id, _] : sched_.per_link)
      if (!topo_.find_link(id)) add(ScheduleViolationKind::FootprintMismatch, "schedule for unknown link " + std::to_string(id));

    for (int id : tree.link_ids()) check_link(tree.link(id));
    check_chains();
    check_interference();
    check_capacity(tree);
    return std::move(report_);
  }

 private:
  void add(ScheduleViolationKind kind, std::string detail) { report_.violations.push_back({kind, std::move(detail)}); }

  bool well_formed(double start, double end, const std::string& where) {
    const bool ok = std::isfinite(start) && std::isfinite(end) && start >= -kIntervalTolerance &&
                    end <= 1.0 + kIntervalTolerance && start < end;
    if (!ok) add(ScheduleViolationKind::MalformedInterval, where + " [" + fmt(start) + ", " + fmt(end) + ")");
    return ok;
  }

  bool chain_ok(int bs, int chain, const std::string& where) {
    const auto* st = topo_.find_station(bs);
    if (st && chain >= 0 && chain < st->radio_chains) return true;
    add(ScheduleViolationKind::InvalidChain, where + " uses chain " + std::to_string(chain) + " at BS " +
                                                 std::to_string(bs));
    return false;
  }

  // Collects a side's intervals, registering each under its (BS, chain).
  std::vector<Span> side(const LogicalLink& link, const std::vector<ChainInterval>& ivs, int bs, const char* name) {
    std::vector<Span> spans;
    std::map<int, std::vector<Span>> by_chain;
    const std::string where = "link " + std::to_string(link.id) + " " + name;
    for (const auto& iv : ivs) {
      if (!well_formed(iv.start, iv.end, where)) continue;
      spans.emplace_back(iv.start, iv.end);
      if (!chain_ok(bs, iv.chain, where)) continue;
      chains_[{bs, iv.chain}].push_back({{iv.start, iv.end}, link.id});
      by_chain[iv.chain].emplace_back(iv.start, iv.end);
    }
    // One endpoint cannot occupy two chains at the same instant.
    std::vector<std::vector<Span>> merged;
    for (auto& [_, v] : by_chain) merged.push_back(normalize(v));
    for (std::size_t a = 0; a < merged.size(); ++a)
      for (std::size_t b = a + 1; b < merged.size(); ++b)
        if (overlap(merged[a], merged[b]) > kIntervalTolerance)
          add(ScheduleViolationKind::ChainOverlap, where + " is active on two chains at once at BS " +
                                                       std::to_string(bs));
    return spans;
  }

  void check_link(const LogicalLink& link) {
    const std::string name = "link " + std::to_string(link.id);
    auto pit = p_first_.find(link.id);
    const bool have_p = pit != p_first_.end() && std::isfinite(pit->second);
    if (!have_p) add(ScheduleViolationKind::InvalidInput, name + " has no p_f value");
    const double p = have_p ? pit->second : 0.0;

    auto sit = sched_.per_link.find(link.id);
    if (sit == sched_.per_link.end()) {
      if (p > kIntervalTolerance) add(ScheduleViolationKind::FootprintMismatch, name + " is missing from the schedule");
      report_.realized_rates[link.id] = 0.0;
      return;
    }
    const auto& ls = sit->second;

    std::vector<Span> fp;
    for (const auto& iv : ls.footprint)
      if (well_formed(iv.start, iv.end, name + " footprint")) fp.emplace_back(iv.start, iv.end);
    fp = normalize(fp);
    footprints_[link.id] = fp;

    const auto first = normalize(side(link, ls.parent_side, link.parent, "parent side"));
    const auto last = normalize(side(link, ls.child_side, link.child, "child side"));
    const double first_len = measure(first);
    const double last_len = measure(last);

    const double expected_fp = p / link.p_first_max;
    if (std::abs(measure(fp) - expected_fp) > kIntervalTolerance)
      add(ScheduleViolationKind::FootprintMismatch,
          name + " footprint length " + fmt(measure(fp)) + " != " + fmt(expected_fp));
    if (std::abs(first_len - p) > kIntervalTolerance)
      add(ScheduleViolationKind::FootprintMismatch, name + " parent-side active " + fmt(first_len) + " != " + fmt(p));
    const double expected_last = p * link.p_last_max / link.p_first_max;
    if (std::abs(last_len - expected_last) > kIntervalTolerance)
      add(ScheduleViolationKind::RatioMismatch,
          name + " child-side active " + fmt(last_len) + " != " + fmt(expected_last));

    const double outside = (first_len - overlap(first, fp)) + (last_len - overlap(last, fp));
    if (outside > kIntervalTolerance)
      add(ScheduleViolationKind::ActiveOutsideFootprint, name + " has " + fmt(outside) + " active time outside its footprint");

    const double common = overlap(first, last);
    if (link.hop_count > 1) {
      if (common > kIntervalTolerance)
        add(ScheduleViolationKind::EndpointOverlap, name + " first and last hops overlap by " + fmt(common));
    } else if (first_len + last_len - 2.0 * common > kIntervalTolerance) {
      add(ScheduleViolationKind::EndpointOverlap, name + " is single-hop but its two sides differ");
    }

    const double rate = std::max(0.0, std::min(first_len / link.p_first_max, last_len / link.p_last_max)) *
                        link.capacity_gbps;
    report_.realized_rates[link.id] = rate;
  }

  void check_chains() {
    auto sweep = [this](std::vector<Tagged> items, const std::string& where) {
      std::sort(items.begin(), items.end(), [](const Tagged& a, const Tagged& b) { return a.span < b.span; });
      for (std::size_t i = 0; i < items.size(); ++i) {
        for (std::size_t j = i + 1; j < items.size() && items[j].span.first < items[i].span.second; ++j) {
          const double amount = std::min(items[i].span.second, items[j].span.second) - items[j].span.first;
          if (amount <= kIntervalTolerance) continue;
          add(ScheduleViolationKind::ChainOverlap, where + ": links " + std::to_string(items[i].link) + " and " +
                                                       std::to_string(items[j].link) + " overlap by " + fmt(amount));
        }
      }
    };
    for (const auto& [key, items] : chains_)
      sweep(items, "chain " + std::to_string(key.second) + " at BS " + std::to_string(key.first));

    for (const auto& [key, ivs] : sched_.per_bs_chains) {
      std::vector<Tagged> items;
      const std::string where = "listed chain " + std::to_string(key.second) + " at BS " + std::to_string(key.first);
      for (const auto& iv : ivs)
        if (well_formed(iv.start, iv.end, where)) items.push_back({{iv.start, iv.end}, -1});
      sweep(items, where);
    }
  }

  void check_interference() {
    for (const auto& [a, b] : topo_.interference_pairs) {
      auto fa = footprints_.find(a);
      auto fb = footprints_.find(b);
      if (fa == footprints_.end() || fb == footprints_.end()) continue;
      const double amount = overlap(fa->second, fb->second);
      if (amount > kIntervalTolerance)
        add(ScheduleViolationKind::InterferenceOverlap, "links {" + std::to_string(a) + "," + std::to_string(b) +
                                                            "} footprints overlap by " + fmt(amount));
    }
  }

  void check_capacity(const Tree& tree) {
    for (const auto& [bs, d] : demands_.per_bs)
      if (!std::isfinite(d) || d < 0.0) add(ScheduleViolationKind::InvalidInput, "demand of BS " + std::to_string(bs) + " is " + fmt(d));
    double d_b = tree.link_ids().empty() ? 0.0 : INFINITY;
    for (int id : tree.link_ids()) {
      double load = 0.0;
      for (int j : tree.subtree(id)) {
        auto it = demands_.per_bs.find(j);
        if (it != demands_.per_bs.end() && std::isfinite(it->second)) load += it->second;
      }
      const double rate = report_.realized_rates[id];
      if (rate < load - kRateTolerance)
        add(ScheduleViolationKind::CapacityShortfall,
            "link " + std::to_string(id) + " carries " + fmt(rate) + " Gbps < load " + fmt(load));
      d_b = std::min(d_b, rate / static_cast<double>(tree.subtree(id).size()));
    }
    report_.realized_d_b = d_b;
  }

  const NetworkTopology& topo_;
  const std::map<int, double>& p_first_;
  const TrafficDemand& demands_;
  const Schedule& sched_;
  ValidationReport report_;
  std::map<std::pair<int, int>, std::vector<Tagged>> chains_;
  std::map<int, std::vector<Span>> footprints_;
};

}  // namespace

const char* to_string(ScheduleViolationKind kind) {
  switch (kind) {
    case ScheduleViolationKind::ChainOverlap: return "ChainOverlap";
    case ScheduleViolationKind::InterferenceOverlap: return "InterferenceOverlap";
    case ScheduleViolationKind::FootprintMismatch: return "FootprintMismatch";
    case ScheduleViolationKind::ActiveOutsideFootprint: return "ActiveOutsideFootprint";
    case ScheduleViolationKind::RatioMismatch: return "RatioMismatch";
    case ScheduleViolationKind::EndpointOverlap: return "EndpointOverlap";
    case ScheduleViolationKind::CapacityShortfall: return "CapacityShortfall";
    case ScheduleViolationKind::InvalidChain: return "InvalidChain";
    case ScheduleViolationKind::MalformedInterval: return "MalformedInterval";
    case ScheduleViolationKind::InvalidInput: return "InvalidInput";
  }
  return "?";
}

std::size_t ValidationReport::count(ScheduleViolationKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(violations.begin(), violations.end(), [kind](const ScheduleViolation& v) { return v.kind == kind; }));
}

ValidationReport validate_schedule(const NetworkTopology& topology, const std::map<int, double>& p_first,
                                   const TrafficDemand& demands, const Schedule& sched) {
  try {
    return Checker(topology, p_first, demands, sched).run();
  } catch (const std::exception& e) {
    ValidationReport report;
    report.violations.push_back({ScheduleViolationKind::InvalidInput, e.what()});
    return report;
  }
}

double jain_index(const TrafficDemand& demands) {
  if (demands.per_bs.empty()) throw Error(ErrorCode::InvalidArgument, "jain index of an empty demand vector");
  double sum = 0.0;
  double squares = 0.0;
  for (const auto& [bs, d] : demands.per_bs) {
    if (!std::isfinite(d) || d < 0.0)
      throw Error(ErrorCode::InvalidArgument, "negative demand at BS " + std::to_string(bs), bs);
    sum += d;
    squares += d * d;
  }
  if (squares == 0.0) throw Error(ErrorCode::AllZeroDemands, "every demand is zero");
  const double first = demands.per_bs.begin()->second;
  if (std::all_of(demands.per_bs.begin(), demands.per_bs.end(), [first](const auto& e) { return e.second == first; }))
    return 1.0;
  return sum * sum / (static_cast<double>(demands.per_bs.size()) * squares);
}

}  // namespace backhaul

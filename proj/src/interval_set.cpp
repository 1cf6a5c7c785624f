#include "backhaul/interval_set.hpp"

#include <algorithm>
#include <cmath>

namespace backhaul {

Tick to_ticks(double fraction) {
  const double scaled = std::floor(fraction * static_cast<double>(kFrameTicks));
  return std::clamp(static_cast<Tick>(scaled), Tick{0}, kFrameTicks);
}

double to_fraction(Tick ticks) { return static_cast<double>(ticks) / static_cast<double>(kFrameTicks); }

IntervalSet IntervalSet::full() {
  IntervalSet s;
  s.segments_.push_back({0, kFrameTicks});
  return s;
}

void IntervalSet::insert(Tick start, Tick end) {
  if (start >= end) return;
  std::vector<Segment> out;
  out.reserve(segments_.size() + 1);
  Segment add{start, end};
  bool placed = false;
  for (const auto& s : segments_) {
    if (s.end < add.start) {
      out.push_back(s);
    } else if (add.end < s.start) {
      if (!placed) {
        out.push_back(add);
        placed = true;
      }
      out.push_back(s);
    } else {
      add.start = std::min(add.start, s.start);
      add.end = std::max(add.end, s.end);
    }
  }
  if (!placed) out.push_back(add);
  segments_ = std::move(out);
}

void IntervalSet::insert(const IntervalSet& other) {
  for (const auto& s : other.segments_) insert(s.start, s.end);
}

void IntervalSet::erase(const IntervalSet& other) { *this = minus(other); }

IntervalSet IntervalSet::intersect(const IntervalSet& other) const {
  IntervalSet out;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < segments_.size() && j < other.segments_.size()) {
    const auto& a = segments_[i];
    const auto& b = other.segments_[j];
    const Tick lo = std::max(a.start, b.start);
    const Tick hi = std::min(a.end, b.end);
    if (lo < hi) out.segments_.push_back({lo, hi});
    if (a.end < b.end)
      ++i;
    else
      ++j;
  }
  return out;
}

IntervalSet IntervalSet::complement() const {
  IntervalSet out;
  Tick cursor = 0;
  for (const auto& s : segments_) {
    if (s.start > cursor) out.segments_.push_back({cursor, s.start});
    cursor = std::max(cursor, s.end);
  }
  if (cursor < kFrameTicks) out.segments_.push_back({cursor, kFrameTicks});
  return out;
}

IntervalSet IntervalSet::minus(const IntervalSet& other) const { return intersect(other.complement()); }

Tick IntervalSet::measure() const {
  Tick total = 0;
  for (const auto& s : segments_) total += s.length();
  return total;
}

std::vector<Segment> IntervalSet::take_cyclic(Tick from, Tick amount) const {
  std::vector<Segment> out;
  if (amount <= 0 || segments_.empty()) return out;
  from = std::clamp(from, Tick{0}, kFrameTicks);
  // First pass: [from, frame end); second pass: [0, from).
  for (int pass = 0; pass < 2 && amount > 0; ++pass) {
    const Tick lo = pass == 0 ? from : 0;
    const Tick hi = pass == 0 ? kFrameTicks : from;
    for (const auto& s : segments_) {
      const Tick a = std::max(s.start, lo);
      const Tick b = std::min(s.end, hi);
      if (a >= b) continue;
      const Tick take = std::min(b - a, amount);
      out.push_back({a, a + take});
      amount -= take;
      if (amount == 0) break;
    }
  }
  return out;
}

}  // namespace backhaul

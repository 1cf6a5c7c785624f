#pragma once

// Sets of half-open intervals on a cyclic frame measured in integer ticks.

#include <cstdint>
#include <vector>

namespace backhaul {

using Tick = std::int64_t;

// One frame is [0, kFrameTicks); a tick is 1e-12 of the frame.
inline constexpr Tick kFrameTicks = 1'000'000'000'000;

// Largest whole number of ticks not exceeding `fraction` of the frame.
Tick to_ticks(double fraction);
double to_fraction(Tick ticks);

struct Segment {
  Tick start = 0;
  Tick end = 0;
  Tick length() const { return end - start; }
  friend bool operator==(const Segment&, const Segment&) = default;
};

class IntervalSet {
 public:
  IntervalSet() = default;
  static IntervalSet full();

  void insert(Tick start, Tick end);
  void insert(const IntervalSet& other);
  void erase(const IntervalSet& other);

  IntervalSet intersect(const IntervalSet& other) const;
  IntervalSet minus(const IntervalSet& other) const;
  IntervalSet complement() const;

  bool empty() const { return segments_.empty(); }
  Tick measure() const;
  bool overlaps(const IntervalSet& other) const { return intersect(other).measure() > 0; }

  // Sorted, disjoint, non-adjacent.
  const std::vector<Segment>& segments() const { return segments_; }

  // Walks the frame cyclically from `from`, collecting up to `amount` ticks of
  // this set. Returned pieces are in walk order (a piece never wraps).
  std::vector<Segment> take_cyclic(Tick from, Tick amount) const;

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  std::vector<Segment> segments_;
};

}  // namespace backhaul

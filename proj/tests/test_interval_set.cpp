#include <doctest.h>

#include <random>
#include <vector>

#include "backhaul/interval_set.hpp"

using namespace backhaul;

namespace {

constexpr Tick kUniverse = 120;

// Membership bitmap over [0, kUniverse).
std::vector<bool> bits(const IntervalSet& s) {
  std::vector<bool> out(kUniverse, false);
  for (const auto& seg : s.segments())
    for (Tick t = seg.start; t < seg.end && t < kUniverse; ++t) out[static_cast<std::size_t>(t)] = true;
  return out;
}

IntervalSet random_set(std::mt19937_64& rng, std::vector<bool>& mirror) {
  IntervalSet s;
  mirror.assign(kUniverse, false);
  const int n = static_cast<int>(rng() % 6);
  for (int k = 0; k < n; ++k) {
    const Tick a = static_cast<Tick>(rng() % kUniverse);
    const Tick b = static_cast<Tick>(rng() % kUniverse);
    s.insert(std::min(a, b), std::max(a, b));
    for (Tick t = std::min(a, b); t < std::max(a, b); ++t) mirror[static_cast<std::size_t>(t)] = true;
  }
  return s;
}

bool canonical(const IntervalSet& s) {
  const auto& segs = s.segments();
  for (std::size_t i = 0; i < segs.size(); ++i) {
    if (segs[i].start >= segs[i].end) return false;
    if (i > 0 && segs[i - 1].end >= segs[i].start) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("tick conversion") {
  CHECK(to_ticks(0.0) == 0);
  CHECK(to_ticks(1.0) == kFrameTicks);
  CHECK(to_ticks(0.5) == kFrameTicks / 2);
  CHECK(to_ticks(-0.1) == 0);
  CHECK(to_ticks(1.5) == kFrameTicks);
  CHECK(to_fraction(kFrameTicks / 4) == 0.25);
  CHECK(to_ticks(0.3) <= 300'000'000'000);
  CHECK(to_ticks(0.3) >= 299'999'999'999);
}

TEST_CASE("insert merges overlapping and adjacent pieces") {
  IntervalSet s;
  s.insert(10, 20);
  s.insert(30, 40);
  CHECK(s.segments().size() == 2);
  s.insert(20, 30);
  REQUIRE(s.segments().size() == 1);
  CHECK(s.segments()[0] == Segment{10, 40});
  s.insert(5, 5);
  CHECK(s.measure() == 30);
  s.insert(0, 12);
  CHECK(s.segments()[0] == Segment{0, 40});
}

TEST_CASE("complement and full frame") {
  IntervalSet s;
  CHECK(s.complement() == IntervalSet::full());
  CHECK(IntervalSet::full().complement().empty());
  s.insert(0, 10);
  s.insert(kFrameTicks - 10, kFrameTicks);
  const auto c = s.complement();
  REQUIRE(c.segments().size() == 1);
  CHECK(c.segments()[0] == Segment{10, kFrameTicks - 10});
}

TEST_CASE("cyclic take wraps past the frame end") {
  IntervalSet s;
  s.insert(0, 100);
  s.insert(kFrameTicks - 50, kFrameTicks);
  const auto pieces = s.take_cyclic(kFrameTicks - 30, 60);
  REQUIRE(pieces.size() == 2);
  CHECK(pieces[0] == Segment{kFrameTicks - 30, kFrameTicks});
  CHECK(pieces[1] == Segment{0, 30});

  // Asking for more than the set holds returns everything once.
  Tick total = 0;
  for (const auto& p : s.take_cyclic(40, 1000)) total += p.length();
  CHECK(total == 150);
  CHECK(s.take_cyclic(0, 0).empty());
  CHECK(IntervalSet{}.take_cyclic(0, 10).empty());
}

TEST_CASE("set algebra matches a bitmap") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<bool> ma, mb;
    const auto a = random_set(rng, ma);
    const auto b = random_set(rng, mb);
    CAPTURE(trial);
    REQUIRE(canonical(a));
    CHECK(bits(a) == ma);

    std::vector<bool> inter(kUniverse), diff(kUniverse), uni(kUniverse);
    Tick n_inter = 0;
    for (std::size_t t = 0; t < kUniverse; ++t) {
      inter[t] = ma[t] && mb[t];
      diff[t] = ma[t] && !mb[t];
      uni[t] = ma[t] || mb[t];
      n_inter += inter[t] ? 1 : 0;
    }
    const auto i = a.intersect(b);
    const auto d = a.minus(b);
    auto u = a;
    u.insert(b);
    auto e = a;
    e.erase(b);
    CHECK(canonical(i));
    CHECK(canonical(d));
    CHECK(canonical(u));
    CHECK(bits(i) == inter);
    CHECK(bits(d) == diff);
    CHECK(bits(u) == uni);
    CHECK(e == d);
    CHECK(a.overlaps(b) == (n_inter > 0));
    CHECK(a.complement().measure() == kFrameTicks - a.measure());
    CHECK(a.complement().intersect(a).empty());

    const Tick from = static_cast<Tick>(rng() % kUniverse);
    const Tick amount = static_cast<Tick>(rng() % 80);
    Tick taken = 0;
    IntervalSet collected;
    for (const auto& p : a.take_cyclic(from, amount)) {
      CHECK(p.start < p.end);
      taken += p.length();
      collected.insert(p.start, p.end);
    }
    CHECK(taken == std::min(amount, a.measure()));
    CHECK(collected.measure() == taken);
    CHECK(collected.minus(a).empty());
  }
}

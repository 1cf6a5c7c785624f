#include <doctest.h>

#include "backhaul/capacity.hpp"
#include "backhaul/error.hpp"

using namespace backhaul;

TEST_CASE("physical rate") {
  CHECK(physical_rate(4.16, 6912, 8) == doctest::Approx(13.292307692307692).epsilon(1e-14));
  CHECK(physical_rate(4.16, 6912, 8) >= 13.29);
  CHECK(physical_rate(4.16, 6912, 8) <= 13.30);
  CHECK(physical_rate(1.0, 1000, 1) == doctest::Approx(1.0));
  CHECK(physical_rate(2.08, 6912, 8) == doctest::Approx(6912.0 * 8.0 / 2.08 / 1000.0));
  CHECK(kDefaultPhyRateGbps == physical_rate(kSlotMicros, kSubcarriers, kBitsPerSymbol));

  CHECK_THROWS_AS(physical_rate(0.0, 6912, 8), Error);
  CHECK_THROWS_AS(physical_rate(4.16, -1, 8), Error);
  CHECK_THROWS_AS(physical_rate(4.16, 6912, 0), Error);
}

TEST_CASE("link profiles") {
  const auto one = link_profile(1, 13.3);
  CHECK(one.capacity_gbps == doctest::Approx(13.3));
  CHECK(one.p_first_max == 1.0);
  CHECK(one.p_last_max == 1.0);

  const auto three = link_profile(3, 13.3);
  CHECK(three.capacity_gbps == doctest::Approx(6.65));
  CHECK(three.p_first_max == 0.5);
  CHECK(three.p_last_max == 0.5);

  const auto two = link_profile(2, 10.0);
  CHECK(two.capacity_gbps == doctest::Approx(5.0));

  // Half the default rate exactly.
  CHECK(link_profile(2, kDefaultPhyRateGbps).capacity_gbps == kDefaultPhyRateGbps / 2.0);

  for (int hops = 1; hops <= 6; ++hops) {
    const auto p = link_profile(hops, 13.3);
    CHECK(p.capacity_gbps == doctest::Approx(p.p_first_max * 13.3));
    CHECK(p.capacity_gbps == doctest::Approx(p.p_last_max * 13.3));
    CHECK(p.capacity_gbps <= one.capacity_gbps);
  }

  try {
    link_profile(0, 13.3);
    FAIL("expected InvalidHopCount");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidHopCount);
  }
  CHECK_THROWS_AS(link_profile(2, 0.0), Error);
}

TEST_CASE("make_link fills the profile") {
  const auto l = make_link(3, 7, 2, 13.3);
  CHECK(l.id == 7);
  CHECK(l.parent == 3);
  CHECK(l.child == 7);
  CHECK(l.hop_count == 2);
  CHECK(l.capacity_gbps == doctest::Approx(6.65));
  CHECK(l.p_first_max == 0.5);
}

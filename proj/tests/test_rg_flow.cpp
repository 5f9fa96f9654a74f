#include <doctest.h>

#include <cmath>

#include "test_util.hpp"
#include "xxzqrg/error.hpp"
#include "xxzqrg/rg_flow.hpp"

using namespace xxzqrg;

TEST_CASE("q of Delta") {
  CHECK(q_of_delta(1.0) == -2.0);
  CHECK(std::abs(q_of_delta(0.0) + 1.4142135623730951) < 1e-15);
  CHECK(std::abs(q_of_delta(2.0) + 2.7320508075688772) < 1e-15);
  CHECK_THROWS_AS(q_of_delta(-0.5), InvalidArgument);
}

TEST_CASE("single RG steps") {
  const auto iso = rg_step({1.0, 1.0});
  CHECK(iso.anisotropy == 1.0);
  CHECK(std::abs(iso.exchange - 4.0 / 9.0) < 1e-16);

  const auto xy = rg_step({1.0, 0.0});
  CHECK(xy.anisotropy == 0.0);
  CHECK(std::abs(xy.exchange - 0.5) < 1e-15);

  CHECK(delta_map(1.0) == 1.0);
}

TEST_CASE("map derivatives") {
  CHECK(std::abs(d_delta_prime(1.0) - 5.0 / 3.0) < 1e-15);
  CHECK(std::abs(d_delta_prime(0.0) - 0.5) < 1e-15);
  CHECK(std::abs(dq_ddelta(1.0) + 2.0 / 3.0) < 1e-15);
  CHECK(std::abs(d2q_ddelta2(1.0) + 4.0 / 27.0) < 1e-16);
}

TEST_CASE("property: map derivatives match central differences") {
  constexpr long double h = 1e-6L;
  const auto map_ld = [](long double d) {
    const long double q = -(d + std::sqrt(d * d + 8.0L)) / 2.0L;
    return d * q * q / 4.0L;
  };
  for (int i = 0; i <= 500; ++i) {
    const double d = 5.0 * i / 500.0;
    const long double lo = std::max(0.0L, d - h);
    const long double hi = d + h;
    const long double fd = (map_ld(hi) - map_ld(lo)) / (hi - lo);
    CHECK(std::abs((d_delta_prime(d) - fd) / fd) < 1e-6);

    if (d > 1e-3) {
      const long double fd2 = (map_ld(d + h) - 2.0L * map_ld(d) + map_ld(d - h)) / (h * h);
      CHECK(std::abs(d2_delta_prime(d) - fd2) < 1e-4 * std::max(1.0L, std::abs(fd2)));
    }
  }
}

TEST_CASE("property: monotone flow on either side of the critical point") {
  for (int i = 1; i <= 1000; ++i) {
    const double up = 1.0 + 9.0 * i / 1000.0;  // (1, 10]
    CHECK(delta_map(up) > up);
    const double down = 1.0 - 1.0 * i / 1000.0;  // [0, 1)
    if (down > 0.0) {
      CHECK(delta_map(down) < down);
    } else {
      CHECK(delta_map(down) == 0.0);
    }
  }
}

TEST_CASE("effective sizes") {
  CHECK(effective_size(0) == 3);
  CHECK(effective_size(12) == 1594323);
  for (int n = 1; n <= 39; ++n) CHECK(effective_size(n) == 3 * effective_size(n - 1));
  CHECK_THROWS_AS(effective_size(40), InvalidArgument);
}

TEST_CASE("trajectories") {
  SUBCASE("fixed point is constant") {
    const auto t = rg_trajectory({1.0, 1.0}, 30);
    CHECK(t.last_step() == 30);
    for (const auto& s : t.steps) CHECK(s.anisotropy == 1.0);
  }
  SUBCASE("gapped side grows past 1e3") {
    const auto t = rg_trajectory({1.0, 1.05}, 30);
    for (int n = 1; n <= t.last_step(); ++n) CHECK(t.at(n).anisotropy > t.at(n - 1).anisotropy);
    CHECK(t.steps.back().anisotropy > 1e3);
  }
  SUBCASE("critical side decays") {
    const auto t = rg_trajectory({1.0, 0.95}, 30);
    for (int n = 1; n <= t.last_step(); ++n) CHECK(t.at(n).anisotropy < t.at(n - 1).anisotropy);
    CHECK(t.steps.back().anisotropy < 1e-3);
  }
  SUBCASE("composition equals the stored trajectory") {
    testutil::Gen gen(8);
    for (int trial = 0; trial < 20; ++trial) {
      CouplingState c(gen.uniform(0.5, 2.0), gen.uniform(0.0, 2.0));
      const auto t = rg_trajectory(c, 15);
      for (int n = 0; n <= t.last_step(); ++n) {
        CHECK(t.at(n).exchange == c.exchange);
        CHECK(t.at(n).anisotropy == c.anisotropy);
        c = rg_step(c);
      }
    }
  }
  SUBCASE("Ising guard stops the flow and later steps keep the last coupling") {
    const auto t = rg_trajectory({1.0, 3.0}, 40);
    CHECK(t.termination == RGTrajectory::Termination::ising_guard);
    CHECK(t.steps.back().anisotropy > kIsingGuard);
    CHECK(t.coupling_after(40).anisotropy == t.steps.back().anisotropy);
  }
}

TEST_CASE("fixed-point classification") {
  const auto fps = classify_fixed_points();
  REQUIRE(fps.size() == 3);
  CHECK(fps[0].location == 0.0);
  CHECK(fps[0].stability == FixedPointReport::Stability::stable);
  CHECK(std::abs(fps[0].derivative - 0.5) < 1e-15);

  CHECK(fps[1].location == 1.0);
  CHECK(fps[1].stability == FixedPointReport::Stability::unstable);
  CHECK(std::abs(fps[1].derivative - 5.0 / 3.0) < 1e-15);
  REQUIRE(fps[1].nu.has_value());
  CHECK(std::abs(*fps[1].nu - 2.1506601030871240) < 1e-14);
  CHECK(std::abs(1.0 / *fps[1].nu - 0.47) < 0.02);

  CHECK(std::isinf(fps[2].location));
  CHECK(fps[2].stability == FixedPointReport::Stability::stable);
  CHECK(fps[2].inverse_coordinate);

  for (const auto& fp : fps) {
    CHECK((fp.stability == FixedPointReport::Stability::unstable) == (std::abs(fp.derivative) > 1.0));
  }
  CHECK(correlation_length_exponent() == *fps[1].nu);
}

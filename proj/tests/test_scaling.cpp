#include <doctest.h>

#include <cmath>

#include "test_util.hpp"
#include "xxzqrg/error.hpp"
#include "xxzqrg/rg_flow.hpp"
#include "xxzqrg/scaling.hpp"
#include "xxzqrg/verification.hpp"

using namespace xxzqrg;

namespace {

struct FrozenMinimum {
  Measure measure;
  int step;
  double position;
  double value;
};

// Stationary points of the composed derivative found with 60-digit mpmath
// (numeric differentiation plus bracketed root finding on the second
// derivative), independent of the closed-form chain rule.
const FrozenMinimum kFrozen[] = {
    {Measure::entropy, 2, 1.4394691584674016, -1.2968371922677973},
    {Measure::entropy, 6, 1.0495985876611158, -16.732679543261864},
    {Measure::entropy, 12, 1.0022589737294421, -385.05783806822759},
    {Measure::concurrence, 1, 1.2602279773625670, -0.26287637393453566},
    {Measure::concurrence, 4, 1.1010405286259188, -1.9151677106856128},
    {Measure::concurrence, 12, 1.0016934120155330, -132.49545903083124},
};

}  // namespace

TEST_CASE("single-block derivative values") {
  // dE/dDelta at Delta = 1 is -4/27 exactly.
  CHECK(std::abs(derivative_chain(1.0, 0, Measure::entropy) + 4.0 / 27.0) < 1e-16);
  const double base = derivative_chain(1.0, 0, Measure::entropy);
  CHECK(std::abs(derivative_chain(1.0, 3, Measure::entropy) - base * std::pow(5.0 / 3.0, 3)) < 1e-15);
  CHECK(std::abs(derivative_chain(1.0, 3, Measure::concurrence) -
                 derivative_chain(1.0, 0, Measure::concurrence) * std::pow(5.0 / 3.0, 3)) < 1e-15);
}

TEST_CASE("derivative grows with n just above the critical point") {
  double previous = 0.0;
  for (int n = 0; n <= 8; ++n) {
    const double g = std::abs(derivative_chain(1.01, n, Measure::entropy));
    CHECK(g > previous);
    previous = g;
  }
}

TEST_CASE("chained derivative matches long-double central differences") {
  for (Measure m : {Measure::entropy, Measure::concurrence}) {
    for (int n = 0; n <= 6; ++n) {
      for (int i = 0; i <= 26; ++i) {
        const double d = 0.5 + 1.3 * i / 26.0;
        const long double fd = finite_difference_reference(d, n, m == Measure::entropy);
        CHECK(std::abs((derivative_chain(d, n, m) - fd) / fd) < 1e-5);
      }
    }
  }
}

TEST_CASE("second-order chain rule matches differences of the first") {
  for (Measure m : {Measure::entropy, Measure::concurrence}) {
    for (int n = 0; n <= 5; ++n) {
      for (double d : {0.3, 0.8, 1.0, 1.1, 1.5}) {
        const double h = 1e-6;
        const double fd = (derivative_chain(d + h, n, m) - derivative_chain(d - h, n, m)) / (2 * h);
        const double an = derivative_chain_slope(d, n, m);
        CHECK(std::abs(an - fd) <= 1e-5 * std::max(1.0, std::abs(fd)));
      }
    }
  }
}

TEST_CASE("derivative curve input validation") {
  const std::vector<double> ok{0.5, 1.0, 1.5};
  const auto curve = derivative_curve(Measure::entropy, 2, ok);
  CHECK(curve.derivatives.size() == 3);
  CHECK(curve.derivatives[1] == derivative_chain(1.0, 2, Measure::entropy));
  const std::vector<double> bad{0.5, 0.5};
  CHECK_THROWS_AS(derivative_curve(Measure::entropy, 2, bad), InvalidArgument);
}

TEST_CASE("minima agree with the frozen high-precision oracle") {
  for (const auto& f : kFrozen) {
    CAPTURE(to_string(f.measure));
    CAPTURE(f.step);
    const auto m = locate_minimum(f.step, f.measure);
    CHECK(std::abs(m.position - f.position) < 1e-10);
    CHECK(std::abs(m.value - f.value) < 1e-10 * std::abs(f.value));
  }
}

TEST_CASE("no interior minimum is an error") {
  CHECK_THROWS_AS(locate_minimum(0, Measure::concurrence), NoInteriorMinimum);
}

TEST_CASE("minimum positions and depths move monotonically with n") {
  for (Measure m : {Measure::entropy, Measure::concurrence}) {
    double prev_pos = 10.0;
    double prev_mag = 0.0;
    for (int n = 2; n <= 12; ++n) {
      const auto min = locate_minimum(n, m);
      CHECK(min.position > 1.0);
      CHECK(min.position - 1.0 < prev_pos - 1.0);
      CHECK(std::abs(min.value) > prev_mag);
      prev_pos = min.position;
      prev_mag = std::abs(min.value);
    }
  }
}

TEST_CASE("refined minimum agrees with the dense-grid argmin") {
  for (int n : {2, 5, 9}) {
    const auto grid = minimum_scan_grid({});
    std::size_t best = 0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
      if (derivative_chain(grid[i], n, Measure::entropy) < derivative_chain(grid[best], n, Measure::entropy)) {
        best = i;
      }
    }
    const auto m = locate_minimum(n, Measure::entropy);
    CHECK(m.position >= grid[best - 1]);
    CHECK(m.position <= grid[best + 1]);
    CHECK(m.value <= derivative_chain(grid[best], n, Measure::entropy));
  }
}

TEST_CASE("power-law fit on synthetic data") {
  std::vector<SizePoint> pts;
  for (int n = 1; n <= 8; ++n) {
    const double size = std::pow(3.0, n + 1);
    pts.push_back({size, std::pow(size, 0.5)});
  }
  const auto mag = powerlaw_fit(pts, FitMode::magnitude);
  CHECK(std::abs(mag.exponent - 0.5) < 1e-12);
  CHECK(mag.r_squared == doctest::Approx(1.0).epsilon(1e-12));

  std::vector<SizePoint> pos;
  for (const auto& p : pts) pos.push_back({p.size, 1.0 + 2.0 * std::pow(p.size, -0.3)});
  const auto fit = powerlaw_fit(pos, FitMode::position);
  CHECK(std::abs(fit.exponent - 0.3) < 1e-12);
  CHECK(std::abs(fit.intercept - std::log(2.0)) < 1e-12);

  CHECK_THROWS_AS(powerlaw_fit(std::span(pts).first(3), FitMode::magnitude), FitError);
  pos[2].value = 0.9;
  CHECK_THROWS_AS(powerlaw_fit(pos, FitMode::position), FitError);
}

TEST_CASE("asymptotic window n = 4..12 is linear in log-log") {
  for (Measure m : {Measure::entropy, Measure::concurrence}) {
    const auto s = scaling_study(m, FitWindow{4, 12});
    CHECK(s.position.r_squared >= 0.999);
    CHECK(s.magnitude.r_squared >= 0.999);
  }
}

TEST_CASE("both measures scale with nearly the same exponent") {
  const auto e = scaling_study(Measure::entropy);
  const auto c = scaling_study(Measure::concurrence);
  CHECK(std::abs(e.magnitude.exponent - c.magnitude.exponent) <= 0.03);
  CHECK(std::abs(e.position.exponent - c.position.exponent) <= 0.03);
  CHECK(e.minima.size() == 11);
  CHECK(e.minima.front().size == 27);
}

TEST_CASE("local exponents approach 1/nu") {
  // Successive-step slopes of ln|min| against ln N tend to ln(5/3)/ln 3.
  const double target = 1.0 / correlation_length_exponent();
  for (Measure m : {Measure::entropy, Measure::concurrence}) {
    const auto a = locate_minimum(11, m);
    const auto b = locate_minimum(12, m);
    const double local = std::log(std::abs(b.value / a.value)) / std::log(3.0);
    CHECK(std::abs(local - target) < 0.01);
  }
}

TEST_CASE("scaling window validation") {
  CHECK_THROWS_AS(scaling_study(Measure::entropy, FitWindow{2, 4}), FitError);
  CHECK_THROWS_AS(scaling_study(Measure::entropy, FitWindow{-1, 6}), FitError);
}

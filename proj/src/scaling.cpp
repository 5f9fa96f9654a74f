#include "xxzqrg/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "xxzqrg/error.hpp"
#include "xxzqrg/rg_flow.hpp"

namespace xxzqrg {

namespace {

// q^2 and its first two derivatives in Delta.
struct QSquared {
  double value;
  double d1;
  double d2;
};

QSquared q_squared(double anisotropy) {
  const double q = q_of_delta(anisotropy);
  const double dq = dq_ddelta(anisotropy);
  const double d2q = d2q_ddelta2(anisotropy);
  return {q * q, 2.0 * q * dq, 2.0 * (dq * dq + q * d2q)};
}

// Derivatives of p = 2 / (2 + Q), written with Q'/(2 + Q) grouped so large
// anisotropies do not overflow (2 + Q)^2.
double p_first(const QSquared& s) {
  const double denom = 2.0 + s.value;
  return -2.0 * (s.d1 / denom) / denom;
}

double p_second(const QSquared& s) {
  const double denom = 2.0 + s.value;
  const double ratio = s.d1 / denom;
  return -2.0 * (s.d2 / denom) / denom + 4.0 * ratio * ratio / denom;
}

// Chained flow derivatives: d Delta_n / d Delta and d^2 Delta_n / d Delta^2.
struct FlowJet {
  double anisotropy;
  double first = 1.0;
  double second = 0.0;
  bool capped = false;
};

FlowJet flow_jet(double anisotropy, int steps, bool need_second) {
  if (steps < 0) throw InvalidArgument("derivative_chain: steps must be >= 0");
  if (!(anisotropy >= 0.0)) throw InvalidArgument("derivative_chain: anisotropy must be >= 0");
  FlowJet jet{anisotropy};
  for (int k = 0; k < steps; ++k) {
    if (jet.anisotropy > kDerivativeFlowCap) {
      jet.capped = true;
      return jet;
    }
    const double slope = d_delta_prime(jet.anisotropy);
    if (need_second) {
      jet.second = d2_delta_prime(jet.anisotropy) * jet.first * jet.first + slope * jet.second;
    }
    jet.first *= slope;
    jet.anisotropy = delta_map(jet.anisotropy);
  }
  jet.capped = jet.anisotropy > kDerivativeFlowCap;
  return jet;
}

}  // namespace

std::string_view to_string(Measure measure) {
  return measure == Measure::entropy ? "entropy" : "concurrence";
}

double measure_value(Measure measure, double anisotropy) {
  const double q = q_of_delta(anisotropy);
  const double p = 2.0 / (2.0 + q * q);
  if (measure == Measure::concurrence) return p;
  const auto h = [](double x) { return x > 0.0 ? -x * std::log2(x) : 0.0; };
  return h(p) + h(1.0 - p);
}

double measure_derivative(Measure measure, double anisotropy) {
  const QSquared s = q_squared(anisotropy);
  const double dp = p_first(s);
  if (measure == Measure::concurrence) return dp;
  // dH2/dp = log2((1 - p)/p) and (1 - p)/p = Q/2.
  return dp * std::log2(s.value / 2.0);
}

double measure_second_derivative(Measure measure, double anisotropy) {
  const QSquared s = q_squared(anisotropy);
  const double d2p = p_second(s);
  if (measure == Measure::concurrence) return d2p;
  return d2p * std::log2(s.value / 2.0) + p_first(s) * s.d1 / (s.value * std::numbers::ln2);
}

double derivative_chain(double anisotropy, int steps, Measure measure) {
  const FlowJet jet = flow_jet(anisotropy, steps, false);
  if (jet.capped) return 0.0;
  return measure_derivative(measure, jet.anisotropy) * jet.first;
}

double derivative_chain_slope(double anisotropy, int steps, Measure measure) {
  const FlowJet jet = flow_jet(anisotropy, steps, true);
  if (jet.capped) return 0.0;
  return measure_second_derivative(measure, jet.anisotropy) * jet.first * jet.first +
         measure_derivative(measure, jet.anisotropy) * jet.second;
}

DerivativeCurve derivative_curve(Measure measure, int steps, std::span<const double> anisotropies) {
  for (std::size_t k = 1; k < anisotropies.size(); ++k) {
    if (!(anisotropies[k] > anisotropies[k - 1])) {
      throw InvalidArgument("derivative_curve: anisotropies must be strictly increasing");
    }
  }
  DerivativeCurve curve{steps, measure, {anisotropies.begin(), anisotropies.end()}, {}};
  curve.derivatives.reserve(anisotropies.size());
  for (double d : anisotropies) curve.derivatives.push_back(derivative_chain(d, steps, measure));
  return curve;
}

std::vector<double> minimum_scan_grid(Bracket bracket) {
  if (!(bracket.high > bracket.low) || bracket.low < 0.0) {
    throw InvalidArgument("locate_minimum: bracket must satisfy 0 <= low < high");
  }
  const double width = bracket.high - bracket.low;
  std::vector<double> grid(kMinimumGridPoints);
  for (int i = 0; i < kMinimumGridPoints; ++i) {
    const double exponent = -6.0 + 6.0 * i / (kMinimumGridPoints - 1);
    grid[static_cast<std::size_t>(i)] = bracket.low + width * std::pow(10.0, exponent);
  }
  grid.back() = bracket.high;
  return grid;
}

DerivativeMinimum locate_minimum(int steps, Measure measure, Bracket bracket) {
  const auto grid = minimum_scan_grid(bracket);
  const auto g = [&](double d) { return derivative_chain(d, steps, measure); };

  std::size_t best = 0;
  double best_value = g(grid[0]);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double v = g(grid[i]);
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }
  if (best == 0 || best + 1 == grid.size()) {
    std::ostringstream msg;
    msg << "locate_minimum: no interior minimum of the " << to_string(measure)
        << " derivative at step " << steps << " in (" << bracket.low << ", " << bracket.high
        << "]";
    throw NoInteriorMinimum(msg.str());
  }

  // Golden-section search on the neighbouring grid cell pair.
  double a = grid[best - 1];
  double b = grid[best + 1];
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = g(x1);
  double f2 = g(x2);
  for (int it = 0; it < 200 && (b - a) > 1e-14 * (1.0 + std::abs(a)); ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = g(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = g(x2);
    }
  }
  double position = 0.5 * (a + b);

  // Golden section cannot resolve a flat minimum below ~sqrt(eps); the
  // analytic slope changes sign there, so bisect on it.
  const auto slope = [&](double d) { return derivative_chain_slope(d, steps, measure); };
  double lo = grid[best - 1];
  double hi = grid[best + 1];
  if (slope(lo) < 0.0 && slope(hi) > 0.0) {
    if (slope(position) < 0.0) {
      lo = position;
    } else {
      hi = position;
    }
    for (int it = 0; it < 200 && (hi - lo) > 1e-15 * (1.0 + std::abs(lo)); ++it) {
      const double mid = 0.5 * (lo + hi);
      if (slope(mid) < 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    position = 0.5 * (lo + hi);
  }
  return {position, g(position)};
}

ScalingFit powerlaw_fit(std::span<const SizePoint> points, FitMode mode) {
  if (points.size() < 4) throw FitError("powerlaw_fit: need at least 4 points");
  ScalingFit fit{};
  fit.log_points.reserve(points.size());
  for (const auto& p : points) {
    if (!(p.size > 0.0)) throw FitError("powerlaw_fit: sizes must be positive");
    const double y = mode == FitMode::position ? p.value - 1.0 : std::abs(p.value);
    if (!(y > 0.0) || !std::isfinite(y)) {
      throw FitError(mode == FitMode::position
                         ? "powerlaw_fit: position must exceed the critical point 1"
                         : "powerlaw_fit: magnitude must be non-zero");
    }
    fit.log_points.push_back({std::log(p.size), std::log(y)});
  }

  const double n = static_cast<double>(fit.log_points.size());
  double mx = 0.0;
  double my = 0.0;
  for (const auto& p : fit.log_points) {
    mx += p.size;
    my += p.value;
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (const auto& p : fit.log_points) {
    sxx += (p.size - mx) * (p.size - mx);
    sxy += (p.size - mx) * (p.value - my);
    syy += (p.value - my) * (p.value - my);
  }
  if (sxx == 0.0) throw FitError("powerlaw_fit: all sizes are equal");
  const double slope = sxy / sxx;
  fit.intercept = my - slope * mx;
  fit.exponent = mode == FitMode::position ? -slope : slope;

  double ss_res = 0.0;
  for (const auto& p : fit.log_points) {
    const double r = p.value - (fit.intercept + slope * p.size);
    ss_res += r * r;
  }
  fit.r_squared = syy == 0.0 ? 1.0 : std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  return fit;
}

MeasureScaling scaling_study(Measure measure, FitWindow window, Bracket bracket) {
  if (window.min_step < 0 || window.max_step - window.min_step < 3) {
    throw FitError("scaling_study: fit window must cover at least 4 steps starting at >= 0");
  }
  MeasureScaling study{measure, window, {}, {}, {}};
  std::vector<SizePoint> positions;
  std::vector<SizePoint> magnitudes;
  for (int n = window.min_step; n <= window.max_step; ++n) {
    const auto m = locate_minimum(n, measure, bracket);
    const std::uint64_t size = effective_size(n);
    study.minima.push_back({n, size, m.position, m.value});
    positions.push_back({static_cast<double>(size), m.position});
    magnitudes.push_back({static_cast<double>(size), m.value});
  }
  study.position = powerlaw_fit(positions, FitMode::position);
  study.magnitude = powerlaw_fit(magnitudes, FitMode::magnitude);
  return study;
}

NuCrossCheck nu_cross_check(FitWindow window, double tolerance) {
  const double nu = correlation_length_exponent();
  const double theta_e = scaling_study(Measure::entropy, window).magnitude.exponent;
  const double theta_c = scaling_study(Measure::concurrence, window).magnitude.exponent;
  return NuCrossCheck{nu,
                      1.0 / nu,
                      theta_e,
                      theta_c,
                      tolerance,
                      std::abs(theta_e - 1.0 / nu) <= tolerance,
                      std::abs(theta_c - 1.0 / nu) <= tolerance};
}

}  // namespace xxzqrg

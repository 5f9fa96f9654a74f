#pragma once

// Finite-size scaling of the entanglement derivatives.
//
// After n RG steps a block stands for N = 3^(n+1) sites and a measure F
// becomes F(Delta_n(Delta)). Its slope follows from the chain rule
//   dF/dDelta = F'(Delta_n) * prod_{k<n} dDelta_{k+1}/dDelta_k,
// evaluated here in closed form. Near the critical point Delta_c = 1 the
// slope develops a sharp minimum whose position and depth scale as powers
// of N.

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace xxzqrg {

enum class Measure { entropy, concurrence };

std::string_view to_string(Measure measure);

/// Measure as a function of the anisotropy at a single block.
double measure_value(Measure measure, double anisotropy);
double measure_derivative(Measure measure, double anisotropy);
double measure_second_derivative(Measure measure, double anisotropy);

/// Beyond this anisotropy the chained slope is below double range and is
/// reported as zero.
inline constexpr double kDerivativeFlowCap = 1e100;

/// dF^(n)/dDelta at the bare anisotropy.
double derivative_chain(double anisotropy, int steps, Measure measure);

/// d/dDelta of derivative_chain, also in closed form (second-order chain
/// rule). Used to pin down the minimum.
double derivative_chain_slope(double anisotropy, int steps, Measure measure);

struct DerivativeCurve {
  int steps;
  Measure measure;
  std::vector<double> anisotropies;  // strictly increasing
  std::vector<double> derivatives;
};

DerivativeCurve derivative_curve(Measure measure, int steps, std::span<const double> anisotropies);

struct Bracket {
  double low = 1.0;   // exclusive
  double high = 2.0;  // inclusive
};

inline constexpr int kMinimumGridPoints = 1000;

struct DerivativeMinimum {
  double position;
  double value;
};

/// Minimum of derivative_chain inside the bracket.
///
/// A 1000-point scan with offsets from `low` spaced logarithmically over six
/// decades, so minima close to the critical point stay resolved; then
/// golden-section refinement around the best grid point, polished to 1e-10
/// by bisection on the analytic slope. Throws NoInteriorMinimum when the best
/// grid point sits on the bracket edge.
DerivativeMinimum locate_minimum(int steps, Measure measure, Bracket bracket = {});

/// The scan grid used by locate_minimum.
std::vector<double> minimum_scan_grid(Bracket bracket);

enum class FitMode {
  position,   // ln(Delta_m - 1) vs ln N, exponent = -slope
  magnitude,  // ln |min| vs ln N, exponent = slope
};

struct SizePoint {
  double size;
  double value;
};

struct ScalingFit {
  double exponent;
  double intercept;
  double r_squared;
  std::vector<SizePoint> log_points;  // (ln N, ln value)
};

/// Ordinary least squares on the log-log pairs. Needs at least four points.
ScalingFit powerlaw_fit(std::span<const SizePoint> points, FitMode mode);

struct FitWindow {
  int min_step = 2;
  int max_step = 12;
};

struct StepMinimum {
  int step;
  std::uint64_t size;
  double position;
  double value;
};

struct MeasureScaling {
  Measure measure;
  FitWindow window;
  std::vector<StepMinimum> minima;  // one per step in the window
  ScalingFit position;
  ScalingFit magnitude;
};

MeasureScaling scaling_study(Measure measure, FitWindow window = {}, Bracket bracket = {});

struct NuCrossCheck {
  double nu;
  double one_over_nu;
  double theta_entropy;
  double theta_concurrence;
  double tolerance;
  bool entropy_ok;
  bool concurrence_ok;

  bool passed() const noexcept { return entropy_ok && concurrence_ok; }
};

/// Compares both fitted magnitude exponents with 1/nu = ln(5/3) / ln 3.
NuCrossCheck nu_cross_check(FitWindow window = {}, double tolerance = 0.03);

}  // namespace xxzqrg

#pragma once

// Analytic renormalization flow of the XXZ couplings under three-site
// blocking:
//   J' = J (2q / (2 + q^2))^2,   Delta' = Delta q^2 / 4,
// with q = -[Delta + sqrt(Delta^2 + 8)] / 2.

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "xxzqrg/block_hamiltonian.hpp"

namespace xxzqrg {

/// Sites per block.
inline constexpr int kBlockSize = 3;

/// Once Delta exceeds this the flow is treated as having reached the Ising
/// fixed point and iteration stops.
inline constexpr double kIsingGuard = 1e12;

/// Step-to-step change below which a flow near Delta = 0 counts as settled.
inline constexpr double kStableSettleTolerance = 1e-15;

/// Middle-site amplitude ratio of the block ground state. Negative root.
double q_of_delta(double anisotropy);

/// dq/dDelta = -(1/2)(1 + Delta / sqrt(Delta^2 + 8)).
double dq_ddelta(double anisotropy);

/// d^2q/dDelta^2 = -4 / (Delta^2 + 8)^(3/2).
double d2q_ddelta2(double anisotropy);

/// One RG step of (J, Delta).
CouplingState rg_step(const CouplingState& coupling);

/// Delta' as a function of Delta alone.
double delta_map(double anisotropy);

/// dDelta'/dDelta = q^2/4 + Delta q q' / 2.
double d_delta_prime(double anisotropy);

/// d^2Delta'/dDelta^2 = q q' + Delta (q'^2 + q q'') / 2.
double d2_delta_prime(double anisotropy);

/// Effective chain length described by a block after n steps, 3^(n+1).
std::uint64_t effective_size(int step);

struct RGTrajectory {
  enum class Termination { max_steps, ising_guard, settled };

  std::vector<CouplingState> steps;  // steps[0] is the bare coupling
  Termination termination = Termination::max_steps;

  int block_size() const noexcept { return kBlockSize; }
  int last_step() const noexcept { return static_cast<int>(steps.size()) - 1; }
  const CouplingState& at(int step) const { return steps.at(static_cast<std::size_t>(step)); }
  /// Coupling after `step` steps; a trajectory that stopped early keeps its
  /// last coupling for every later step.
  const CouplingState& coupling_after(int step) const;
};

/// Iterates rg_step up to `max_steps` times. Stops early when Delta exceeds
/// kIsingGuard or when a sub-critical flow has settled at Delta = 0.
RGTrajectory rg_trajectory(const CouplingState& initial, int max_steps);

struct FixedPointReport {
  enum class Stability { stable, unstable };

  /// Location Delta*; +infinity for the Ising point.
  double location;
  Stability stability;
  /// Linearized map slope at the fixed point. For the point at infinity this
  /// is the slope of the map in the inverse coordinate 1/Delta.
  double derivative;
  bool inverse_coordinate = false;
  /// Correlation-length exponent ln 3 / ln(dDelta'/dDelta); only defined at
  /// the unstable point.
  std::optional<double> nu;
};

/// Fixed points Delta* = 0 (stable), 1 (unstable), infinity (stable).
std::vector<FixedPointReport> classify_fixed_points();

/// ln 3 / ln(5/3), the exponent implied by the slope of the map at Delta = 1.
double correlation_length_exponent();

}  // namespace xxzqrg

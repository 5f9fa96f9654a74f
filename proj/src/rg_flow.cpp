#include "xxzqrg/rg_flow.hpp"

#include <cmath>
#include <sstream>

#include "xxzqrg/error.hpp"

namespace xxzqrg {

namespace {

void require_non_negative(double anisotropy, const char* what) {
  if (!(anisotropy >= 0.0) || !std::isfinite(anisotropy)) {
    std::ostringstream msg;
    msg << what << ": anisotropy must be finite and >= 0, got " << anisotropy;
    throw InvalidArgument(msg.str());
  }
}

}  // namespace

double q_of_delta(double anisotropy) {
  require_non_negative(anisotropy, "q_of_delta");
  return -0.5 * (anisotropy + std::sqrt(anisotropy * anisotropy + 8.0));
}

double dq_ddelta(double anisotropy) {
  require_non_negative(anisotropy, "dq_ddelta");
  return -0.5 * (1.0 + anisotropy / std::sqrt(anisotropy * anisotropy + 8.0));
}

double d2q_ddelta2(double anisotropy) {
  require_non_negative(anisotropy, "d2q_ddelta2");
  const double r = anisotropy * anisotropy + 8.0;
  return -4.0 / (r * std::sqrt(r));
}

double delta_map(double anisotropy) {
  const double q = q_of_delta(anisotropy);
  return anisotropy * q * q / 4.0;
}

CouplingState rg_step(const CouplingState& coupling) {
  const double q = q_of_delta(coupling.anisotropy);
  const double flip = 2.0 * q / (2.0 + q * q);
  return CouplingState(coupling.exchange * flip * flip, coupling.anisotropy * q * q / 4.0);
}

double d_delta_prime(double anisotropy) {
  const double q = q_of_delta(anisotropy);
  const double dq = dq_ddelta(anisotropy);
  return q * q / 4.0 + anisotropy * q * dq / 2.0;
}

double d2_delta_prime(double anisotropy) {
  const double q = q_of_delta(anisotropy);
  const double dq = dq_ddelta(anisotropy);
  const double d2q = d2q_ddelta2(anisotropy);
  return q * dq + anisotropy * (dq * dq + q * d2q) / 2.0;
}

std::uint64_t effective_size(int step) {
  if (step < 0) throw InvalidArgument("effective_size: step must be >= 0");
  // 3^40 still fits in 64 bits.
  if (step > 39) throw InvalidArgument("effective_size: step too large for 64-bit size");
  std::uint64_t n = kBlockSize;
  for (int k = 0; k < step; ++k) n *= kBlockSize;
  return n;
}

const CouplingState& RGTrajectory::coupling_after(int step) const {
  if (step < 0) throw InvalidArgument("RGTrajectory::coupling_after: step must be >= 0");
  return step > last_step() ? steps.back() : at(step);
}

RGTrajectory rg_trajectory(const CouplingState& initial, int max_steps) {
  if (max_steps < 0) throw InvalidArgument("rg_trajectory: max_steps must be >= 0");
  RGTrajectory traj;
  traj.steps.reserve(static_cast<std::size_t>(max_steps) + 1);
  traj.steps.push_back(initial);
  if (initial.anisotropy > kIsingGuard) {
    traj.termination = RGTrajectory::Termination::ising_guard;
    return traj;
  }
  for (int k = 0; k < max_steps; ++k) {
    const CouplingState& current = traj.steps.back();
    const CouplingState next = rg_step(current);
    const double change = std::abs(next.anisotropy - current.anisotropy);
    traj.steps.push_back(next);
    if (next.anisotropy > kIsingGuard) {
      traj.termination = RGTrajectory::Termination::ising_guard;
      return traj;
    }
    if (next.anisotropy < 1.0 && change < kStableSettleTolerance) {
      traj.termination = RGTrajectory::Termination::settled;
      return traj;
    }
  }
  traj.termination = RGTrajectory::Termination::max_steps;
  return traj;
}

double correlation_length_exponent() {
  return std::log(static_cast<double>(kBlockSize)) / std::log(d_delta_prime(1.0));
}

std::vector<FixedPointReport> classify_fixed_points() {
  using Stability = FixedPointReport::Stability;
  std::vector<FixedPointReport> out;

  const double slope_xy = d_delta_prime(0.0);
  out.push_back({0.0, std::abs(slope_xy) > 1.0 ? Stability::unstable : Stability::stable,
                 slope_xy, false, std::nullopt});

  const double slope_critical = d_delta_prime(1.0);
  out.push_back({1.0,
                 std::abs(slope_critical) > 1.0 ? Stability::unstable : Stability::stable,
                 slope_critical, false, correlation_length_exponent()});

  // For large Delta, q^2 ~ Delta^2 so Delta' ~ Delta^3 / 4 and u = 1/Delta maps
  // to u' ~ 4 u^3: the slope in u vanishes at u = 0.
  out.push_back({std::numeric_limits<double>::infinity(), Stability::stable, 0.0, true,
                 std::nullopt});
  return out;
}

}  // namespace xxzqrg

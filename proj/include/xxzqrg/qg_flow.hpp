#pragma once

// RG with quantum-group boundary fields. The anisotropy is parametrized as
// Delta = (q + 1/q)/2, with q a pure phase on the critical line 0 <= Delta <= 1
// and q real > 1 in the gapped region. Under blocking q is unchanged and only
// the energy scale flows: J' = xi(q)^2 J with
//   xi(q) = (q + 1/q + 2) / (2 (q + 1/q + 1)) = (Delta + 1) / (2 Delta + 1).

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "xxzqrg/block_hamiltonian.hpp"

namespace xxzqrg {

enum class QGRegion { critical, gapped };

struct QGCoupling {
  double exchange;
  std::complex<double> q;
  double anisotropy;  // (q + 1/q) / 2
  QGRegion region;
};

/// q = exp(i arccos Delta) for Delta <= 1, Delta + sqrt(Delta^2 - 1) above.
QGCoupling qg_from_delta(double anisotropy, double exchange = 1.0);

/// xi(q) evaluated through the real combination q + 1/q = 2 Delta.
double qg_renormalization_factor(const QGCoupling& coupling);

/// q' = q (bit for bit), J' = xi^2 J.
QGCoupling qg_rg_step(const QGCoupling& coupling);

/// Member of the degenerate quantum-group block doublet,
///   -q^(1/2)|uud> + (q^(1/2) + q^(-1/2))|udu> - q^(-1/2)|duu>
/// (or its flipped partner), normalized from the amplitude moduli. The
/// principal square root is used, which for q = exp(i g), g in [0, pi/2], is
/// exp(i g / 2).
struct QGGroundState {
  std::array<std::complex<double>, 8> amplitudes{};
  Partner partner = Partner::up;
};

QGGroundState qg_ground_state(const QGCoupling& coupling, Partner partner = Partner::up);

/// Diagonal of the middle-site reduced density matrix, (p_up, p_down).
std::array<double, 2> qg_site2_populations(const QGGroundState& state);

/// Entropy of the middle site after `steps` RG steps.
///
/// On the critical line the block state is the quantum-group doublet and
/// nothing flows, so the value is step independent:
///   binary entropy of (1/(2 + Delta), (1 + Delta)/(2 + Delta)).
/// Above Delta = 1 the anisotropy flows under the standard three-site map
/// toward the Ising point and the middle-site entropy of the standard block
/// state is taken at the flowed anisotropy. Both branches give H2(1/3) at
/// Delta = 1 for every step count.
double qg_entropy(double anisotropy, int steps = 0);

struct QGSweepRow {
  double anisotropy;
  int step;
  double entropy;
};

std::vector<QGSweepRow> qg_sweep(std::span<const double> anisotropies, int steps);

}  // namespace xxzqrg

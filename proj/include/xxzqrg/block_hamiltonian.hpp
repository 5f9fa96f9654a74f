#pragma once

// XXZ chain and three-site block Hamiltonians, the block ground doublet and
// the projector that maps a block onto one effective spin.
//
// Basis convention used throughout the library: site 1 is the most
// significant bit of a basis index and spin up is bit value 0. For three
// sites the index of |s1 s2 s3> is 4*b1 + 2*b2 + b3, so
//   |up up down> = 1, |up down up> = 2, |down up up> = 4.

#include <array>
#include <complex>

#include "xxzqrg/linalg.hpp"

namespace xxzqrg {

/// Exchange coupling J > 0 and anisotropy Delta >= 0 at one RG step.
struct CouplingState {
  CouplingState(double exchange, double anisotropy);

  double exchange;
  double anisotropy;
};

enum class Boundary { open, periodic };

enum class Axis { x, y, z };

/// Which member of the degenerate block doublet: total S^z = +1/2 (`up`) or
/// its spin-flipped partner (`down`).
enum class Partner { up, down };

inline constexpr int kMinChainSites = 2;
inline constexpr int kMaxChainSites = 12;

/// Basis indices of the three-configuration magnetization sector of a block.
inline constexpr std::array<std::size_t, 3> kSectorUp{1, 2, 4};    // uud, udu, duu
inline constexpr std::array<std::size_t, 3> kSectorDown{3, 5, 6};  // udd, dud, ddu

/// (J/4) sum_i [x_i x_{i+1} + y_i y_{i+1} + Delta z_i z_{i+1}] on n sites.
/// A periodic chain includes the bond (n, 1); for n = 2 that doubles the
/// single bond.
Matrix build_chain_hamiltonian(int n_sites, const CouplingState& coupling, Boundary boundary);

/// Open three-site block Hamiltonian.
Matrix build_block_hamiltonian(const CouplingState& coupling);

/// Ground-level energy of the block, -(J/4)[Delta + sqrt(Delta^2 + 8)].
double block_ground_energy(const CouplingState& coupling);

/// One member of the degenerate block ground doublet,
/// (|uud> + q|udu> + |duu>) / sqrt(2 + q^2) with q = q_of_delta(Delta), or its
/// spin-flipped partner.
struct BlockGroundState {
  std::array<double, 8> amplitudes{};
  Partner partner = Partner::up;
  double q = 0.0;
};

BlockGroundState block_ground_state(double anisotropy, Partner partner = Partner::up);

/// Maps the block onto its ground doublet: column 0 is the |up> member,
/// column 1 the |down> member of the renamed effective spin.
struct Projector {
  Matrix columns{8, 2};
  double anisotropy = 0.0;
};

Projector build_projector(double anisotropy);

/// P^T O P for the single-site operator of `axis` at block site 1..3, i.e.
/// xi * sigma'^axis in the effective two-state basis. The y axis is carried
/// as i*sigma^y (see pauli::iy), so the result is xi * (i sigma^y).
Matrix renormalize_operator(const Projector& projector, int site, Axis axis);

/// The scalar xi extracted from renormalize_operator.
double renormalization_factor(const Projector& projector, int site, Axis axis);

// ---------------------------------------------------------------------------
// Quantum-group variant: open chain with boundary fields
//   (J/4) sum_i [x x + y y + ((q + 1/q)/2) z z - ((q - 1/q)/2)(z_i - z_{i+1})].
// For pure-phase q the field term is imaginary, so these are complex.

/// Open quantum-group chain on n sites (2..12). Throws for q == 0.
ComplexMatrix build_qg_chain_hamiltonian(int n_sites, double exchange, std::complex<double> q);

/// Three-site quantum-group block, equal to build_qg_chain_hamiltonian(3, ...).
ComplexMatrix build_qg_block_hamiltonian(double exchange, std::complex<double> q);

/// -(J/4)(2 + q + 1/q).
std::complex<double> qg_block_ground_energy(double exchange, std::complex<double> q);

}  // namespace xxzqrg

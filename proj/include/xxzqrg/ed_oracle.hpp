#pragma once

// Exact diagonalization used to check the analytic RG formulas: block and
// short-chain ground states, the projected two-block Hamiltonian, and
// brute-force entanglement measures.

#include <utility>

#include "xxzqrg/block_hamiltonian.hpp"
#include "xxzqrg/linalg.hpp"

namespace xxzqrg {

struct EDResult {
  double energy;
  int degeneracy;
  Matrix ground_space;  // orthonormal columns spanning the ground level
  double residual;      // max_k |H v_k - E v_k|_inf over the ground vectors
};

/// Lowest level of a real symmetric matrix.
///
/// The matrix is first split into the connected components of its non-zero
/// pattern (for spin chains these are the S^z sectors), each diagonalized
/// with Jacobi. Levels within kDegeneracyTolerance * max(1, |E|) of the lowest
/// eigenvalue form the ground space.
EDResult ed_ground(const Matrix& h);

struct BlockGroundCheck {
  double deficit;       // max over the doublet of 1 - |Pi_ED phi|^2
  double energy_error;  // |E_ED - e0|
  int degeneracy;
  bool degeneracy_ok;   // degeneracy == 2
};

/// Compares the analytic block doublet with ED of the block Hamiltonian.
BlockGroundCheck verify_block_ground_state(double anisotropy, double exchange = 1.0);

/// Same comparison for the quantum-group block at real q > 1 (Delta > 1),
/// where the block Hamiltonian is real symmetric.
BlockGroundCheck verify_qg_block_ground_state(double anisotropy, double exchange = 1.0);

/// Which subsystems to measure on a short chain.
struct ChainPartition {
  int site = 2;                   // single-site entropy
  std::pair<int, int> pair{1, 3};  // pair concurrence
};

struct ChainMeasures {
  double ground_energy;
  int degeneracy;
  double magnetization;     // S^z of the vector used
  int sector_degeneracy;    // ground vectors sharing that S^z
  double site_entropy;
  double pair_concurrence;
};

inline constexpr int kMaxExactChainSites = 9;

/// Brute-force measures on an n-site chain (2..9). From a degenerate ground
/// level the vector with S^z = +1/2 is used, falling back to the smallest
/// non-negative S^z.
ChainMeasures chain_measures_exact(int n_sites, double anisotropy, Boundary boundary,
                                   ChainPartition partition = {}, double exchange = 1.0);

struct EffectiveHamiltonianCheck {
  Matrix projected;  // (P (x) P)^T H_6 (P (x) P), 4x4
  Matrix expected;   // block energies + renormalized two-site Hamiltonian
  double max_error;
};

/// Projects two adjacent open blocks (six sites) onto their ground
/// doublets and compares with 2 e0 + H_2(J', Delta').
EffectiveHamiltonianCheck project_two_blocks(const CouplingState& coupling);

/// Quantum-group version at real q > 1: the projection must equal a constant
/// plus the two-site quantum-group Hamiltonian with the same q and
/// J' = xi(q)^2 J.
EffectiveHamiltonianCheck project_two_qg_blocks(double anisotropy, double exchange = 1.0);

}  // namespace xxzqrg

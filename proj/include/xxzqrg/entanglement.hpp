#pragma once

// Density matrices of the block ground state and the entanglement measures
// tracked under the RG: concurrence of the outer pair (sites 1 and 3),
// entanglement of formation, and the von Neumann entropy of the middle site.
// Entropies are in bits, with 0 log 0 = 0.

#include <cstdint>
#include <span>
#include <vector>

#include "xxzqrg/block_hamiltonian.hpp"
#include "xxzqrg/linalg.hpp"

namespace xxzqrg {

/// Validated two-qubit density matrix: 4x4, symmetric, unit trace and PSD,
/// each to 1e-12.
class TwoQubitDensityMatrix {
 public:
  explicit TwoQubitDensityMatrix(Matrix rho);

  const Matrix& matrix() const noexcept { return rho_; }

 private:
  Matrix rho_;
};

/// |phi><phi| for the chosen member of the block ground doublet (8x8).
Matrix density_matrix(double anisotropy, Partner partner = Partner::up);

/// Traces out every site not in `keep` (1-based site labels, any order,
/// no duplicates). Kept sites stay in ascending order, the lowest label being
/// the most significant factor. `rho` must be 2^n x 2^n with unit trace.
Matrix partial_trace(const Matrix& rho, int n_sites, std::span<const int> keep);

/// Same as partial_trace(|psi><psi|, ...) without forming the full projector.
Matrix reduced_density_matrix(std::span<const double> state, int n_sites,
                              std::span<const int> keep);

/// -p log2 p - (1-p) log2(1-p).
double binary_entropy(double p);

/// -Tr rho log2 rho from the spectrum.
double von_neumann_entropy(const Matrix& rho);

/// 2 / (2 + q^2).
double concurrence_closed_form(double anisotropy);

/// Wootters concurrence max(0, s1 - s2 - s3 - s4), s_i the descending square
/// roots of the spectrum of sqrt(rho) rho~ sqrt(rho), rho~ = (yy) rho (yy).
double wootters_concurrence(const TwoQubitDensityMatrix& rho);

/// Binary entropy of y = 1/2 + sqrt(1 - C^2)/2. C must lie in [0, 1].
double entanglement_of_formation(double concurrence);

/// Entropy of the middle site, binary entropy of 2 / (2 + q^2).
double entropy_site2(double anisotropy);

struct EntanglementReport {
  double bare_anisotropy;
  int rg_step;
  std::uint64_t effective_size;
  double renormalized_anisotropy;
  double concurrence;
  double formation;
  double entropy;
};

/// Measures after flowing the bare anisotropy through `steps` RG steps.
EntanglementReport renormalized_measures(double bare_anisotropy, int steps);

}  // namespace xxzqrg

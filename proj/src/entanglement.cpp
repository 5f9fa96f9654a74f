#include "xxzqrg/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "xxzqrg/error.hpp"
#include "xxzqrg/rg_flow.hpp"

namespace xxzqrg {

namespace {

constexpr double kDensityTolerance = 1e-12;

// Relative floor applied to spectra whose square roots are taken; values
// below it are roundoff of exact zeros (sqrt(1e-17) would otherwise show up
// as 3e-9 in the concurrence).
constexpr double kSpectrumFloor = 64.0 * std::numeric_limits<double>::epsilon();

double plogp(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

std::vector<int> validated_keep(int n_sites, std::span<const int> keep) {
  if (n_sites < 1 || n_sites > 12) throw InvalidArgument("partial_trace: site count out of range");
  if (keep.empty()) throw InvalidArgument("partial_trace: keep set is empty");
  std::vector<int> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidArgument("partial_trace: keep set has duplicate sites");
  }
  if (sorted.front() < 1 || sorted.back() > n_sites) {
    std::ostringstream msg;
    msg << "partial_trace: kept sites must lie in [1, " << n_sites << "]";
    throw InvalidArgument(msg.str());
  }
  return sorted;
}

// Splits full basis indices into (kept, traced) sub-indices.
struct SiteSplit {
  std::vector<std::size_t> kept_of;    // full index -> kept sub-index
  std::vector<std::size_t> traced_of;  // full index -> traced sub-index
  std::size_t kept_dim;

  SiteSplit(int n_sites, const std::vector<int>& keep) {
    const std::size_t dim = std::size_t{1} << n_sites;
    kept_of.resize(dim);
    traced_of.resize(dim);
    kept_dim = std::size_t{1} << keep.size();
    for (std::size_t s = 0; s < dim; ++s) {
      std::size_t k = 0;
      std::size_t t = 0;
      for (int site = 1; site <= n_sites; ++site) {
        const std::size_t bit = (s >> (n_sites - site)) & 1U;
        if (std::binary_search(keep.begin(), keep.end(), site)) {
          k = (k << 1) | bit;
        } else {
          t = (t << 1) | bit;
        }
      }
      kept_of[s] = k;
      traced_of[s] = t;
    }
  }
};

}  // namespace

TwoQubitDensityMatrix::TwoQubitDensityMatrix(Matrix rho) : rho_(std::move(rho)) {
  if (rho_.rows() != 4 || rho_.cols() != 4) {
    throw InvalidArgument("TwoQubitDensityMatrix: matrix must be 4x4");
  }
  if (!is_symmetric(rho_, kDensityTolerance)) {
    throw InvalidArgument("TwoQubitDensityMatrix: matrix is not symmetric");
  }
  if (std::abs(rho_.trace() - 1.0) > kDensityTolerance) {
    throw InvalidArgument("TwoQubitDensityMatrix: trace differs from 1");
  }
  const double min_eigenvalue = eigh_symmetric(rho_).eigenvalues.front();
  if (min_eigenvalue < -kDensityTolerance) {
    throw NotPositiveSemidefinite("TwoQubitDensityMatrix: matrix is not PSD", min_eigenvalue);
  }
}

Matrix density_matrix(double anisotropy, Partner partner) {
  const auto state = block_ground_state(anisotropy, partner);
  return outer(state.amplitudes, state.amplitudes);
}

Matrix partial_trace(const Matrix& rho, int n_sites, std::span<const int> keep) {
  const auto sites = validated_keep(n_sites, keep);
  const std::size_t dim = std::size_t{1} << n_sites;
  if (rho.rows() != dim || rho.cols() != dim) {
    throw InvalidArgument("partial_trace: matrix dimension does not match site count");
  }
  if (std::abs(rho.trace() - 1.0) > 1e-10) throw InvalidArgument("partial_trace: trace differs from 1");

  const SiteSplit split(n_sites, sites);
  Matrix out(split.kept_dim, split.kept_dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      if (split.traced_of[i] != split.traced_of[j]) continue;
      out(split.kept_of[i], split.kept_of[j]) += rho(i, j);
    }
  }
  return out;
}

Matrix reduced_density_matrix(std::span<const double> state, int n_sites,
                              std::span<const int> keep) {
  const auto sites = validated_keep(n_sites, keep);
  const std::size_t dim = std::size_t{1} << n_sites;
  if (state.size() != dim) {
    throw InvalidArgument("reduced_density_matrix: state length does not match site count");
  }
  if (std::abs(dot(state, state) - 1.0) > 1e-10) {
    throw InvalidArgument("reduced_density_matrix: state is not normalized");
  }
  const SiteSplit split(n_sites, sites);
  const std::size_t traced_dim = dim / split.kept_dim;
  // Reshape psi into a (kept x traced) amplitude table; rho = A A^T.
  Matrix amplitudes(split.kept_dim, traced_dim);
  for (std::size_t s = 0; s < dim; ++s) amplitudes(split.kept_of[s], split.traced_of[s]) = state[s];
  return amplitudes * amplitudes.transpose();
}

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("binary_entropy: p must lie in [0, 1]");
  return plogp(p) + plogp(1.0 - p);
}

double von_neumann_entropy(const Matrix& rho) {
  const auto eig = eigh_symmetric(rho);
  double s = 0.0;
  for (double lambda : eig.eigenvalues) s += plogp(std::max(lambda, 0.0));
  return s;
}

double concurrence_closed_form(double anisotropy) {
  const double q = q_of_delta(anisotropy);
  return 2.0 / (2.0 + q * q);
}

double wootters_concurrence(const TwoQubitDensityMatrix& density) {
  const Matrix& rho = density.matrix();
  const Matrix yy = pauli::yy();
  // rho is real, so rho* = rho.
  const Matrix flipped = yy * rho * yy;

  const double rho_scale = std::max(1.0, rho.max_abs());
  const Matrix root = sqrt_psd(rho, kSpectrumFloor * rho_scale);
  Matrix r = root * flipped * root;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) {
      const double mean = 0.5 * (r(i, j) + r(j, i));
      r(i, j) = mean;
      r(j, i) = mean;
    }
  }
  auto mu = eigh_symmetric(r).eigenvalues;
  std::sort(mu.begin(), mu.end(), std::greater<>());
  const double floor = kSpectrumFloor * std::max(mu.front(), 1e-300);
  double c = 0.0;
  for (std::size_t k = 0; k < mu.size(); ++k) {
    const double root_mu = mu[k] > floor ? std::sqrt(mu[k]) : 0.0;
    c += k == 0 ? root_mu : -root_mu;
  }
  return std::clamp(c, 0.0, 1.0);
}

double entanglement_of_formation(double concurrence) {
  if (!(concurrence >= 0.0 && concurrence <= 1.0)) {
    throw InvalidArgument("entanglement_of_formation: concurrence must lie in [0, 1]");
  }
  const double y = 0.5 + 0.5 * std::sqrt(1.0 - concurrence * concurrence);
  return binary_entropy(y);
}

double entropy_site2(double anisotropy) { return binary_entropy(concurrence_closed_form(anisotropy)); }

EntanglementReport renormalized_measures(double bare_anisotropy, int steps) {
  if (steps < 0) throw InvalidArgument("renormalized_measures: steps must be >= 0");
  // Exact n-fold map, no trajectory guards: the Ising side overflows to +inf
  // within a few steps and the measures are then exactly zero.
  if (!(bare_anisotropy >= 0.0) || !std::isfinite(bare_anisotropy)) {
    throw InvalidArgument("renormalized_measures: anisotropy must be finite and >= 0");
  }
  double delta = bare_anisotropy;
  for (int k = 0; k < steps && std::isfinite(delta); ++k) delta = delta_map(delta);
  if (!std::isfinite(delta)) {
    return EntanglementReport{bare_anisotropy, steps, effective_size(steps), delta, 0.0, 0.0, 0.0};
  }
  const double c = concurrence_closed_form(delta);
  return EntanglementReport{bare_anisotropy,
                            steps,
                            effective_size(steps),
                            delta,
                            c,
                            entanglement_of_formation(c),
                            entropy_site2(delta)};
}

}  // namespace xxzqrg

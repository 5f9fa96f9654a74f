#include "xxzqrg/block_hamiltonian.hpp"

#include <cmath>
#include <sstream>

#include "xxzqrg/error.hpp"
#include "xxzqrg/rg_flow.hpp"

namespace xxzqrg {

namespace {

void require_chain_size(int n_sites, const char* what) {
  if (n_sites < kMinChainSites || n_sites > kMaxChainSites) {
    std::ostringstream msg;
    msg << what << ": site count " << n_sites << " outside [" << kMinChainSites << ", "
        << kMaxChainSites << "]";
    throw InvalidArgument(msg.str());
  }
}

// Bit position of a 1-based site in an n-site basis index.
constexpr int bit_of(int site, int n_sites) { return n_sites - site; }

// sigma^z eigenvalue of `site` in basis state `index`.
double spin_z(std::size_t index, int site, int n_sites) {
  return ((index >> bit_of(site, n_sites)) & 1U) ? -1.0 : 1.0;
}

}  // namespace

CouplingState::CouplingState(double exchange_, double anisotropy_)
    : exchange(exchange_), anisotropy(anisotropy_) {
  if (!std::isfinite(exchange) || exchange <= 0.0) {
    throw InvalidArgument("CouplingState: exchange coupling must be positive and finite");
  }
  if (!std::isfinite(anisotropy) || anisotropy < 0.0) {
    throw InvalidArgument("CouplingState: anisotropy must be non-negative and finite");
  }
}

Matrix build_chain_hamiltonian(int n_sites, const CouplingState& coupling, Boundary boundary) {
  require_chain_size(n_sites, "build_chain_hamiltonian");
  const std::size_t dim = std::size_t{1} << n_sites;
  const double scale = coupling.exchange / 4.0;
  const int n_bonds = boundary == Boundary::periodic ? n_sites : n_sites - 1;

  Matrix h(dim, dim);
  for (std::size_t s = 0; s < dim; ++s) {
    for (int b = 1; b <= n_bonds; ++b) {
      const int left = b;
      const int right = b % n_sites + 1;
      const double zz = spin_z(s, left, n_sites) * spin_z(s, right, n_sites);
      h(s, s) += scale * coupling.anisotropy * zz;
      if (zz < 0.0) {
        // x x + y y swaps an antiparallel pair with amplitude 2.
        const std::size_t flipped = s ^ (std::size_t{1} << bit_of(left, n_sites)) ^
                                    (std::size_t{1} << bit_of(right, n_sites));
        h(flipped, s) += 2.0 * scale;
      }
    }
  }
  return h;
}

Matrix build_block_hamiltonian(const CouplingState& coupling) {
  return build_chain_hamiltonian(3, coupling, Boundary::open);
}

double block_ground_energy(const CouplingState& coupling) {
  const double d = coupling.anisotropy;
  return -coupling.exchange / 4.0 * (d + std::sqrt(d * d + 8.0));
}

BlockGroundState block_ground_state(double anisotropy, Partner partner) {
  BlockGroundState state;
  state.partner = partner;
  state.q = q_of_delta(anisotropy);
  const double inv_norm = 1.0 / std::sqrt(2.0 + state.q * state.q);
  const auto& sector = partner == Partner::up ? kSectorUp : kSectorDown;
  // The flipped partner of |uud> + q|udu> + |duu> is |ddu> + q|dud> + |udd>,
  // whose coefficients are again (1, q, 1) on (udd, dud, ddu).
  state.amplitudes[sector[0]] = inv_norm;
  state.amplitudes[sector[1]] = state.q * inv_norm;
  state.amplitudes[sector[2]] = inv_norm;
  return state;
}

Projector build_projector(double anisotropy) {
  const auto up = block_ground_state(anisotropy, Partner::up);
  const auto down = block_ground_state(anisotropy, Partner::down);
  Projector p;
  p.anisotropy = anisotropy;
  for (std::size_t i = 0; i < 8; ++i) {
    p.columns(i, 0) = up.amplitudes[i];
    p.columns(i, 1) = down.amplitudes[i];
  }
  return p;
}

Matrix renormalize_operator(const Projector& projector, int site, Axis axis) {
  if (site < 1 || site > 3) throw InvalidArgument("renormalize_operator: site must be 1, 2 or 3");
  const Matrix single = axis == Axis::x ? pauli::x() : axis == Axis::y ? pauli::iy() : pauli::z();
  const Matrix op = embed_site_operator(single, site, 3);
  return projector.columns.transpose() * (op * projector.columns);
}

double renormalization_factor(const Projector& projector, int site, Axis axis) {
  const Matrix m = renormalize_operator(projector, site, axis);
  // x and i*y carry their weight in the (0, 1) slot, z on the diagonal.
  return axis == Axis::z ? m(0, 0) : m(0, 1);
}

ComplexMatrix build_qg_chain_hamiltonian(int n_sites, double exchange, std::complex<double> q) {
  require_chain_size(n_sites, "build_qg_chain_hamiltonian");
  if (q == std::complex<double>{0.0, 0.0}) {
    throw InvalidArgument("build_qg_chain_hamiltonian: q must be non-zero");
  }
  if (!std::isfinite(exchange) || exchange <= 0.0) {
    throw InvalidArgument("build_qg_chain_hamiltonian: exchange coupling must be positive");
  }
  const std::complex<double> zz_weight = (q + 1.0 / q) / 2.0;
  const std::complex<double> field_weight = (q - 1.0 / q) / 2.0;
  const double scale = exchange / 4.0;
  const std::size_t dim = std::size_t{1} << n_sites;

  ComplexMatrix h(dim, dim);
  for (std::size_t s = 0; s < dim; ++s) {
    for (int left = 1; left < n_sites; ++left) {
      const int right = left + 1;
      const double zl = spin_z(s, left, n_sites);
      const double zr = spin_z(s, right, n_sites);
      h(s, s) += scale * (zz_weight * (zl * zr) - field_weight * (zl - zr));
      if (zl * zr < 0.0) {
        const std::size_t flipped = s ^ (std::size_t{1} << bit_of(left, n_sites)) ^
                                    (std::size_t{1} << bit_of(right, n_sites));
        h(flipped, s) += 2.0 * scale;
      }
    }
  }
  return h;
}

ComplexMatrix build_qg_block_hamiltonian(double exchange, std::complex<double> q) {
  return build_qg_chain_hamiltonian(3, exchange, q);
}

std::complex<double> qg_block_ground_energy(double exchange, std::complex<double> q) {
  return -exchange / 4.0 * (2.0 + q + 1.0 / q);
}

}  // namespace xxzqrg

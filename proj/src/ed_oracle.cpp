#include "xxzqrg/ed_oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>

#include "xxzqrg/entanglement.hpp"
#include "xxzqrg/error.hpp"
#include "xxzqrg/qg_flow.hpp"
#include "xxzqrg/rg_flow.hpp"

namespace xxzqrg {

namespace {

struct EigenPair {
  double value;
  std::vector<double> vector;
};

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t i) {
  while (parent[i] != i) {
    parent[i] = parent[parent[i]];
    i = parent[i];
  }
  return i;
}

std::vector<std::vector<std::size_t>> connected_components(const Matrix& h) {
  const std::size_t n = h.rows();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (h(i, j) != 0.0 || h(j, i) != 0.0) {
        const std::size_t a = find_root(parent, i);
        const std::size_t b = find_root(parent, j);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }
  std::vector<std::vector<std::size_t>> groups(n);
  for (std::size_t i = 0; i < n; ++i) groups[find_root(parent, i)].push_back(i);
  std::erase_if(groups, [](const auto& g) { return g.empty(); });
  return groups;
}

std::vector<EigenPair> all_eigenpairs(const Matrix& h) {
  if (!h.is_square() || !is_symmetric(h)) {
    throw InvalidArgument("ed_ground: matrix must be square and symmetric");
  }
  std::vector<EigenPair> pairs;
  pairs.reserve(h.rows());
  for (const auto& group : connected_components(h)) {
    Matrix block(group.size(), group.size());
    for (std::size_t a = 0; a < group.size(); ++a) {
      for (std::size_t b = 0; b < group.size(); ++b) block(a, b) = h(group[a], group[b]);
    }
    const auto eig = eigh_symmetric(block);
    for (std::size_t k = 0; k < group.size(); ++k) {
      std::vector<double> v(h.rows(), 0.0);
      for (std::size_t a = 0; a < group.size(); ++a) v[group[a]] = eig.eigenvectors(a, k);
      pairs.push_back({eig.eigenvalues[k], std::move(v)});
    }
  }
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const EigenPair& x, const EigenPair& y) { return x.value < y.value; });
  return pairs;
}

double ground_deficit(const Matrix& ground_space, std::span<const double> state) {
  double captured = 0.0;
  for (std::size_t k = 0; k < ground_space.cols(); ++k) {
    const auto column = ground_space.column(k);
    const double overlap = dot(column, state);
    captured += overlap * overlap;
  }
  return 1.0 - captured / dot(state, state);
}

double magnetization(std::span<const double> state, int n_sites) {
  double sz = 0.0;
  for (std::size_t s = 0; s < state.size(); ++s) {
    const int down = std::popcount(s);
    sz += state[s] * state[s] * 0.5 * (n_sites - 2 * down);
  }
  return sz;
}

}  // namespace

EDResult ed_ground(const Matrix& h) {
  const auto pairs = all_eigenpairs(h);
  const double e0 = pairs.front().value;
  const double window = kDegeneracyTolerance * std::max(1.0, std::abs(e0));

  std::vector<std::vector<double>> ground;
  for (const auto& p : pairs) {
    if (p.value - e0 > window) break;
    ground.push_back(p.vector);
  }
  double residual = 0.0;
  for (const auto& v : ground) {
    const auto hv = h * std::span<const double>(v);
    for (std::size_t i = 0; i < v.size(); ++i) {
      residual = std::max(residual, std::abs(hv[i] - e0 * v[i]));
    }
  }
  return EDResult{e0, static_cast<int>(ground.size()), Matrix::from_columns(ground), residual};
}

BlockGroundCheck verify_block_ground_state(double anisotropy, double exchange) {
  const CouplingState coupling(exchange, anisotropy);
  const auto ed = ed_ground(build_block_hamiltonian(coupling));
  const auto projector = build_projector(anisotropy);
  double deficit = 0.0;
  for (std::size_t k = 0; k < 2; ++k) {
    deficit = std::max(deficit, ground_deficit(ed.ground_space, projector.columns.column(k)));
  }
  return {deficit, std::abs(ed.energy - block_ground_energy(coupling)), ed.degeneracy,
          ed.degeneracy == 2};
}

BlockGroundCheck verify_qg_block_ground_state(double anisotropy, double exchange) {
  const QGCoupling coupling = qg_from_delta(anisotropy, exchange);
  if (coupling.region != QGRegion::gapped) {
    throw InvalidArgument("verify_qg_block_ground_state: needs Delta > 1 (real q)");
  }
  const Matrix h = build_qg_block_hamiltonian(exchange, coupling.q).real_part();
  const auto ed = ed_ground(h);
  double deficit = 0.0;
  for (Partner partner : {Partner::up, Partner::down}) {
    const auto state = qg_ground_state(coupling, partner);
    std::vector<double> real_state(8);
    for (std::size_t i = 0; i < 8; ++i) real_state[i] = state.amplitudes[i].real();
    deficit = std::max(deficit, ground_deficit(ed.ground_space, real_state));
  }
  const double e0 = qg_block_ground_energy(exchange, coupling.q).real();
  return {deficit, std::abs(ed.energy - e0), ed.degeneracy, ed.degeneracy == 2};
}

ChainMeasures chain_measures_exact(int n_sites, double anisotropy, Boundary boundary,
                                   ChainPartition partition, double exchange) {
  if (n_sites < 2 || n_sites > kMaxExactChainSites) {
    std::ostringstream msg;
    msg << "chain_measures_exact: site count " << n_sites << " outside [2, "
        << kMaxExactChainSites << "]";
    throw InvalidArgument(msg.str());
  }
  const auto ed = ed_ground(build_chain_hamiltonian(n_sites, CouplingState(exchange, anisotropy),
                                                    boundary));
  // Every ground vector lies in one S^z sector; rank the sectors.
  const auto preference = [](double sz) {
    if (std::abs(sz - 0.5) < 1e-9) return 0.0;
    return sz > -1e-9 ? 1.0 + sz : 100.0 - sz;
  };
  std::size_t chosen = 0;
  std::vector<double> sz(ed.ground_space.cols());
  for (std::size_t k = 0; k < sz.size(); ++k) {
    sz[k] = magnetization(ed.ground_space.column(k), n_sites);
    if (preference(sz[k]) < preference(sz[chosen])) chosen = k;
  }
  const int sector_degeneracy = static_cast<int>(std::count_if(
      sz.begin(), sz.end(), [&](double m) { return std::abs(m - sz[chosen]) < 1e-9; }));

  const auto state = ed.ground_space.column(chosen);
  const int site[] = {partition.site};
  const int pair[] = {partition.pair.first, partition.pair.second};
  const Matrix rho_site = reduced_density_matrix(state, n_sites, site);
  Matrix rho_pair = reduced_density_matrix(state, n_sites, pair);
  // Renormalize away roundoff in the trace before validating.
  rho_pair *= 1.0 / rho_pair.trace();

  return ChainMeasures{ed.energy,
                       ed.degeneracy,
                       sz[chosen],
                       sector_degeneracy,
                       von_neumann_entropy(rho_site),
                       wootters_concurrence(TwoQubitDensityMatrix(rho_pair))};
}

EffectiveHamiltonianCheck project_two_blocks(const CouplingState& coupling) {
  const Matrix p = build_projector(coupling.anisotropy).columns;
  const Matrix p2 = kron(p, p);
  const Matrix h6 = build_chain_hamiltonian(6, coupling, Boundary::open);
  Matrix projected = p2.transpose() * (h6 * p2);

  Matrix expected = build_chain_hamiltonian(2, rg_step(coupling), Boundary::open);
  expected += 2.0 * block_ground_energy(coupling) * Matrix::identity(4);
  const double err = max_abs_diff(projected, expected);
  return {std::move(projected), std::move(expected), err};
}

EffectiveHamiltonianCheck project_two_qg_blocks(double anisotropy, double exchange) {
  const QGCoupling coupling = qg_from_delta(anisotropy, exchange);
  if (coupling.region != QGRegion::gapped) {
    throw InvalidArgument("project_two_qg_blocks: needs Delta > 1 (real q)");
  }
  Matrix p(8, 2);
  for (Partner partner : {Partner::up, Partner::down}) {
    const auto state = qg_ground_state(coupling, partner);
    const std::size_t col = partner == Partner::up ? 0 : 1;
    for (std::size_t i = 0; i < 8; ++i) p(i, col) = state.amplitudes[i].real();
  }
  const Matrix p2 = kron(p, p);
  const Matrix h6 = build_qg_chain_hamiltonian(6, exchange, coupling.q).real_part();
  Matrix projected = p2.transpose() * (h6 * p2);

  // Projected single-site fields: sigma^z_1 -> a + xi sigma^z', sigma^z_3 ->
  // -a + xi sigma^z', with a = (q - 1/q) / (2 (q + 1/q + 1)). The bond
  // therefore leaves the constant (J/4)[(q - 1/q) a - Delta a^2].
  const double q = coupling.q.real();
  const double a = (q - 1.0 / q) / (2.0 * (q + 1.0 / q + 1.0));
  const double shift = exchange / 4.0 * ((q - 1.0 / q) * a - anisotropy * a * a) +
                       2.0 * qg_block_ground_energy(exchange, coupling.q).real();

  const QGCoupling next = qg_rg_step(coupling);
  Matrix expected = build_qg_chain_hamiltonian(2, next.exchange, next.q).real_part();
  expected += shift * Matrix::identity(4);
  const double err = max_abs_diff(projected, expected);
  return {std::move(projected), std::move(expected), err};
}

}  // namespace xxzqrg

#include "xxzqrg/qg_flow.hpp"

#include <algorithm>
#include <cmath>

#include "xxzqrg/entanglement.hpp"
#include "xxzqrg/error.hpp"
#include "xxzqrg/rg_flow.hpp"

namespace xxzqrg {

QGCoupling qg_from_delta(double anisotropy, double exchange) {
  if (!(anisotropy >= 0.0) || !std::isfinite(anisotropy)) {
    throw InvalidArgument("qg_from_delta: anisotropy must be finite and >= 0");
  }
  if (!(exchange > 0.0) || !std::isfinite(exchange)) {
    throw InvalidArgument("qg_from_delta: exchange coupling must be positive");
  }
  if (anisotropy <= 1.0) {
    return {exchange, std::polar(1.0, std::acos(anisotropy)), anisotropy, QGRegion::critical};
  }
  const double q = anisotropy + std::sqrt(anisotropy * anisotropy - 1.0);
  return {exchange, {q, 0.0}, anisotropy, QGRegion::gapped};
}

double qg_renormalization_factor(const QGCoupling& coupling) {
  const double s = 2.0 * coupling.anisotropy;  // q + 1/q
  const double denominator = 2.0 * (s + 1.0);
  if (denominator == 0.0) throw InvalidArgument("qg_renormalization_factor: q + 1/q = -1");
  return (s + 2.0) / denominator;
}

QGCoupling qg_rg_step(const QGCoupling& coupling) {
  const double xi = qg_renormalization_factor(coupling);
  QGCoupling next = coupling;
  next.exchange = xi * xi * coupling.exchange;
  return next;
}

QGGroundState qg_ground_state(const QGCoupling& coupling, Partner partner) {
  const std::complex<double> root = std::sqrt(coupling.q);
  const std::complex<double> inv_root = 1.0 / root;
  const std::array<std::complex<double>, 3> raw{-root, root + inv_root, -inv_root};

  double norm2 = 0.0;
  for (const auto& a : raw) norm2 += std::norm(a);
  const double inv_norm = 1.0 / std::sqrt(norm2);

  QGGroundState state;
  state.partner = partner;
  const auto& sector = partner == Partner::up ? kSectorUp : kSectorDown;
  for (std::size_t k = 0; k < 3; ++k) state.amplitudes[sector[k]] = raw[k] * inv_norm;
  return state;
}

std::array<double, 2> qg_site2_populations(const QGGroundState& state) {
  std::array<double, 2> p{0.0, 0.0};
  for (std::size_t s = 0; s < 8; ++s) {
    // Middle site is bit 1 of the three-site index.
    p[(s >> 1) & 1U] += std::norm(state.amplitudes[s]);
  }
  return p;
}

double qg_entropy(double anisotropy, int steps) {
  if (steps < 0) throw InvalidArgument("qg_entropy: steps must be >= 0");
  QGCoupling coupling = qg_from_delta(anisotropy);
  if (coupling.region == QGRegion::critical) {
    for (int k = 0; k < steps; ++k) coupling = qg_rg_step(coupling);
    const auto p = qg_site2_populations(qg_ground_state(coupling));
    return binary_entropy(std::clamp(p[0], 0.0, 1.0));
  }
  return renormalized_measures(anisotropy, steps).entropy;
}

std::vector<QGSweepRow> qg_sweep(std::span<const double> anisotropies, int steps) {
  if (steps < 0) throw InvalidArgument("qg_sweep: steps must be >= 0");
  std::vector<QGSweepRow> rows;
  rows.reserve(anisotropies.size());
  for (double d : anisotropies) rows.push_back({d, steps, qg_entropy(d, steps)});
  return rows;
}

}  // namespace xxzqrg

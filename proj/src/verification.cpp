#include "xxzqrg/verification.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "xxzqrg/block_hamiltonian.hpp"
#include "xxzqrg/ed_oracle.hpp"
#include "xxzqrg/entanglement.hpp"
#include "xxzqrg/error.hpp"
#include "xxzqrg/qg_flow.hpp"
#include "xxzqrg/rg_flow.hpp"
#include "xxzqrg/scaling.hpp"

namespace xxzqrg {

namespace {

class Tally {
 public:
  Tally(std::string name, double tolerance) {
    result_.name = std::move(name);
    result_.tolerance = tolerance;
  }

  void error(double e) {
    ++result_.checks;
    if (!std::isfinite(e) || e > result_.tolerance) ++result_.failures;
    if (std::isfinite(e)) {
      result_.max_error = std::max(result_.max_error, e);
    } else {
      result_.max_error = e;
    }
  }

  void condition(bool ok) {
    ++result_.checks;
    if (!ok) ++result_.failures;
  }

  SuiteResult done() { return result_; }

 private:
  SuiteResult result_;
};

std::vector<double> grid(double lo, double hi, int points) {
  std::vector<double> g(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (points - 1);
  }
  return g;
}

// Long-double reimplementation of the flow and measures, independent of the
// double-precision closed forms it checks.
long double q_ld(long double d) { return -(d + std::sqrt(d * d + 8.0L)) / 2.0L; }

long double composed_measure(long double d, int steps, bool entropy) {
  for (int k = 0; k < steps; ++k) {
    const long double q = q_ld(d);
    d = d * q * q / 4.0L;
  }
  const long double q = q_ld(d);
  const long double p = 2.0L / (2.0L + q * q);
  if (!entropy) return p;
  const long double ln2 = std::log(2.0L);
  return -(p * std::log(p) + (1.0L - p) * std::log1p(-p)) / ln2;
}

}  // namespace

long double finite_difference_reference(double anisotropy, int steps, bool entropy,
                                        long double step) {
  const long double d = anisotropy;
  return (composed_measure(d + step, steps, entropy) - composed_measure(d - step, steps, entropy)) /
         (2.0L * step);
}

SuiteResult verify_block_ed(const VerificationConfig& config) {
  Tally tally("block-ed", config.pick(config.ed_tolerance));
  for (double d : grid(0.0, 5.0, 50)) {
    const auto check = verify_block_ground_state(d);
    tally.error(check.energy_error);
    tally.error(check.deficit);
    tally.condition(check.degeneracy_ok);

    // Three-site chain ED reproduces the closed-form measures.
    const auto exact = chain_measures_exact(3, d, Boundary::open);
    tally.error(std::abs(exact.site_entropy - entropy_site2(d)));
    tally.error(std::abs(exact.pair_concurrence - concurrence_closed_form(d)));
  }
  return tally.done();
}

SuiteResult verify_qg_ed(const VerificationConfig& config) {
  Tally tally("qg-ed", config.pick(config.ed_tolerance));
  for (double d : grid(1.1, 5.0, 40)) {
    const auto check = verify_qg_block_ground_state(d);
    tally.error(check.energy_error);
    tally.error(check.deficit);
    tally.condition(check.degeneracy_ok);
    tally.error(project_two_qg_blocks(d).max_error);
  }
  // Pure-phase q: the boundary fields are imaginary, so check H psi = e0 psi
  // directly on the complex doublet.
  for (double d : grid(0.0, 1.0, 21)) {
    const QGCoupling coupling = qg_from_delta(d);
    const ComplexMatrix h = build_qg_block_hamiltonian(coupling.exchange, coupling.q);
    const auto e0 = qg_block_ground_energy(coupling.exchange, coupling.q);
    for (Partner partner : {Partner::up, Partner::down}) {
      const auto psi = qg_ground_state(coupling, partner);
      const auto h_psi = h.apply(psi.amplitudes);
      double residual = 0.0;
      for (std::size_t i = 0; i < 8; ++i) {
        residual = std::max(residual, std::abs(h_psi[i] - e0 * psi.amplitudes[i]));
      }
      tally.error(residual);
    }
  }
  return tally.done();
}

SuiteResult verify_effective_hamiltonian(const VerificationConfig& config) {
  Tally tally("effective-hamiltonian", config.pick(config.ed_tolerance));
  for (double d : grid(0.0, 3.0, 20)) {
    tally.error(project_two_blocks(CouplingState(1.0, d)).max_error);
  }
  return tally.done();
}

SuiteResult verify_closed_forms(const VerificationConfig& config) {
  Tally tally("closed-forms", config.pick(config.closed_form_tolerance));
  const int pair[] = {1, 3};
  const int middle[] = {2};
  for (double d : grid(0.0, 5.0, 200)) {
    for (Partner partner : {Partner::up, Partner::down}) {
      const Matrix rho = density_matrix(d, partner);
      const TwoQubitDensityMatrix rho13(partial_trace(rho, 3, pair));
      tally.error(std::abs(wootters_concurrence(rho13) - concurrence_closed_form(d)));
      tally.error(std::abs(von_neumann_entropy(partial_trace(rho, 3, middle)) - entropy_site2(d)));
    }
  }
  return tally.done();
}

SuiteResult verify_chain_rule(const VerificationConfig& config) {
  Tally tally("chain-rule", config.pick(config.chain_rule_tolerance));
  constexpr int kMaxSteps = 6;
  constexpr double kExclusion = 1e-3;
  for (Measure measure : {Measure::entropy, Measure::concurrence}) {
    const bool entropy = measure == Measure::entropy;
    for (int n = 0; n <= kMaxSteps; ++n) {
      double minimum = -1.0;
      try {
        minimum = locate_minimum(n, measure).position;
      } catch (const NoInteriorMinimum&) {
      }
      for (double d : grid(0.5, 1.8, 131)) {
        if (minimum > 0.0 && std::abs(d - minimum) < kExclusion) continue;
        const long double reference = finite_difference_reference(d, n, entropy);
        const double analytic = derivative_chain(d, n, measure);
        const long double scale = std::abs(reference) > 0.0L ? std::abs(reference) : 1.0L;
        tally.error(static_cast<double>(std::abs(analytic - reference) / scale));
      }
    }
  }
  return tally.done();
}

SuiteResult verify_qg_criticality(const VerificationConfig& config) {
  Tally tally("qg-criticality", config.pick(config.qg_tolerance));
  constexpr int kMaxSteps = 9;
  double previous = 2.0;
  for (double d : grid(0.0, 1.0, 101)) {
    const double e0 = qg_entropy(d, 0);
    for (int n = 1; n <= kMaxSteps; ++n) tally.error(std::abs(qg_entropy(d, n) - e0));
    tally.condition(e0 < previous);
    previous = e0;

    // J after n steps is xi^(2n) J.
    QGCoupling c = qg_from_delta(d);
    const double xi = qg_renormalization_factor(c);
    for (int n = 1; n <= kMaxSteps; ++n) {
      c = qg_rg_step(c);
      const double expected = std::pow(xi, 2 * n);
      tally.error(std::abs(c.exchange - expected) / expected);
    }
  }
  tally.error(std::abs(qg_entropy(0.0) - 1.0));
  tally.error(std::abs(qg_entropy(1.0) - binary_entropy(1.0 / 3.0)));

  const double qg_j = qg_rg_step(qg_from_delta(1.0)).exchange;
  tally.error(std::abs(qg_j - 4.0 / 9.0));
  tally.error(std::abs(qg_j - rg_step(CouplingState(1.0, 1.0)).exchange));
  return tally.done();
}

std::vector<SuiteResult> run_all_suites(const VerificationConfig& config) {
  return {verify_block_ed(config),       verify_qg_ed(config),
          verify_effective_hamiltonian(config), verify_closed_forms(config),
          verify_chain_rule(config),     verify_qg_criticality(config)};
}

}  // namespace xxzqrg

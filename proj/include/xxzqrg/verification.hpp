#pragma once

// Oracle-equivalence suites behind `xxzqrg verify`. Each suite compares an
// analytic result with an independent computation on a grid and reports the
// worst deviation.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace xxzqrg {

struct SuiteResult {
  std::string name;
  std::size_t checks = 0;
  std::size_t failures = 0;
  double max_error = 0.0;
  double tolerance = 0.0;

  bool passed() const noexcept { return failures == 0; }
};

/// Default tolerances; `override_tolerance` replaces all of them.
struct VerificationConfig {
  double ed_tolerance = 1e-10;
  double closed_form_tolerance = 1e-12;
  double chain_rule_tolerance = 1e-5;  // relative
  double qg_tolerance = 1e-14;
  std::optional<double> override_tolerance;

  double pick(double value) const { return override_tolerance.value_or(value); }
};

/// Block ED on 50 points of [0, 5]: energy, ground-space deficit and the
/// three-site chain measures against their closed forms.
SuiteResult verify_block_ed(const VerificationConfig& config = {});

/// Quantum-group block: ED at real q for Delta in (1, 5], eigen-residual of
/// the complex doublet for Delta in [0, 1], two-block projection at real q.
SuiteResult verify_qg_ed(const VerificationConfig& config = {});

/// Two-block projected Hamiltonian on 20 points of [0, 3].
SuiteResult verify_effective_hamiltonian(const VerificationConfig& config = {});

/// Wootters concurrence and numeric entropy of the brute-force reduced
/// density matrices against the closed forms, 200 points of [0, 5].
SuiteResult verify_closed_forms(const VerificationConfig& config = {});

/// Analytic chained derivative against a central difference of the composed
/// measure (long double, step 1e-7) for n <= 6, Delta in [0.5, 1.8], both
/// measures, skipping 1e-3 around each minimum.
SuiteResult verify_chain_rule(const VerificationConfig& config = {});

/// Quantum-group entropy on the critical line: step independence,
/// monotonicity, end points, the xi^(2n) flow of J and the isotropic match
/// J' = 4J/9.
SuiteResult verify_qg_criticality(const VerificationConfig& config = {});

std::vector<SuiteResult> run_all_suites(const VerificationConfig& config = {});

/// Reference for the chain-rule suite: central difference of F(Delta_n(Delta))
/// computed entirely in long double.
long double finite_difference_reference(double anisotropy, int steps, bool entropy,
                                        long double step = 1e-7L);

}  // namespace xxzqrg

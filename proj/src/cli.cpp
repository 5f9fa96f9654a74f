#include "xxzqrg/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "xxzqrg/entanglement.hpp"
#include "xxzqrg/error.hpp"
#include "xxzqrg/qg_flow.hpp"
#include "xxzqrg/rg_flow.hpp"
#include "xxzqrg/scaling.hpp"
#include "xxzqrg/verification.hpp"

namespace xxzqrg {

namespace {

constexpr int kMaxListedStep = 39;  // 3^(n+1) must fit in 64 bits

class UsageError : public Error {
 public:
  using Error::Error;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> delta_grid(const RunConfig& c) {
  std::vector<double> g(static_cast<std::size_t>(c.points));
  for (int i = 0; i < c.points; ++i) {
    g[static_cast<std::size_t>(i)] = c.delta_min + (c.delta_max - c.delta_min) * i / (c.points - 1);
  }
  g.back() = c.delta_max;
  return g;
}

std::vector<int> steps_or(const RunConfig& c, int first, int last) {
  if (!c.steps.empty()) return c.steps;
  std::vector<int> s;
  for (int n = first; n <= last; ++n) s.push_back(n);
  return s;
}

void require_grid(const RunConfig& c) {
  if (!(c.delta_min < c.delta_max)) throw UsageError("--delta-min must be below --delta-max");
  if (c.delta_min < 0.0) throw UsageError("--delta-min must be >= 0");
  if (c.points < 2) throw UsageError("--points must be >= 2");
}

void require_listed_steps(const std::vector<int>& steps) {
  for (int n : steps) {
    if (n > kMaxListedStep) {
      throw UsageError("--steps entries must not exceed " + std::to_string(kMaxListedStep));
    }
  }
}

void write_grid_summary(const RunConfig& c, const std::vector<int>& steps, std::ostream& out) {
  out << "# delta_min=" << fmt(c.delta_min) << '\n';
  out << "# delta_max=" << fmt(c.delta_max) << '\n';
  out << "# points=" << c.points << '\n';
  out << "# steps=";
  for (std::size_t k = 0; k < steps.size(); ++k) out << (k ? " " : "") << steps[k];
  out << '\n';
  out << "# measure=" << c.measure << '\n';
}

void cmd_sweep(const RunConfig& c, std::ostream& out) {
  require_grid(c);
  const auto steps = steps_or(c, 0, 6);
  require_listed_steps(steps);
  const bool all = c.measure == "all";
  const bool want_c = all || c.measure == "concurrence";
  const bool want_f = all || c.measure == "eof";
  const bool want_e = all || c.measure == "entropy";

  write_grid_summary(c, steps, out);
  out << "# derivative=" << (c.derivative ? 1 : 0) << '\n';
  out << "delta,n,N_effective";
  if (want_c) out << ",concurrence";
  if (want_f) out << ",eof";
  if (want_e) out << ",entropy";
  if (c.derivative && want_c) out << ",d_concurrence";
  if (c.derivative && want_e) out << ",d_entropy";
  out << '\n';

  const auto deltas = delta_grid(c);
  for (int n : steps) {
    for (double d : deltas) {
      const auto r = renormalized_measures(d, n);
      out << fmt(d) << ',' << n << ',' << r.effective_size;
      if (want_c) out << ',' << fmt(r.concurrence);
      if (want_f) out << ',' << fmt(r.formation);
      if (want_e) out << ',' << fmt(r.entropy);
      if (c.derivative && want_c) out << ',' << fmt(derivative_chain(d, n, Measure::concurrence));
      if (c.derivative && want_e) out << ',' << fmt(derivative_chain(d, n, Measure::entropy));
      out << '\n';
    }
  }
}

void cmd_flow(const RunConfig& c, std::ostream& out) {
  if (c.steps.size() > 1) throw UsageError("flow takes a single --steps value");
  const int max_steps = c.steps.empty() ? 30 : c.steps.front();
  const auto traj = rg_trajectory(CouplingState(1.0, c.delta0), max_steps);
  const char* termination = "max_steps";
  if (traj.termination == RGTrajectory::Termination::ising_guard) termination = "ising_guard";
  if (traj.termination == RGTrajectory::Termination::settled) termination = "settled";

  out << "# delta0=" << fmt(c.delta0) << '\n';
  out << "# max_steps=" << max_steps << '\n';
  out << "# termination=" << termination << '\n';
  out << "step,J,delta\n";
  for (int n = 0; n <= traj.last_step(); ++n) {
    const auto& s = traj.at(n);
    out << n << ',' << fmt(s.exchange) << ',' << fmt(s.anisotropy) << '\n';
  }
}

void cmd_scaling(const RunConfig& c, std::ostream& out) {
  if (c.fit_min_step < 0 || c.fit_max_step - c.fit_min_step < 3) {
    throw UsageError("fit window must span at least 4 steps starting at >= 0");
  }
  if (c.fit_max_step > kMaxListedStep) {
    throw UsageError("--fit-max-step must not exceed " + std::to_string(kMaxListedStep));
  }
  if (!(c.bracket_low < c.bracket_high) || c.bracket_low < 0.0) {
    throw UsageError("minimum bracket must satisfy 0 <= low < high");
  }
  std::vector<Measure> measures;
  if (c.measure == "all" || c.measure == "entropy") measures.push_back(Measure::entropy);
  if (c.measure == "all" || c.measure == "concurrence") measures.push_back(Measure::concurrence);
  if (measures.empty()) throw UsageError("scaling supports --measure entropy, concurrence or all");

  const FitWindow window{c.fit_min_step, c.fit_max_step};
  const Bracket bracket{c.bracket_low, c.bracket_high};
  std::vector<MeasureScaling> studies;
  for (Measure m : measures) studies.push_back(scaling_study(m, window, bracket));

  const double nu = correlation_length_exponent();
  out << "# fit_min_step=" << window.min_step << '\n';
  out << "# fit_max_step=" << window.max_step << '\n';
  out << "# nu_analytic=" << fmt(nu) << '\n';
  out << "# one_over_nu=" << fmt(1.0 / nu) << '\n';
  for (const auto& s : studies) {
    const std::string m(to_string(s.measure));
    out << "# " << m << "_theta_position=" << fmt(s.position.exponent) << '\n';
    out << "# " << m << "_r2_position=" << fmt(s.position.r_squared) << '\n';
    out << "# " << m << "_theta_magnitude=" << fmt(s.magnitude.exponent) << '\n';
    out << "# " << m << "_r2_magnitude=" << fmt(s.magnitude.r_squared) << '\n';
    out << "# " << m << "_nu_deviation=" << fmt(std::abs(s.magnitude.exponent - 1.0 / nu)) << '\n';
  }
  out << "measure,n,N,delta_m,min_derivative\n";
  for (const auto& s : studies) {
    for (const auto& p : s.minima) {
      out << to_string(s.measure) << ',' << p.step << ',' << p.size << ',' << fmt(p.position) << ','
          << fmt(p.value) << '\n';
    }
  }
}

void cmd_qg(const RunConfig& c, std::ostream& out) {
  require_grid(c);
  if (c.measure != "all" && c.measure != "entropy") {
    throw UsageError("qg supports --measure entropy or all");
  }
  const auto steps = steps_or(c, 0, 9);
  require_listed_steps(steps);
  write_grid_summary(c, steps, out);
  out << "delta,n,E_q\n";
  const auto deltas = delta_grid(c);
  for (int n : steps) {
    for (const auto& row : qg_sweep(deltas, n)) {
      out << fmt(row.anisotropy) << ',' << row.step << ',' << fmt(row.entropy) << '\n';
    }
  }
}

bool cmd_verify(const RunConfig& c, std::ostream& out) {
  VerificationConfig config;
  config.override_tolerance = c.tolerance;
  const auto suites = run_all_suites(config);
  std::size_t failed = 0;
  std::size_t checks = 0;
  for (const auto& s : suites) {
    checks += s.checks;
    if (!s.passed()) ++failed;
  }
  out << "# suites=" << suites.size() << '\n';
  out << "# checks=" << checks << '\n';
  out << "# failed_suites=" << failed << '\n';
  out << "# status=" << (failed == 0 ? "pass" : "fail") << '\n';
  out << "suite,checks,failures,max_error,tolerance,status\n";
  for (const auto& s : suites) {
    out << s.name << ',' << s.checks << ',' << s.failures << ',' << fmt(s.max_error) << ','
        << fmt(s.tolerance) << ',' << (s.passed() ? "pass" : "fail") << '\n';
  }
  return failed == 0;
}

}  // namespace

std::vector<int> parse_step_list(const std::string& text) {
  std::vector<int> steps;
  std::stringstream ss(text);
  std::string item;
  const auto to_int = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (s.empty() || used != s.size() || v < 0) {
      throw InvalidArgument("step list: '" + s + "' is not a non-negative integer");
    }
    return v;
  };
  while (std::getline(ss, item, ',')) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      steps.push_back(to_int(item));
      continue;
    }
    const int lo = to_int(item.substr(0, dots));
    const int hi = to_int(item.substr(dots + 2));
    if (hi < lo) throw InvalidArgument("step list: empty range '" + item + "'");
    for (int n = lo; n <= hi; ++n) steps.push_back(n);
  }
  if (steps.empty()) throw InvalidArgument("step list: no steps given");
  return steps;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  std::string steps_text;

  CLI::App app{"Quantum renormalization group of the XXZ chain: entanglement sweeps, "
               "flows, finite-size scaling and verification."};
  app.name("xxzqrg");
  app.require_subcommand(1);

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--delta-min", config.delta_min, "Lower end of the anisotropy grid")
        ->capture_default_str();
    sub->add_option("--delta-max", config.delta_max, "Upper end of the anisotropy grid")
        ->capture_default_str();
    sub->add_option("--points", config.points, "Grid points (>= 2)")->capture_default_str();
    sub->add_option("--steps", steps_text, "RG steps, e.g. 0..6 or 0,3,9");
    sub->add_option("--measure", config.measure, "concurrence|entropy|eof|all")
        ->check(CLI::IsMember({"concurrence", "entropy", "eof", "all"}))
        ->capture_default_str();
    sub->add_option("--out", config.out, "Output file (default: stdout)");
  };

  auto* sweep = app.add_subcommand("sweep", "Measures on a Delta grid for each RG step");
  add_common(sweep);
  sweep->add_flag("--derivative", config.derivative,
                  "Append dF/dDelta columns for concurrence and entropy");

  auto* flow = app.add_subcommand("flow", "Trajectory of (J, Delta) under the RG map");
  add_common(flow);
  flow->add_option("--delta0", config.delta0, "Bare anisotropy")->capture_default_str();

  auto* scaling = app.add_subcommand("scaling", "Minima of dF/dDelta and power-law fits");
  add_common(scaling);
  scaling->add_option("--fit-min-step", config.fit_min_step)->capture_default_str();
  scaling->add_option("--fit-max-step", config.fit_max_step)->capture_default_str();
  scaling->add_option("--bracket-low", config.bracket_low, "Minimum search bracket, exclusive")
      ->capture_default_str();
  scaling->add_option("--bracket-high", config.bracket_high, "Minimum search bracket, inclusive")
      ->capture_default_str();

  auto* qg = app.add_subcommand("qg", "Middle-site entropy with quantum-group boundary terms");
  add_common(qg);

  auto* verify = app.add_subcommand("verify", "Run the oracle-equivalence suites");
  add_common(verify);
  verify->add_option("--tolerance", config.tolerance, "Replace every suite tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitSuccess : kExitUsage;
  }
  config.command = app.get_subcommands().front()->get_name();

  try {
    if (!steps_text.empty()) config.steps = parse_step_list(steps_text);

    std::ofstream file;
    std::ostream* sink = &out;
    if (!config.out.empty()) {
      file.open(config.out);
      if (!file) throw UsageError("cannot open output file '" + config.out + "'");
      sink = &file;
    }

    bool ok = true;
    if (config.command == "sweep") cmd_sweep(config, *sink);
    if (config.command == "flow") cmd_flow(config, *sink);
    if (config.command == "scaling") cmd_scaling(config, *sink);
    if (config.command == "qg") cmd_qg(config, *sink);
    if (config.command == "verify") ok = cmd_verify(config, *sink);
    sink->flush();
    if (!ok) {
      err << "xxzqrg: verification failed\n";
      return kExitFailure;
    }
    return kExitSuccess;
  } catch (const UsageError& e) {
    err << "xxzqrg " << config.command << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    err << "xxzqrg " << config.command << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "xxzqrg " << config.command << ": " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace xxzqrg

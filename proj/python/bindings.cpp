#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "xxzqrg/block_hamiltonian.hpp"
#include "xxzqrg/ed_oracle.hpp"
#include "xxzqrg/entanglement.hpp"
#include "xxzqrg/error.hpp"
#include "xxzqrg/qg_flow.hpp"
#include "xxzqrg/rg_flow.hpp"
#include "xxzqrg/scaling.hpp"
#include "xxzqrg/verification.hpp"

namespace py = pybind11;
using namespace xxzqrg;

namespace {

Matrix to_matrix(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 2) throw InvalidArgument("expected a 2-d array");
  Matrix m(static_cast<std::size_t>(a.shape(0)), static_cast<std::size_t>(a.shape(1)));
  auto r = a.unchecked<2>();
  for (py::ssize_t i = 0; i < a.shape(0); ++i) {
    for (py::ssize_t j = 0; j < a.shape(1); ++j) m(i, j) = r(i, j);
  }
  return m;
}

py::array_t<double> to_array(const Matrix& m) {
  py::array_t<double> a({m.rows(), m.cols()});
  auto w = a.mutable_unchecked<2>();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) w(i, j) = m(i, j);
  }
  return a;
}

Measure parse_measure(const std::string& name) {
  if (name == "entropy") return Measure::entropy;
  if (name == "concurrence") return Measure::concurrence;
  throw InvalidArgument("measure must be 'entropy' or 'concurrence'");
}

py::dict fit_dict(const ScalingFit& f) {
  py::dict d;
  d["exponent"] = f.exponent;
  d["intercept"] = f.intercept;
  d["r_squared"] = f.r_squared;
  return d;
}

}  // namespace

PYBIND11_MODULE(_xxzqrg, m) {
  m.doc() = "Quantum renormalization group of the XXZ chain.";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<NoInteriorMinimum>(m, "NoInteriorMinimum", base.ptr());
  py::register_exception<FitError>(m, "FitError", base.ptr());

  // flow
  m.def("q_of_delta", &q_of_delta, py::arg("delta"));
  m.def("delta_map", &delta_map, py::arg("delta"));
  m.def("d_delta_prime", &d_delta_prime, py::arg("delta"));
  m.def(
      "rg_step",
      [](double j, double delta) {
        const auto c = rg_step(CouplingState(j, delta));
        return py::make_tuple(c.exchange, c.anisotropy);
      },
      py::arg("exchange"), py::arg("delta"), "One RG step; returns (J', Delta').");
  m.def(
      "rg_trajectory",
      [](double delta0, int max_steps) {
        std::vector<std::pair<double, double>> out;
        for (const auto& c : rg_trajectory(CouplingState(1.0, delta0), max_steps).steps) {
          out.emplace_back(c.exchange, c.anisotropy);
        }
        return out;
      },
      py::arg("delta0"), py::arg("max_steps") = 30);
  m.def("effective_size", &effective_size, py::arg("step"));
  m.def("correlation_length_exponent", &correlation_length_exponent);

  // measures
  m.def("concurrence", &concurrence_closed_form, py::arg("delta"));
  m.def("entropy", &entropy_site2, py::arg("delta"));
  m.def("entanglement_of_formation", &entanglement_of_formation, py::arg("concurrence"));
  m.def(
      "wootters_concurrence",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& rho) {
        return wootters_concurrence(TwoQubitDensityMatrix(to_matrix(rho)));
      },
      py::arg("rho"));
  m.def(
      "block_density_matrix", [](double delta) { return to_array(density_matrix(delta)); },
      py::arg("delta"));
  m.def(
      "renormalized_measures",
      [](double delta, int steps) {
        const auto r = renormalized_measures(delta, steps);
        py::dict d;
        d["delta"] = r.renormalized_anisotropy;
        d["size"] = r.effective_size;
        d["concurrence"] = r.concurrence;
        d["eof"] = r.formation;
        d["entropy"] = r.entropy;
        return d;
      },
      py::arg("delta"), py::arg("steps"));

  // scaling
  m.def(
      "derivative_chain",
      [](double delta, int steps, const std::string& measure) {
        return derivative_chain(delta, steps, parse_measure(measure));
      },
      py::arg("delta"), py::arg("steps"), py::arg("measure") = "entropy");
  m.def(
      "locate_minimum",
      [](int steps, const std::string& measure) {
        const auto r = locate_minimum(steps, parse_measure(measure));
        return py::make_tuple(r.position, r.value);
      },
      py::arg("steps"), py::arg("measure") = "entropy");
  m.def(
      "scaling_study",
      [](const std::string& measure, int min_step, int max_step) {
        const auto s = scaling_study(parse_measure(measure), FitWindow{min_step, max_step});
        py::dict d;
        d["position"] = fit_dict(s.position);
        d["magnitude"] = fit_dict(s.magnitude);
        std::vector<py::tuple> minima;
        for (const auto& p : s.minima) minima.push_back(py::make_tuple(p.step, p.size, p.position, p.value));
        d["minima"] = minima;
        return d;
      },
      py::arg("measure") = "entropy", py::arg("min_step") = 2, py::arg("max_step") = 12);

  // quantum group
  m.def("qg_entropy", &qg_entropy, py::arg("delta"), py::arg("steps") = 0);
  m.def(
      "qg_exchange_after",
      [](double delta, int steps) {
        QGCoupling c = qg_from_delta(delta);
        for (int k = 0; k < steps; ++k) c = qg_rg_step(c);
        return c.exchange;
      },
      py::arg("delta"), py::arg("steps"));

  // exact diagonalization
  m.def(
      "chain_hamiltonian",
      [](int n, double delta, bool periodic) {
        return to_array(build_chain_hamiltonian(n, CouplingState(1.0, delta),
                                                periodic ? Boundary::periodic : Boundary::open));
      },
      py::arg("n_sites"), py::arg("delta"), py::arg("periodic") = false);
  m.def(
      "chain_measures_exact",
      [](int n, double delta, bool periodic) {
        const auto r = chain_measures_exact(n, delta, periodic ? Boundary::periodic : Boundary::open);
        py::dict d;
        d["energy"] = r.ground_energy;
        d["degeneracy"] = r.degeneracy;
        d["magnetization"] = r.magnetization;
        d["site_entropy"] = r.site_entropy;
        d["pair_concurrence"] = r.pair_concurrence;
        return d;
      },
      py::arg("n_sites"), py::arg("delta"), py::arg("periodic") = false);

  m.def(
      "verify",
      [](std::optional<double> tolerance) {
        VerificationConfig config;
        config.override_tolerance = tolerance;
        std::vector<py::dict> out;
        for (const auto& s : run_all_suites(config)) {
          py::dict d;
          d["name"] = s.name;
          d["checks"] = s.checks;
          d["failures"] = s.failures;
          d["max_error"] = s.max_error;
          d["tolerance"] = s.tolerance;
          d["passed"] = s.passed();
          out.push_back(d);
        }
        return out;
      },
      py::arg("tolerance") = py::none());
}

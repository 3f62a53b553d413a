#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qnls/bae.hpp"
#include "qnls/momrep.hpp"
#include "qnls/serialize.hpp"
#include "qnls/suites.hpp"
#include "qnls/wavefn.hpp"

namespace py = pybind11;
using namespace qnls;

namespace {

BetheRoute bethe_route(const std::string& name) {
  if (name == "explicit") return BetheRoute::explicit_sum;
  if (name == "symmetrize") return BetheRoute::symmetrize;
  if (name == "creation") return BetheRoute::creation;
  throw std::invalid_argument("route must be explicit, symmetrize or creation");
}

PrewaveRoute prewave_route(const std::string& name) {
  if (name == "orbit") return PrewaveRoute::orbit;
  if (name == "propagation") return PrewaveRoute::propagation;
  if (name == "creation") return PrewaveRoute::creation;
  if (name == "creation_plus") return PrewaveRoute::creation_plus;
  throw std::invalid_argument("route must be orbit, propagation, creation or creation_plus");
}

py::dict result_dict(const IdentityResult& r) {
  py::dict d;
  d["identity_id"] = r.identity_id;
  d["paper_ref"] = r.paper_ref;
  d["n"] = r.n;
  d["gamma"] = r.gamma;
  d["L"] = r.L;
  d["max_residual"] = r.max_residual;
  d["tolerance"] = r.tolerance;
  d["samples"] = r.samples;
  d["pass"] = r.pass;
  d["error"] = r.error;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bethe equations, wavefunctions and identity suites for the quantum nonlinear Schroedinger model";

  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
  py::register_exception<RegularityError>(m, "RegularityError", PyExc_ValueError);

  py::class_<AlcoveFunction>(m, "AlcoveFunction")
      .def_property_readonly("n", &AlcoveFunction::n)
      .def("__call__", [](const AlcoveFunction& f, const std::vector<double>& x) { return f(x); }, py::arg("x"))
      .def("to_json", [](const AlcoveFunction& f) { return nlohmann::json(f).dump(); });

  m.def(
      "solve_bae",
      [](const std::vector<double>& quantum_numbers, double gamma, double L, int max_iterations) {
        const auto s = solve_bae(QuantumNumbers::from_values(quantum_numbers), gamma, L, max_iterations);
        py::dict d;
        d["lambda"] = s.lambda;
        d["residual"] = s.residual;
        d["iterations"] = s.iterations;
        return d;
      },
      py::arg("quantum_numbers"), py::arg("gamma"), py::arg("L"), py::arg("max_iterations") = 100);

  m.def("bae_residual", &bae_residual_norm, py::arg("lam"), py::arg("gamma"), py::arg("L"));

  m.def(
      "prewavefunction",
      [](const std::vector<cplx>& lam, double gamma, double L, const std::string& route) {
        auto f = prewavefunction(make_rapidities(lam, gamma, L), prewave_route(route));
        f.set_continuous(true);
        return f;
      },
      py::arg("lam"), py::arg("gamma"), py::arg("L"), py::arg("route") = "orbit");

  m.def(
      "bethe_wavefunction",
      [](const std::vector<cplx>& lam, double gamma, double L, const std::string& route) {
        auto f = bethe_wavefunction(make_rapidities(lam, gamma, L), bethe_route(route));
        f.set_continuous(true);
        return f;
      },
      py::arg("lam"), py::arg("gamma"), py::arg("L"), py::arg("route") = "explicit");

  m.def(
      "transfer_eigenvalue",
      [](cplx mu, const std::vector<cplx>& lam, double gamma, double L) {
        return transfer_eigenvalue(mu, make_rapidities(lam, gamma, L));
      },
      py::arg("mu"), py::arg("lam"), py::arg("gamma"), py::arg("L"));

  m.def("suite_names", &suite_names);

  m.def(
      "run_suite",
      [](const std::string& name, int n, int max_n, double gamma, double L, std::uint64_t seed, int points) {
        SuiteConfig cfg{n, max_n, gamma, L, seed, points};
        std::vector<IdentityResult> rows;
        {
          py::gil_scoped_release release;
          rows = run_suite(name, cfg);
        }
        py::list out;
        for (const auto& r : rows) out.append(result_dict(r));
        return out;
      },
      py::arg("name"), py::arg("n") = 2, py::arg("max_n") = 3, py::arg("gamma") = 1.0, py::arg("L") = 10.0,
      py::arg("seed") = 1, py::arg("points") = 20);
}

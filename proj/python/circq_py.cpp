#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "circq/angle.hpp"
#include "circq/cylinder.hpp"
#include "circq/quantize.hpp"
#include "circq/semiclassics.hpp"
#include "circq/version.hpp"

namespace py = pybind11;
using namespace circq;

namespace {

FiducialSpec make_spec(double epsilon, double delta, double gamma, double zeta, double lambda,
                       const std::string& kappa_mode) {
  FiducialSpec s;
  s.epsilon = epsilon;
  s.delta = delta;
  s.gamma = gamma;
  s.zeta = zeta;
  s.lambda = lambda;
  if (kappa_mode == "ratio")
    s.kappa_mode = KappaMode::Ratio;
  else if (kappa_mode == "unit")
    s.kappa_mode = KappaMode::Unit;
  else
    throw ConfigError("kappa_mode must be 'ratio' or 'unit'");
  return s;
}

CylinderModel make_model(double sigma, int n_max) {
  CylinderModel m;
  m.sigma = sigma;
  m.n_max = n_max;
  m.validate();
  return m;
}

}  // namespace

PYBIND11_MODULE(_circq, mod) {
  mod.doc() = "Coherent-state quantisation on the circle";
  mod.attr("__version__") = version;

  py::register_exception<ConfigError>(mod, "ConfigError", PyExc_ValueError);
  py::register_exception<NumericalError>(mod, "NumericalError", PyExc_ArithmeticError);

  py::class_<FiducialSpec>(mod, "FiducialSpec")
      .def(py::init(&make_spec), py::arg("epsilon") = 1.0, py::arg("delta") = 0.3,
           py::arg("gamma") = pi / 2, py::arg("zeta") = 0.0, py::arg("lambda_") = 0.0,
           py::arg("kappa_mode") = "ratio")
      .def_readonly("epsilon", &FiducialSpec::epsilon)
      .def_readonly("delta", &FiducialSpec::delta)
      .def_readonly("gamma", &FiducialSpec::gamma)
      .def("admissible", &FiducialSpec::admissible);

  py::class_<CoherentFamily>(mod, "CoherentFamily")
      .def(py::init([](const FiducialSpec& s) { return make_family(s); }), py::arg("spec"))
      .def("eta", [](const CoherentFamily& f, double a) { return f.eta(a); })
      .def("eta_derivative", [](const CoherentFamily& f, double a, int order) {
        return f.eta.derivative(a, order);
      })
      .def("c", [](const CoherentFamily& f, double nu) { return f.table.c(nu); })
      .def_property_readonly("kappa", [](const CoherentFamily& f) { return f.table.kappa; })
      .def_property_readonly("c_eta", [](const CoherentFamily& f) { return f.table.c_eta; })
      .def("density", [](const CoherentFamily& f, double a) { return density_E(f)(a); });

  py::class_<AngleProfile>(mod, "AngleProfile")
      .def_readonly("mean_q", &AngleProfile::mean_q)
      .def_readonly("spectrum_lo", &AngleProfile::spectrum_lo)
      .def_readonly("spectrum_hi", &AngleProfile::spectrum_hi)
      .def_readonly("m", &AngleProfile::m_value)
      .def("multiplier", [](const AngleProfile& p, double a) { return p.multiplier(a); });

  mod.def("angle_operator", [](const CoherentFamily& f) { return angle_operator(f); });
  mod.def("spectrum_halfwidth",
          [](double eps, double delta) { return spectrum_halfwidth(eps, delta); });

  py::class_<AngleContext>(mod, "AngleContext")
      .def(py::init([](const CoherentFamily& f, int cache_grid) {
             return make_angle_context(f, cache_grid);
           }),
           py::arg("family"), py::arg("cache_grid") = 0)
      .def("lower_symbol_angle", [](const AngleContext& c, double q) { return lower_symbol_angle(q, c); })
      .def("dispersion_angle", [](const AngleContext& c, double q) { return dispersion_angle(q, c); })
      .def("heisenberg_rhs", [](const AngleContext& c, double q) { return heisenberg_rhs(q, c); })
      .def("dispersion_p", [](const AngleContext& c, double p) { return dispersion_p(p, c.family); })
      .def("uncertainty_grid", [](const AngleContext& c, const std::vector<double>& ps,
                                  const std::vector<double>& qs) {
        std::vector<std::tuple<double, double, double, double, double, double>> out;
        for (const auto& pt : uncertainty_grid(c, ps, qs))
          out.emplace_back(pt.p, pt.q, pt.delta_a, pt.delta_p, pt.rhs, pt.product);
        return out;
      });

  mod.def("fourier_table", [](const std::vector<double>& eps, double delta) {
    std::vector<std::tuple<double, double, double, double>> out;
    for (const auto& r : fourier_eigenstate_table(eps, delta))
      out.emplace_back(r.epsilon, r.mean, r.mean_square, r.dispersion);
    return out;
  }, py::arg("epsilons"), py::arg("delta") = 0.3);
  mod.def("uniform_angle_dispersion", &uniform_angle_dispersion);

  mod.def("overlap", [](int n, int n2, double sigma) { return overlap(n, n2, make_model(sigma, 0)); },
          py::arg("n"), py::arg("n2"), py::arg("sigma") = 1.0);
  mod.def("d_m", [](int m, double p, double sigma) { return d_m(m, p, make_model(sigma, 0)); },
          py::arg("m"), py::arg("p"), py::arg("sigma") = 1.0);
  mod.def("lower_symbol_commutator", [](double p0, double q0, double sigma) {
    return lower_symbol_commutator(p0, q0, make_model(sigma, 0));
  }, py::arg("p0"), py::arg("q0"), py::arg("sigma") = 1.0);
}

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kglab/config.hpp"
#include "kglab/evolution.hpp"
#include "kglab/experiments.hpp"
#include "kglab/functionals.hpp"
#include "kglab/ground_state.hpp"
#include "kglab/limit.hpp"
#include "kglab/log.hpp"
#include "kglab/multiplier.hpp"
#include "kglab/nonlinearity.hpp"
#include "kglab/projectors.hpp"

namespace py = pybind11;
using namespace kglab;

namespace {

py::array_t<Complex> to_numpy(const SpectralField& f) {
  const GridSpec& g = f.grid();
  std::vector<py::ssize_t> shape(g.dim(), g.n());
  py::array_t<Complex> out(shape);
  std::copy(f.values().begin(), f.values().end(), out.mutable_data());
  return out;
}

SpectralField from_numpy(const GridSpec& g, py::array_t<Complex, py::array::c_style | py::array::forcecast> a,
                         Representation rep) {
  if (static_cast<std::size_t>(a.size()) != g.size())
    throw Error("array has " + std::to_string(a.size()) + " values, grid has " + std::to_string(g.size()));
  CVector values(a.data(), a.data() + a.size());
  return SpectralField(g, std::move(values), rep);
}

py::dict trajectory_dict(const TrajectoryRecord& rec) {
  py::dict d;
  d["times"] = rec.times;
  d["mass"] = rec.mass;
  d["h1_norm"] = rec.h1_norm;
  d["potential_integral"] = rec.potential_integral;
  std::vector<double> energy;
  for (const auto& r : rec.reports) energy.push_back(r.total);
  d["energy"] = energy;
  d["blowup"] = rec.blowup;
  d["blowup_time"] = rec.blowup_time;
  d["nan"] = rec.nan;
  return d;
}

}  // namespace

PYBIND11_MODULE(kglab, m) {
  m.doc() = "Spectral lab for the mass-critical Klein-Gordon equation and its Schroedinger limit";

  py::register_exception<Error>(m, "Error", PyExc_ValueError);

  py::enum_<Representation>(m, "Representation")
      .value("Physical", Representation::Physical)
      .value("Frequency", Representation::Frequency);

  py::class_<GridSpec>(m, "Grid")
      .def(py::init(&make_grid), py::arg("dim"), py::arg("n"), py::arg("half_width"))
      .def_property_readonly("dim", &GridSpec::dim)
      .def_property_readonly("n", &GridSpec::n)
      .def_property_readonly("half_width", &GridSpec::half_width)
      .def_property_readonly("spacing", &GridSpec::spacing)
      .def_property_readonly("size", &GridSpec::size)
      .def_property_readonly("nyquist", &GridSpec::nyquist)
      .def("__repr__", [](const GridSpec& g) {
        return "Grid(dim=" + std::to_string(g.dim()) + ", n=" + std::to_string(g.n()) +
               ", half_width=" + std::to_string(g.half_width()) + ")";
      });

  py::class_<SpectralField>(m, "Field")
      .def(py::init(&from_numpy), py::arg("grid"), py::arg("values"),
           py::arg("representation") = Representation::Physical)
      .def_static("sample", &SpectralField::sample, py::arg("grid"), py::arg("fn"))
      .def_property_readonly("grid", &SpectralField::grid)
      .def_property_readonly("representation", &SpectralField::representation)
      .def("to_frequency", &SpectralField::to_frequency)
      .def("to_physical", &SpectralField::to_physical)
      .def("values", &to_numpy)
      .def("l2_norm", &SpectralField::l2_norm)
      .def("sobolev_norm", &sobolev_norm, py::arg("s"));

  m.def("c_d_quadrature", &c_d_quadrature, py::arg("dim"), py::arg("nodes") = kAngularNodes);
  m.def("c_d_gamma", &c_d_gamma, py::arg("dim"));
  m.def("g_coefficient", &g_coefficient, py::arg("k"), py::arg("dim"), py::arg("nodes") = kAngularNodes);
  m.def("resonant_average", &resonant_average, py::arg("w"), py::arg("dim"), py::arg("nodes") = kAngularNodes);
  m.def("f_real", &f_real, py::arg("v"), py::arg("dim"));

  py::class_<RadialNorms>(m, "RadialNorms")
      .def_readonly("mass", &RadialNorms::mass)
      .def_readonly("gradient", &RadialNorms::gradient)
      .def_readonly("potential", &RadialNorms::potential);
  py::class_<RadialProfile>(m, "RadialProfile")
      .def_readonly("dim", &RadialProfile::dim)
      .def_readonly("q0", &RadialProfile::q0)
      .def_readonly("r", &RadialProfile::r)
      .def_readonly("q", &RadialProfile::q)
      .def("value", &RadialProfile::value)
      .def("norms", &RadialProfile::norms);
  m.def("solve_ground_state", &solve_ground_state, py::arg("dim"), py::arg("step") = 2.5e-4,
        py::arg("r_max") = 32.0);
  m.def("embed_profile", &embed_profile, py::arg("q"), py::arg("grid"), py::arg("amplitude") = 1.0,
        py::arg("scale") = 1.0);
  m.def("gn_ratio", py::overload_cast<const SpectralField&, const RadialProfile&>(&gn_ratio));

  m.def(
      "energy",
      [](const SpectralField& v, int mu) { return energy_first_order(v, make_nonlinearity(v.grid().dim(), mu)); },
      py::arg("v"), py::arg("mu") = 1);
  m.def(
      "k_functional",
      [](const SpectralField& f, double a, double b, int mu) {
        return k_functional(f, a, b, make_nonlinearity(f.grid().dim(), mu));
      },
      py::arg("phi"), py::arg("alpha"), py::arg("beta"), py::arg("mu") = 1);
  m.def("threshold_energy", &threshold_energy);

  m.def(
      "free_propagate",
      [](const SpectralField& f, double t, const std::string& kind, double lambda) {
        PropagatorKind k = PropagatorKind::KleinGordon;
        if (kind == "schroedinger") {
          k = PropagatorKind::Schroedinger;
        } else if (kind == "scaled") {
          k = PropagatorKind::ScaledKleinGordon;
        } else if (kind != "klein-gordon") {
          throw Error("kind must be klein-gordon, scaled or schroedinger");
        }
        return free_propagate(f, t, {k, lambda});
      },
      py::arg("field"), py::arg("t"), py::arg("kind") = "klein-gordon", py::arg("lam") = 1.0);
  m.def("low_pass", &low_pass, py::arg("field"), py::arg("cutoff"));
  m.def("dispersion_gap", &dispersion_gap, py::arg("lam"), py::arg("cutoff"), py::arg("grid"));

  m.def(
      "evolve",
      [](const SpectralField& v0, double T, double dt, int mu, const std::string& scheme, int stride) {
        StepperConfig sc;
        sc.dt = dt;
        sc.scheme = scheme == "strang" ? Scheme::Strang : Scheme::LawsonRK4;
        Monitors mon;
        mon.stride = stride;
        TrajectoryRecord rec;
        {
          py::gil_scoped_release release;
          rec = evolve(v0, T, sc, make_nonlinearity(v0.grid().dim(), mu), mon);
        }
        return trajectory_dict(rec);
      },
      py::arg("v0"), py::arg("T"), py::arg("dt"), py::arg("mu") = 1, py::arg("scheme") = "lawson",
      py::arg("stride") = 1);

  m.def(
      "propagator_convergence",
      [](double sigma, const std::vector<double>& lambdas, double theta, const std::vector<double>& times,
         const GridSpec& grid) {
        std::vector<std::pair<double, double>> out;
        for (const auto& p : propagator_convergence(gaussian(1.0, sigma), lambdas, theta, times, grid))
          out.emplace_back(p.lambda, p.error);
        return out;
      },
      py::arg("sigma"), py::arg("lambdas"), py::arg("theta"), py::arg("times"), py::arg("grid"));

  m.def("list_experiments", [] {
    std::vector<std::string> names;
    for (const auto& e : list_experiments()) names.emplace_back(e.name);
    return names;
  });
  m.def(
      "run_experiment",
      [](const std::string& name, const std::string& config_text) {
        const ParseResult parsed = parse_config(config_text);
        if (!parsed.ok()) throw Error(format_errors(parsed.errors));
        RunConfig c = parsed.config;
        c.experiment = name;
        ExperimentReport rep;
        {
          py::gil_scoped_release release;
          rep = run_experiment(c);
        }
        py::list checks;
        for (const auto& ch : rep.checks) checks.append(py::make_tuple(ch.name, ch.passed, ch.value, ch.tolerance));
        return py::make_tuple(rep.passed(), checks);
      },
      py::arg("name"), py::arg("config") = "");
}

#include <pybind11/numpy.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <span>
#include <string>
#include <vector>

#include "korteweg/error.hpp"
#include "korteweg/presets.hpp"
#include "korteweg/run.hpp"
#include "korteweg/run_config.hpp"
#include "korteweg/verify.hpp"

namespace py = pybind11;
using namespace korteweg;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Array to_array(const std::vector<double>& v) {
  Array out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

std::span<const double> checked_state(const Array& w, const SemiDiscreteSystem& system) {
  if (w.ndim() != 1 || static_cast<std::size_t>(w.size()) != system.unknowns()) {
    throw py::value_error("state must be a flat array of " + std::to_string(system.unknowns()) +
                          " values [rho | rho u (| rho v)]");
  }
  return {w.data(), static_cast<std::size_t>(w.size())};
}

py::dict measurement_dict(const Measurement& m, int dimension) {
  py::dict d;
  d["mass"] = m.mass;
  d["mom_x"] = m.momentum[0];
  if (dimension == 2) d["mom_y"] = m.momentum[1];
  d["energy"] = m.energy;
  return d;
}

py::list convergence_rows(const ConvergenceTable& table) {
  py::list rows;
  for (const auto& r : table.rows) {
    py::dict d;
    d["n_cells"] = r.n_cells;
    d["errors"] = r.errors;
    d["eoc"] = r.eoc;
    d["steps"] = r.steps;
    d["seconds"] = r.seconds;
    d["failure"] = r.failure;
    rows.append(d);
  }
  return rows;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Finite volume schemes for the Navier-Stokes-Korteweg equations";

  // Later registrations are tried first, so the base class goes first.
  py::register_exception<Error>(m, "SolverError", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<RunConfig>(m, "Config")
      .def(py::init([](const std::string& text) { return parse_config_text(text); }), py::arg("text") = "",
           "Parse key=value text; missing keys take their defaults.")
      .def_static("from_file", &parse_config_file, py::arg("path"), py::arg("base") = RunConfig{})
      .def("set", [](RunConfig& c, const std::string& key, const std::string& value) {
            apply_setting(c, key, value);
            c.validate();
          })
      .def("text", &to_config_text)
      .def_readonly("name", &RunConfig::name)
      .def_readonly("dimension", &RunConfig::dimension)
      .def_readonly("n_cells", &RunConfig::n_cells)
      .def_readonly("levels", &RunConfig::levels)
      .def_readonly("kappa", &RunConfig::kappa)
      .def_readonly("mu", &RunConfig::mu)
      .def_readonly("t_end", &RunConfig::t_end)
      .def_property_readonly("alpha", &RunConfig::effective_alpha)
      .def(py::self == py::self)
      .def("__repr__", [](const RunConfig& c) { return "<Config " + c.name + ">"; });

  m.def("config_keys", &config_keys);
  m.def("preset_names", [] {
    std::vector<std::string> names;
    for (const auto& p : presets()) names.push_back(p.name);
    return names;
  });
  m.def("preset", [](const std::string& name) { return find_preset(name).runs; }, py::arg("name"),
        "Runs of a named preset.");
  m.def("list_presets", &list_presets);

  m.def("initial_state", [](const RunConfig& c, std::size_t n) { return to_array(initial_state(c, n)); },
        py::arg("config"), py::arg("n"), "Packed initial state on n cells per axis.");
  m.def("cell_centers", [](const RunConfig& c, std::size_t n) { return to_array(cell_centers(c, n)); },
        py::arg("config"), py::arg("n"));
  m.def(
      "rhs",
      [](const RunConfig& c, const Array& w, std::size_t n) {
        const auto system = make_system(c, n);
        const auto state = checked_state(w, *system);
        std::vector<double> out(state.size());
        system->rhs(state, out);
        return to_array(out);
      },
      py::arg("config"), py::arg("state"), py::arg("n"), "Semi-discrete right-hand side d/dt w.");
  m.def(
      "measure",
      [](const RunConfig& c, const Array& w, std::size_t n) {
        const auto system = make_system(c, n);
        return measurement_dict(system->measure(checked_state(w, *system)), c.dimension);
      },
      py::arg("config"), py::arg("state"), py::arg("n"), "Total mass, momentum and discrete energy.");

  m.def(
      "run",
      [](const RunConfig& c, const std::string& out_dir, bool write_files) {
        RunOptions options;
        options.write_files = write_files;
        RunResult r;
        {
          py::gil_scoped_release release;
          r = run(c, out_dir, options);
        }
        py::dict d;
        d["ok"] = r.ok;
        d["error"] = r.error;
        d["t"] = r.t;
        d["steps"] = r.steps;
        d["state"] = to_array(r.state);
        d["convergence"] = r.convergence ? py::object(convergence_rows(*r.convergence)) : py::none();
        return d;
      },
      py::arg("config"), py::arg("out_dir") = "out", py::arg("write_files") = true,
      "Run one configuration; returns ok, error, t, steps, the final state and any convergence rows.");

  m.def(
      "verify",
      [](std::uint64_t seed) {
        VerifyOptions options;
        options.seed = seed;
        std::vector<std::tuple<std::string, bool, std::string>> out;
        for (const auto& r : verify_suite(options)) out.emplace_back(r.name, r.pass, r.detail);
        return out;
      },
      py::arg("seed") = VerifyOptions{}.seed, "Randomised scheme property checks: (name, pass, detail) tuples.");
}

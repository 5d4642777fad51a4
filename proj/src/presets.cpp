#include "korteweg/presets.hpp"

#include <numbers>

#include "korteweg/error.hpp"

namespace korteweg {

namespace {

RunConfig mms_1d(Integrator integrator, std::string name) {
  RunConfig c;
  c.name = std::move(name);
  c.dimension = 1;
  c.levels = {32, 64, 128, 256, 512, 1024};
  c.n_cells = c.levels.back();
  c.model = PressureModel::isothermal(1.0);
  c.kappa = 0.01;
  c.mu = 0.01;
  c.integrator = integrator;
  c.t_end = 0.2;
  c.initial.kind = InitialKind::mms;
  c.energy_every = 100;
  return c;
}

std::vector<Preset> build() {
  std::vector<Preset> out;

  out.push_back({"mms1d_implicit", "1D manufactured solution, implicit Euler, N = 32..1024",
                 {mms_1d(Integrator::implicit_euler, "mms1d_implicit")}});
  out.push_back({"mms1d_explicit", "1D manufactured solution, explicit Euler, N = 32..1024",
                 {mms_1d(Integrator::explicit_euler, "mms1d_explicit")}});

  {
    RunConfig c;
    c.name = "mms2d_explicit";
    c.dimension = 2;
    c.levels = {32, 64, 128};
    c.n_cells = 128;
    c.kappa = 0.01;
    c.mu = 0.01;
    c.t_end = 0.2;
    c.initial.kind = InitialKind::mms;
    c.domain_length = 2.0 * std::numbers::pi;
    out.push_back({"mms2d_explicit", "2D manufactured solution on the 2 pi torus, explicit Euler, N = 32^2..128^2",
                   {c}});
  }

  {
    Preset p{"riemann_kappa_sweep", "1D contact Riemann problem (0.25 | 1.25, u = 0), h = 2^-10, t = 0.1", {}};
    const double kappas[] = {0.0, 3e-4, 3e-3, 3e-2};
    const std::size_t every[] = {1, 10, 100, 1000};
    const char* names[] = {"kappa_0", "kappa_0.0003", "kappa_0.003", "kappa_0.03"};
    for (int k = 0; k < 4; ++k) {
      RunConfig c;
      c.name = names[k];
      c.dimension = 1;
      c.n_cells = 1024;
      c.model = PressureModel::isothermal(1.0);
      c.kappa = kappas[k];
      c.mu = 0.0;
      c.t_end = 0.1;
      c.initial.kind = InitialKind::riemann;
      c.energy_every = every[k];
      p.runs.push_back(c);
    }
    out.push_back(std::move(p));
  }

  {
    RunConfig c;
    c.name = "thin_film";
    c.dimension = 1;
    c.n_cells = 1000;
    c.domain_length = 1.0;
    c.origin = -0.5;
    c.model = PressureModel::quadratic(9.81 / 2.0);
    c.kappa = 0.0059;
    c.mu = 0.0;
    c.t_end = 1.0;
    c.initial.kind = InitialKind::thin_film;
    c.energy_every = 1000;
    out.push_back({"thin_film", "shallow-water thin film, rho0 = 1e-3 (1 + exp(-2000 x^2)) on [-1/2, 1/2), h = 1e-3",
                   {c}});
  }
  return out;
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = build();
  return all;
}

const Preset& find_preset(std::string_view name) {
  std::string known;
  for (const auto& p : presets()) {
    if (p.name == name) return p;
    known += (known.empty() ? "" : ", ") + p.name;
  }
  throw ConfigError("unknown preset '" + std::string(name) + "' (known: " + known + ")");
}

std::string list_presets() {
  std::string out;
  for (const auto& p : presets()) {
    out += p.name + ": " + p.summary + "\n";
    for (const auto& run : p.runs) {
      out += "  [" + run.name + "]\n";
      if (run.levels.empty()) {
        out += "    # h = " + format_double(run.domain_length / static_cast<double>(run.n_cells)) + "\n";
      }
      std::string text = to_config_text(run);
      std::size_t start = 0;
      while (start < text.size()) {
        const auto end = text.find('\n', start);
        out += "    " + text.substr(start, end - start) + "\n";
        start = end + 1;
      }
    }
  }
  return out;
}

}  // namespace korteweg

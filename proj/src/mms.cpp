#include "korteweg/mms.hpp"

#include <chrono>
#include <cmath>
#include <memory>
#include <numbers>

#include "korteweg/error.hpp"
#include "korteweg/scheme1d.hpp"
#include "korteweg/scheme2d.hpp"

namespace korteweg {

namespace {

struct Forcing1 {
  double rho;
  double mom;
};

// Residuals in terms of s = sin(theta), c = cos(theta).
Forcing1 forcing_1d(const ManufacturedSolution1D& sol, double k, double s, double c) {
  const double rho = 1.0 + 0.5 * c;
  const double rho_t = -0.5 * s;
  const double rho_x = -0.5 * k * s;
  const double rho_xxx = 0.5 * k * k * k * s;
  const double u = 0.5 * s;
  const double u_t = 0.5 * c;
  const double u_x = 0.5 * k * c;
  const double u_xx = -0.5 * k * k * s;
  Forcing1 f;
  f.rho = rho_t + rho_x * u + rho * u_x;
  // d/dx [rho rho_xx - rho_x^2 / 2] = rho rho_xxx
  f.mom = rho_t * u + rho * u_t + rho_x * u * u + 2.0 * rho * u * u_x + sol.model.derivative(rho) * rho_x -
          sol.mu * u_xx - sol.kappa * rho * rho_xxx;
  return f;
}

struct Forcing2 {
  double rho;
  double mom_x;
  double mom_y;
};

// a = x + t, b = y + t.
Forcing2 forcing_2d(const ManufacturedSolution2D& sol, double sa, double ca, double sb, double cb) {
  const double s2a = 2.0 * sa * ca;
  const double s2b = 2.0 * sb * cb;
  const double rho = 0.5 + sa * sa + cb * cb;
  const double rho_x = s2a;
  const double rho_y = -s2b;
  const double rho_t = rho_x + rho_y;
  const double lap_x = -4.0 * s2a;  // d/dx of the laplacian
  const double lap_y = 4.0 * s2b;

  const double u = sa * cb, v = ca * sb;
  const double u_x = ca * cb, u_y = -sa * sb;
  const double v_x = -sa * sb, v_y = ca * cb;
  const double u_t = u_x + u_y, v_t = v_x + v_y;
  const double dp = sol.model.derivative(rho);

  Forcing2 f;
  f.rho = rho_t + rho_x * u + rho * u_x + rho_y * v + rho * v_y;
  f.mom_x = rho_t * u + rho * u_t + rho_x * u * u + 2.0 * rho * u * u_x + rho_y * u * v + rho * u_y * v +
            rho * u * v_y + dp * rho_x + 2.0 * sol.mu * u - sol.kappa * rho * lap_x;
  f.mom_y = rho_t * v + rho * v_t + rho_y * v * v + 2.0 * rho * v * v_y + rho_x * u * v + rho * u_x * v +
            rho * u * v_x + dp * rho_y + 2.0 * sol.mu * v - sol.kappa * rho * lap_y;
  return f;
}

double wavenumber(const ManufacturedSolution1D& sol) {
  if (!(sol.length > 0.0)) throw ContractError("manufactured solution: length must be positive");
  return 2.0 * std::numbers::pi / sol.length;
}

}  // namespace

double ManufacturedSolution1D::rho(double x, double t) const {
  return 1.0 + 0.5 * std::cos(wavenumber(*this) * x + t);
}
double ManufacturedSolution1D::velocity(double x, double t) const {
  return 0.5 * std::sin(wavenumber(*this) * x + t);
}
double ManufacturedSolution1D::mom(double x, double t) const { return rho(x, t) * velocity(x, t); }
double ManufacturedSolution1D::forcing_rho(double x, double t) const {
  const double k = wavenumber(*this);
  return forcing_1d(*this, k, std::sin(k * x + t), std::cos(k * x + t)).rho;
}
double ManufacturedSolution1D::forcing_mom(double x, double t) const {
  const double k = wavenumber(*this);
  return forcing_1d(*this, k, std::sin(k * x + t), std::cos(k * x + t)).mom;
}

double ManufacturedSolution2D::rho(double x, double y, double t) const {
  const double s = std::sin(x + t), c = std::cos(y + t);
  return 0.5 + s * s + c * c;
}
double ManufacturedSolution2D::velocity_x(double x, double y, double t) const {
  return std::sin(x + t) * std::cos(y + t);
}
double ManufacturedSolution2D::velocity_y(double x, double y, double t) const {
  return std::cos(x + t) * std::sin(y + t);
}
double ManufacturedSolution2D::forcing_rho(double x, double y, double t) const {
  return forcing_2d(*this, std::sin(x + t), std::cos(x + t), std::sin(y + t), std::cos(y + t)).rho;
}
double ManufacturedSolution2D::forcing_mom_x(double x, double y, double t) const {
  return forcing_2d(*this, std::sin(x + t), std::cos(x + t), std::sin(y + t), std::cos(y + t)).mom_x;
}
double ManufacturedSolution2D::forcing_mom_y(double x, double y, double t) const {
  return forcing_2d(*this, std::sin(x + t), std::cos(x + t), std::sin(y + t), std::cos(y + t)).mom_y;
}

State1D mms_fields_1d(const ManufacturedSolution1D& sol, const Grid1D& grid, double t) {
  const std::size_t n = grid.size();
  State1D s{Field1D(n), Field1D(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const double x = grid.center(i);
    s.rho[i] = sol.rho(x, t);
    s.mom[i] = sol.mom(x, t);
  }
  return s;
}

State2D mms_fields_2d(const ManufacturedSolution2D& sol, const Grid2D& grid, double t) {
  const std::size_t n = grid.n();
  State2D s{Field2D(n), Field2D(n), Field2D(n)};
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const double x = grid.center(i), y = grid.center(j);
      const double r = sol.rho(x, y, t);
      s.rho(i, j) = r;
      s.mom_x(i, j) = r * sol.velocity_x(x, y, t);
      s.mom_y(i, j) = r * sol.velocity_y(x, y, t);
    }
  }
  return s;
}

std::vector<double> mms_forcing_1d(const ManufacturedSolution1D& sol, const Grid1D& grid, double t) {
  const std::size_t n = grid.size();
  std::vector<double> out(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = sol.forcing_rho(grid.center(i), t);
    out[n + i] = sol.forcing_mom(grid.center(i), t);
  }
  return out;
}

std::vector<double> mms_forcing_2d(const ManufacturedSolution2D& sol, const Grid2D& grid, double t) {
  const std::size_t n = grid.n();
  const std::size_t cells = grid.cells();
  std::vector<double> out(3 * cells);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const double x = grid.center(i), y = grid.center(j);
      const std::size_t k = grid.index(i, j);
      out[k] = sol.forcing_rho(x, y, t);
      out[cells + k] = sol.forcing_mom_x(x, y, t);
      out[2 * cells + k] = sol.forcing_mom_y(x, y, t);
    }
  }
  return out;
}

Forcing make_forcing(const ManufacturedSolution1D& sol, const Grid1D& grid) {
  const double k = wavenumber(sol);
  const std::size_t n = grid.size();
  auto sx = std::make_shared<std::vector<double>>(n);
  auto cx = std::make_shared<std::vector<double>>(n);
  for (std::size_t i = 0; i < n; ++i) {
    (*sx)[i] = std::sin(k * grid.center(i));
    (*cx)[i] = std::cos(k * grid.center(i));
  }
  return [sol, k, n, sx, cx](double t, std::span<double> out) {
    if (out.size() != 2 * n) throw ContractError("forcing: output has the wrong size");
    const double st = std::sin(t), ct = std::cos(t);
    for (std::size_t i = 0; i < n; ++i) {
      const double s = (*sx)[i] * ct + (*cx)[i] * st;
      const double c = (*cx)[i] * ct - (*sx)[i] * st;
      const Forcing1 f = forcing_1d(sol, k, s, c);
      out[i] = f.rho;
      out[n + i] = f.mom;
    }
  };
}

Forcing make_forcing(const ManufacturedSolution2D& sol, const Grid2D& grid) {
  const std::size_t n = grid.n();
  auto sx = std::make_shared<std::vector<double>>(n);
  auto cx = std::make_shared<std::vector<double>>(n);
  for (std::size_t i = 0; i < n; ++i) {
    (*sx)[i] = std::sin(grid.center(i));
    (*cx)[i] = std::cos(grid.center(i));
  }
  return [sol, n, sx, cx](double t, std::span<double> out) {
    const std::size_t cells = n * n;
    if (out.size() != 3 * cells) throw ContractError("forcing: output has the wrong size");
    const double st = std::sin(t), ct = std::cos(t);
    std::vector<double> s(n), c(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = (*sx)[i] * ct + (*cx)[i] * st;
      c[i] = (*cx)[i] * ct - (*sx)[i] * st;
    }
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < n; ++i) {
        const Forcing2 f = forcing_2d(sol, s[i], c[i], s[j], c[j]);
        const std::size_t k = j * n + i;
        out[k] = f.rho;
        out[cells + k] = f.mom_x;
        out[2 * cells + k] = f.mom_y;
      }
    }
  };
}

double rel_l1_error(std::span<const double> numeric, std::span<const double> exact) {
  if (numeric.size() != exact.size()) throw ContractError("rel_l1_error: size mismatch");
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < exact.size(); ++k) {
    num += std::abs(numeric[k] - exact[k]);
    den += std::abs(exact[k]);
  }
  if (!(den > 0.0)) throw ContractError("rel_l1_error: exact field is identically zero");
  return num / den;
}

std::vector<double> ConvergenceTable::errors(std::size_t var) const {
  std::vector<double> out;
  for (const auto& r : rows) out.push_back(var < r.errors.size() ? r.errors[var] : std::nan(""));
  return out;
}

ConvergenceTable convergence_study(const StudyParams& params, const LevelCallback& on_level) {
  if (params.dimension != 1 && params.dimension != 2) throw ContractError("convergence_study: dimension must be 1 or 2");
  if (params.levels.empty()) throw ContractError("convergence_study: no levels");
  for (std::size_t r = 1; r < params.levels.size(); ++r) {
    if (params.levels[r] <= params.levels[r - 1]) throw ContractError("convergence_study: levels must ascend");
  }
  const SchemeParams scheme{params.kappa, params.mu, params.dissipation};
  TimeParams time;
  time.alpha = params.alpha;
  time.integrator = params.integrator;
  time.t_end = params.t_end;
  time.newton = params.newton;

  ConvergenceTable table;
  table.dimension = params.dimension;
  const std::size_t comps = static_cast<std::size_t>(params.dimension) + 1;
  for (std::size_t n : params.levels) {
    ConvergenceRow row;
    row.n_cells = n;
    const auto start = std::chrono::steady_clock::now();
    try {
      std::vector<double> exact, numeric;
      std::size_t cells = 0;
      if (params.dimension == 1) {
        const ManufacturedSolution1D sol{params.model, params.kappa, params.mu, params.domain_length};
        const Grid1D grid(n, params.domain_length);
        const Scheme1D system(params.model, scheme, grid);
        const Forcing forcing = make_forcing(sol, grid);
        IntegrationOptions opts;
        opts.forcing = &forcing;
        opts.record_every = std::size_t(-1);
        if (params.observe) opts.on_step = params.observe(n);
        auto res = integrate(system, system.pack(mms_fields_1d(sol, grid, 0.0)), time, opts);
        numeric = std::move(res.state);
        exact = system.pack(mms_fields_1d(sol, grid, params.t_end));
        row.steps = res.steps;
        cells = n;
      } else {
        const ManufacturedSolution2D sol{params.model, params.kappa, params.mu};
        const Grid2D grid(n, params.domain_length);
        const Scheme2D system(params.model, scheme, grid);
        const Forcing forcing = make_forcing(sol, grid);
        IntegrationOptions opts;
        opts.forcing = &forcing;
        opts.record_every = std::size_t(-1);
        if (params.observe) opts.on_step = params.observe(n);
        auto res = integrate(system, system.pack(mms_fields_2d(sol, grid, 0.0)), time, opts);
        numeric = std::move(res.state);
        exact = system.pack(mms_fields_2d(sol, grid, params.t_end));
        row.steps = res.steps;
        cells = n * n;
      }
      for (std::size_t a = 0; a < comps; ++a) {
        row.errors.push_back(rel_l1_error(std::span<const double>(numeric).subspan(a * cells, cells),
                                          std::span<const double>(exact).subspan(a * cells, cells)));
      }
    } catch (const Error& e) {
      row.failure = e.what();
      row.errors.assign(comps, std::nan(""));
    }
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!table.rows.empty()) {
      const auto& prev = table.rows.back();
      for (std::size_t a = 0; a < comps; ++a) {
        const double e0 = prev.errors[a], e1 = row.errors[a];
        row.eoc.push_back(e0 > 0.0 && e1 > 0.0 ? std::log2(e0 / e1) : std::nan(""));
      }
    }
    table.rows.push_back(row);
    if (on_level) on_level(table.rows.back());
  }
  return table;
}

}  // namespace korteweg

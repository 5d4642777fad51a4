#include "korteweg/time_integration.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "korteweg/error.hpp"

namespace korteweg {

namespace {

double max_abs(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

bool densities_positive(std::span<const double> w, std::size_t cells) {
  for (std::size_t k = 0; k < cells; ++k) {
    if (!(w[k] > 0.0) || !std::isfinite(w[k])) return false;
  }
  for (std::size_t k = cells; k < w.size(); ++k) {
    if (!std::isfinite(w[k])) return false;
  }
  return true;
}

}  // namespace

void TimeParams::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ContractError("alpha must be positive");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw ContractError("t_end must be finite and >= 0");
  if (newton.max_iter < 1) throw ContractError("newton max_iter must be >= 1");
  if (!(newton.residual_tol > 0.0) || !(newton.step_tol > 0.0)) {
    throw ContractError("newton tolerances must be positive");
  }
}

double compute_dt(double lambda, double h, double mu, double kappa, double alpha) {
  if (!(h > 0.0) || !(alpha > 0.0)) throw ContractError("compute_dt: h and alpha must be positive");
  if (lambda < 0.0 || mu < 0.0 || kappa < 0.0) throw ContractError("compute_dt: negative coefficient");
  const double rate = lambda / h + mu / (h * h) + kappa / (h * h * h);
  if (!(rate > 0.0) || !std::isfinite(rate)) throw ContractError("compute_dt: no finite positive time scale");
  return alpha / rate;
}

double compute_dt(const SemiDiscreteSystem& system, std::span<const double> w, double alpha) {
  return compute_dt(system.lambda(w), system.h(), system.params().mu, system.params().kappa, alpha);
}

double compute_dt(const State1D& state, const PressureModel& model, const SchemeParams& params,
                  const Grid1D& grid, double alpha) {
  return compute_dt(global_lambda(state, model), grid.h(), params.mu, params.kappa, alpha);
}

double compute_dt(const State2D& state, const PressureModel& model, const SchemeParams& params,
                  const Grid2D& grid, double alpha) {
  return compute_dt(global_lambda(state, model), grid.h(), params.mu, params.kappa, alpha);
}

std::vector<double> step_explicit(const SemiDiscreteSystem& system, std::span<const double> w,
                                  double dt, const Forcing* forcing, double t) {
  system.check_state(w);
  if (!(dt >= 0.0) || !std::isfinite(dt)) throw ContractError("step_explicit: dt must be >= 0");
  const std::size_t m = system.unknowns();
  std::vector<double> f(m);
  system.rhs(w, f);
  std::vector<double> out(w.begin(), w.end());
  if (forcing != nullptr && *forcing) {
    std::vector<double> src(m, 0.0);
    (*forcing)(t, src);
    for (std::size_t k = 0; k < m; ++k) f[k] += src[k];
  }
  for (std::size_t k = 0; k < m; ++k) out[k] += dt * f[k];
  for (std::size_t k = 0; k < system.cells(); ++k) {
    if (!(out[k] > 0.0)) {
      throw PositivityError("explicit step at t=" + std::to_string(t) + " produced density " +
                                std::to_string(out[k]) + " at cell " + std::to_string(k) +
                                "; try a smaller alpha",
                            k);
    }
  }
  return out;
}

struct ImplicitEulerSolver::Impl {
  const SemiDiscreteSystem& system;
  NewtonParams params;
  std::size_t unknowns = 0;
  std::vector<std::vector<std::size_t>> color_columns;
  Eigen::SparseMatrix<double> jac;
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;

  Impl(const SemiDiscreteSystem& sys, NewtonParams p) : system(sys), params(p) {
    const std::size_t cells = system.cells();
    const std::size_t comps = system.components();
    unknowns = system.unknowns();

    std::vector<std::vector<std::size_t>> foot(cells);
    for (std::size_t c = 0; c < cells; ++c) {
      foot[c] = system.footprint(c);
      std::sort(foot[c].begin(), foot[c].end());
      foot[c].erase(std::unique(foot[c].begin(), foot[c].end()), foot[c].end());
    }

    // Cells whose footprints overlap may not share a colour. Rows touched by a
    // cell are its footprint, so the conflict set of c is every cell whose
    // footprint contains some member of foot[c].
    std::vector<std::vector<std::size_t>> touching(cells);
    for (std::size_t c = 0; c < cells; ++c) {
      for (std::size_t r : foot[c]) touching[r].push_back(c);
    }
    std::vector<int> cell_color(cells, -1);
    int n_cell_colors = 0;
    std::vector<int> mark;
    for (std::size_t c = 0; c < cells; ++c) {
      mark.assign(static_cast<std::size_t>(n_cell_colors) + 1, 0);
      for (std::size_t r : foot[c]) {
        for (std::size_t other : touching[r]) {
          if (cell_color[other] >= 0) mark[static_cast<std::size_t>(cell_color[other])] = 1;
        }
      }
      int col = 0;
      while (mark[static_cast<std::size_t>(col)]) ++col;
      cell_color[c] = col;
      n_cell_colors = std::max(n_cell_colors, col + 1);
    }
    color_columns.assign(static_cast<std::size_t>(n_cell_colors) * comps, {});
    for (std::size_t a = 0; a < comps; ++a) {
      for (std::size_t c = 0; c < cells; ++c) {
        color_columns[a * static_cast<std::size_t>(n_cell_colors) + static_cast<std::size_t>(cell_color[c])]
            .push_back(a * cells + c);
      }
    }

    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(unknowns * comps * foot[0].size());
    for (std::size_t a = 0; a < comps; ++a) {
      for (std::size_t c = 0; c < cells; ++c) {
        for (std::size_t b = 0; b < comps; ++b) {
          for (std::size_t r : foot[c]) {
            trip.emplace_back(static_cast<int>(b * cells + r), static_cast<int>(a * cells + c), 1.0);
          }
        }
      }
    }
    const int m = static_cast<int>(unknowns);
    jac.resize(m, m);
    jac.setFromTriplets(trip.begin(), trip.end());
    jac.makeCompressed();
    lu.analyzePattern(jac);
  }

  // R(w) = w - wn - dt (F(w) + src); returns max-norm.
  double residual(std::span<const double> w, std::span<const double> wn, double dt,
                  std::span<const double> src, std::vector<double>& f, std::vector<double>& r) const {
    system.rhs(w, f);
    double norm = 0.0;
    for (std::size_t k = 0; k < unknowns; ++k) {
      r[k] = w[k] - wn[k] - dt * (f[k] + src[k]);
      norm = std::max(norm, std::abs(r[k]));
    }
    if (!std::isfinite(norm)) norm = std::numeric_limits<double>::infinity();
    return norm;
  }

  // J = I - dt dF/dw with the global speed of w held fixed.
  void assemble(std::span<const double> w, std::span<const double> f0, double dt) {
    const double lam = system.lambda(w);
    const double sq = std::sqrt(std::numeric_limits<double>::epsilon());
    std::vector<double> wp(w.begin(), w.end());
    std::vector<double> fp(unknowns);
    std::vector<double> eps(unknowns, 0.0);
    double* values = jac.valuePtr();
    const int* outer = jac.outerIndexPtr();
    const int* inner = jac.innerIndexPtr();
    for (const auto& cols : color_columns) {
      if (cols.empty()) continue;
      for (std::size_t col : cols) {
        const double e = sq * (1.0 + std::abs(w[col]));
        const double shifted = w[col] + e;
        eps[col] = shifted - w[col];
        wp[col] = shifted;
      }
      system.rhs(wp, lam, fp);
      for (std::size_t col : cols) {
        const double inv = 1.0 / eps[col];
        for (int p = outer[col]; p < outer[col + 1]; ++p) {
          const auto row = static_cast<std::size_t>(inner[p]);
          double v = -dt * (fp[row] - f0[row]) * inv;
          if (row == col) v += 1.0;
          values[p] = v;
        }
        wp[col] = w[col];
      }
    }
  }

  std::vector<double> solve(std::span<const double> wn, double dt, const Forcing* forcing, double t_next,
                            NewtonReport* report) {
    system.check_state(wn);
    if (!(dt >= 0.0) || !std::isfinite(dt)) throw ContractError("implicit step: dt must be >= 0");
    if (dt == 0.0) {
      if (report) *report = {0, 0.0};
      return {wn.begin(), wn.end()};
    }
    std::vector<double> src(unknowns, 0.0);
    if (forcing != nullptr && *forcing) (*forcing)(t_next, src);

    const double rtol = params.residual_tol * (1.0 + max_abs(wn));
    std::vector<double> w(wn.begin(), wn.end());
    std::vector<double> f(unknowns), r(unknowns), w_try(unknowns), f_try(unknowns), r_try(unknowns);
    double res = residual(w, wn, dt, src, f, r);
    Eigen::VectorXd rhs_vec(static_cast<Eigen::Index>(unknowns));

    for (int it = 0; it < params.max_iter; ++it) {
      if (res <= rtol) {
        if (report) *report = {it, res};
        return w;
      }
      // The Jacobian is taken with the speed of the current iterate frozen.
      std::vector<double> f_frozen(unknowns);
      system.rhs(w, system.lambda(w), f_frozen);
      assemble(w, f_frozen, dt);
      lu.factorize(jac);
      if (lu.info() != Eigen::Success) {
        throw ConvergenceError("Newton: singular Jacobian at t=" + std::to_string(t_next), res);
      }
      for (std::size_t k = 0; k < unknowns; ++k) rhs_vec[static_cast<Eigen::Index>(k)] = -r[k];
      const Eigen::VectorXd delta = lu.solve(rhs_vec);

      double s = 1.0;
      double res_try = std::numeric_limits<double>::infinity();
      bool accepted = false;
      for (int halving = 0; halving < 30; ++halving, s *= 0.5) {
        for (std::size_t k = 0; k < unknowns; ++k) w_try[k] = w[k] + s * delta[static_cast<Eigen::Index>(k)];
        if (!densities_positive(w_try, system.cells())) continue;
        res_try = residual(w_try, wn, dt, src, f_try, r_try);
        if (res_try <= res || res_try <= rtol) {
          accepted = true;
          break;
        }
      }
      if (!accepted) {
        throw ConvergenceError("Newton: line search failed at t=" + std::to_string(t_next), res);
      }
      const double step = s * max_abs(std::span<const double>(delta.data(), unknowns));
      w.swap(w_try);
      f.swap(f_try);
      r.swap(r_try);
      res = res_try;
      if (step <= params.step_tol * (1.0 + max_abs(w))) {
        if (report) *report = {it + 1, res};
        return w;
      }
    }
    if (res <= rtol) {
      if (report) *report = {params.max_iter, res};
      return w;
    }
    throw ConvergenceError("Newton: no convergence in " + std::to_string(params.max_iter) +
                               " iterations at t=" + std::to_string(t_next),
                           res);
  }
};

ImplicitEulerSolver::ImplicitEulerSolver(const SemiDiscreteSystem& system, NewtonParams params)
    : impl_(std::make_unique<Impl>(system, params)) {}

ImplicitEulerSolver::~ImplicitEulerSolver() = default;

std::vector<double> ImplicitEulerSolver::step(std::span<const double> w, double dt, const Forcing* forcing,
                                              double t_next, NewtonReport* report) {
  return impl_->solve(w, dt, forcing, t_next, report);
}

std::size_t ImplicitEulerSolver::colors() const noexcept { return impl_->color_columns.size(); }

std::vector<double> step_implicit(const SemiDiscreteSystem& system, std::span<const double> w, double dt,
                                  const Forcing* forcing, double t_next, const NewtonParams& params,
                                  NewtonReport* report) {
  ImplicitEulerSolver solver(system, params);
  return solver.step(w, dt, forcing, t_next, report);
}

IntegrationResult integrate(const SemiDiscreteSystem& system, std::vector<double> w0, const TimeParams& time,
                            const IntegrationOptions& options) {
  time.validate();
  system.check_state(w0);
  const std::size_t every = std::max<std::size_t>(1, options.record_every);

  IntegrationResult res;
  res.record.dimension = system.dimension();
  std::vector<double> w = std::move(w0);

  auto emit = [&](std::size_t step, double t, double dt, bool keep) {
    const Measurement m = system.measure(w);
    if (keep) res.record.rows.push_back({t, dt, m.mass, m.momentum, m.energy});
    if (options.on_step) options.on_step(StepInfo{step, t, dt, w, m});
  };
  emit(0, 0.0, 0.0, true);

  std::unique_ptr<ImplicitEulerSolver> solver;
  if (time.integrator == Integrator::implicit_euler) {
    solver = std::make_unique<ImplicitEulerSolver>(system, time.newton);
  }

  double t = 0.0;
  std::size_t step = 0;
  while (t < time.t_end) {
    double dt = compute_dt(system, w, time.alpha);
    bool last = false;
    if (t + dt >= time.t_end * (1.0 - 1e-14)) {
      dt = time.t_end - t;
      last = true;
    }
    if (solver) {
      w = solver->step(w, dt, options.forcing, t + dt);
    } else {
      w = step_explicit(system, w, dt, options.forcing, t);
    }
    t = last ? time.t_end : t + dt;
    ++step;
    emit(step, t, dt, last || step % every == 0);
  }
  res.state = std::move(w);
  res.steps = step;
  res.t = t;
  return res;
}

}  // namespace korteweg

#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "korteweg/diagnostics.hpp"
#include "korteweg/scheme1d.hpp"
#include "korteweg/scheme2d.hpp"
#include "korteweg/system.hpp"

namespace korteweg {

enum class Integrator { explicit_euler, implicit_euler };

struct NewtonParams {
  int max_iter = 50;
  double residual_tol = 1e-10;  ///< relative to 1 + max|w^n|
  double step_tol = 1e-12;      ///< relative to 1 + max|w|

  bool operator==(const NewtonParams&) const = default;
};

struct TimeParams {
  double alpha = 0.7;
  Integrator integrator = Integrator::explicit_euler;
  double t_end = 0.0;
  NewtonParams newton{};

  /// alpha = 0.7 for explicit and 20 for implicit stepping.
  static double default_alpha(Integrator integrator) noexcept {
    return integrator == Integrator::implicit_euler ? 20.0 : 0.7;
  }
  void validate() const;
};

/// Source term added to d/dt w. Writes the packed forcing at time t into `out`.
using Forcing = std::function<void(double t, std::span<double> out)>;

/// dt = alpha / (lambda/h + mu/h^2 + kappa/h^3).
double compute_dt(double lambda, double h, double mu, double kappa, double alpha);
double compute_dt(const SemiDiscreteSystem& system, std::span<const double> w, double alpha);
double compute_dt(const State1D& state, const PressureModel& model, const SchemeParams& params,
                  const Grid1D& grid, double alpha);
double compute_dt(const State2D& state, const PressureModel& model, const SchemeParams& params,
                  const Grid2D& grid, double alpha);

/// w + dt (F(w) + forcing(t)). Throws PositivityError if any new density is <= 0.
std::vector<double> step_explicit(const SemiDiscreteSystem& system, std::span<const double> w,
                                  double dt, const Forcing* forcing, double t);

struct NewtonReport {
  int iterations = 0;
  double residual = 0.0;  ///< max-norm of the final residual
};

/// Implicit Euler with Newton iteration on
///
///   R(w) = w - w^n - dt (F(w) + forcing(t^{n+1})) = 0.
///
/// The Jacobian is assembled by finite differences over a colouring of the
/// scheme's footprint, with the global dissipation speed held at the value of
/// the current iterate, and factorised with a sparse LU. The sparsity
/// analysis is done once per solver.
class ImplicitEulerSolver {
 public:
  ImplicitEulerSolver(const SemiDiscreteSystem& system, NewtonParams params = {});
  ~ImplicitEulerSolver();
  ImplicitEulerSolver(const ImplicitEulerSolver&) = delete;
  ImplicitEulerSolver& operator=(const ImplicitEulerSolver&) = delete;

  std::vector<double> step(std::span<const double> w, double dt, const Forcing* forcing,
                           double t_next, NewtonReport* report = nullptr);

  std::size_t colors() const noexcept;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::vector<double> step_implicit(const SemiDiscreteSystem& system, std::span<const double> w,
                                  double dt, const Forcing* forcing, double t_next,
                                  const NewtonParams& params = {}, NewtonReport* report = nullptr);

/// Passed to the per-step callback after every accepted step (and once for
/// the initial state with step = 0).
struct StepInfo {
  std::size_t step = 0;
  double t = 0.0;
  double dt = 0.0;
  std::span<const double> state;
  Measurement measurement;
};
using StepCallback = std::function<void(const StepInfo&)>;

struct IntegrationOptions {
  const Forcing* forcing = nullptr;
  StepCallback on_step;
  /// Keep every k-th step in the record (the initial and final rows are always kept).
  std::size_t record_every = 1;
};

struct IntegrationResult {
  std::vector<double> state;
  DiagnosticsRecord record;
  std::size_t steps = 0;
  double t = 0.0;
};

/// Steps from t = 0 to t_end with the CFL rule re-evaluated every step; the
/// last step is shortened to land exactly on t_end.
IntegrationResult integrate(const SemiDiscreteSystem& system, std::vector<double> w0,
                            const TimeParams& time, const IntegrationOptions& options = {});

}  // namespace korteweg

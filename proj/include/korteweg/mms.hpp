#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "korteweg/grid.hpp"
#include "korteweg/physics.hpp"
#include "korteweg/time_integration.hpp"

namespace korteweg {

/// rho = 1 + cos(theta)/2, rho u = sin(theta)/2 rho with theta = k x + t and
/// k = 2 pi / length, so the fields are periodic on the grid.
///
/// The forcing terms are the residuals of the continuous equations at these
/// fields; adding them to the scheme makes the closed forms an exact solution
/// of the forced PDE.
struct ManufacturedSolution1D {
  PressureModel model = PressureModel::isothermal(1.0);
  double kappa = 0.0;
  double mu = 0.0;
  double length = 1.0;

  double rho(double x, double t) const;
  double velocity(double x, double t) const;
  double mom(double x, double t) const;
  double forcing_rho(double x, double t) const;
  double forcing_mom(double x, double t) const;
};

/// rho = 1/2 + sin^2(x+t) + cos^2(y+t), u = sin(x+t) cos(y+t),
/// v = cos(x+t) sin(y+t). Periodic only on tori whose side is a multiple of pi.
struct ManufacturedSolution2D {
  PressureModel model = PressureModel::isothermal(1.0);
  double kappa = 0.0;
  double mu = 0.0;

  double rho(double x, double y, double t) const;
  double velocity_x(double x, double y, double t) const;
  double velocity_y(double x, double y, double t) const;
  double forcing_rho(double x, double y, double t) const;
  double forcing_mom_x(double x, double y, double t) const;
  double forcing_mom_y(double x, double y, double t) const;
};

/// Exact fields sampled at cell centres.
State1D mms_fields_1d(const ManufacturedSolution1D& sol, const Grid1D& grid, double t);
State2D mms_fields_2d(const ManufacturedSolution2D& sol, const Grid2D& grid, double t);

/// Forcing at cell centres, packed like the scheme's state vector.
std::vector<double> mms_forcing_1d(const ManufacturedSolution1D& sol, const Grid1D& grid, double t);
std::vector<double> mms_forcing_2d(const ManufacturedSolution2D& sol, const Grid2D& grid, double t);

/// Forcing evaluators for the time integrators. The spatial sines and cosines
/// are tabulated once; each call only rotates them by t.
Forcing make_forcing(const ManufacturedSolution1D& sol, const Grid1D& grid);
Forcing make_forcing(const ManufacturedSolution2D& sol, const Grid2D& grid);

/// sum |numeric - exact| / sum |exact|.
double rel_l1_error(std::span<const double> numeric, std::span<const double> exact);

struct StudyParams {
  int dimension = 1;
  Integrator integrator = Integrator::explicit_euler;
  std::vector<std::size_t> levels;
  double t_end = 0.2;
  double kappa = 0.01;
  double mu = 0.01;
  PressureModel model = PressureModel::isothermal(1.0);
  Dissipation dissipation = Dissipation::lax_friedrichs;
  double alpha = 0.7;
  /// Torus side; 1D fields are rescaled to it, 2D fields need a multiple of pi.
  double domain_length = 1.0;
  NewtonParams newton{};
  /// Optional per-level observer: returns the step callback for the run on n cells per axis.
  std::function<StepCallback(std::size_t n_cells)> observe;
};

struct ConvergenceRow {
  std::size_t n_cells = 0;          ///< per axis
  std::vector<double> errors;       ///< rho, mom_x[, mom_y]
  std::vector<double> eoc;          ///< against the previous row; empty for the first
  std::size_t steps = 0;
  double seconds = 0.0;
  std::string failure;              ///< non-empty when the run aborted
};

struct ConvergenceTable {
  int dimension = 1;
  std::vector<ConvergenceRow> rows;

  /// Column `var` (0 = rho, 1 = mom_x, 2 = mom_y) of the error table.
  std::vector<double> errors(std::size_t var) const;
};

/// Called after each level completes.
using LevelCallback = std::function<void(const ConvergenceRow&)>;

ConvergenceTable convergence_study(const StudyParams& params, const LevelCallback& on_level = {});

}  // namespace korteweg

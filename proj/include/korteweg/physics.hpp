#pragma once

#include <cmath>
#include <cstddef>
#include <string>

#include "korteweg/grid.hpp"

namespace korteweg {

enum class PressureKind { quadratic, isothermal };

/// Monotone barotropic pressure law with its potential energy.
///
/// quadratic(a):   p = a rho^2, p' = 2 a rho, P = a rho^2
/// isothermal(c2): p = c2 rho,  p' = c2,      P = c2 rho ln(rho)
///
/// Both potentials satisfy P'(rho) rho - P(rho) = p(rho). P is only unique up
/// to a term c*rho; the representatives above are fixed.
class PressureModel {
 public:
  static PressureModel quadratic(double a);
  static PressureModel isothermal(double c2);

  PressureKind kind() const noexcept { return kind_; }
  double coefficient() const noexcept { return coeff_; }

  double pressure(double rho) const noexcept {
    return kind_ == PressureKind::quadratic ? coeff_ * rho * rho : coeff_ * rho;
  }
  double derivative(double rho) const noexcept {
    return kind_ == PressureKind::quadratic ? 2.0 * coeff_ * rho : coeff_;
  }
  double potential(double rho) const noexcept {
    return kind_ == PressureKind::quadratic ? coeff_ * rho * rho : coeff_ * rho * std::log(rho);
  }
  double potential_derivative(double rho) const noexcept {
    return kind_ == PressureKind::quadratic ? 2.0 * coeff_ * rho : coeff_ * (std::log(rho) + 1.0);
  }

  /// "quadratic:<a>" or "isothermal:<c2>".
  std::string to_string() const;
  bool operator==(const PressureModel&) const = default;

 private:
  PressureModel(PressureKind kind, double coeff) : kind_(kind), coeff_(coeff) {}
  PressureKind kind_;
  double coeff_;
};

PressureModel builtin_pressure(PressureKind kind, double coefficient);

/// Density and momentum on a 1D grid.
struct State1D {
  Field1D rho;
  Field1D mom;

  std::size_t size() const noexcept { return rho.size(); }
  Field1D velocity() const;
  /// Throws PositivityError / ContractError unless rho > 0 and all entries are finite.
  void validate() const;
};

/// Density and momentum components (rho u, rho v) on a 2D grid.
struct State2D {
  Field2D rho;
  Field2D mom_x;
  Field2D mom_y;

  std::size_t n() const noexcept { return rho.n(); }
  Field2D velocity_x() const;
  Field2D velocity_y() const;
  void validate() const;
};

enum class Dissipation { lax_friedrichs, rusanov };

/// kappa = capillarity, mu = viscosity; mu = 0 is the Euler-Korteweg system.
struct SchemeParams {
  double kappa = 0.0;
  double mu = 0.0;
  Dissipation dissipation = Dissipation::lax_friedrichs;

  void validate() const;
};

/// lambda = 1/2 max_i (|u_i| + sqrt(p'(rho_i))); |u| is the Euclidean norm in 2D.
double global_lambda(const State1D& state, const PressureModel& model);
double global_lambda(const State2D& state, const PressureModel& model);

struct Energy1D {
  double total = 0.0;  ///< (1/N) sum E_i
  Field1D per_cell;
};
struct Energy2D {
  double total = 0.0;  ///< (1/N^2) sum E_ij
  Field2D per_cell;
};

/// E_i = 1/2 rho u^2 + P(rho) + kappa/2 |forward-difference gradient of rho|^2.
Energy1D discrete_energy(const State1D& state, const PressureModel& model, double kappa,
                         const Grid1D& grid);
Energy2D discrete_energy(const State2D& state, const PressureModel& model, double kappa,
                         const Grid2D& grid);

struct EntropyVariables1D {
  Field1D v_rho;  ///< P'(rho) - u^2/2 - kappa laplacian(rho)
  Field1D v_u;    ///< u
};
struct EntropyVariables2D {
  Field2D v_rho;
  Field2D v_u;
  Field2D v_v;
};

EntropyVariables1D entropy_variables(const State1D& state, const PressureModel& model, double kappa,
                                     const Grid1D& grid);
EntropyVariables2D entropy_variables(const State2D& state, const PressureModel& model, double kappa,
                                     const Grid2D& grid);

}  // namespace korteweg

#include "korteweg/physics.hpp"

#include <algorithm>
#include <cstdio>
#include <string>

#include "korteweg/error.hpp"

namespace korteweg {

namespace {

void check_density(std::span<const double> rho) {
  for (std::size_t k = 0; k < rho.size(); ++k) {
    if (!std::isfinite(rho[k])) {
      throw ContractError("non-finite density at cell " + std::to_string(k));
    }
    if (!(rho[k] > 0.0)) {
      throw PositivityError("density must be positive, got " + std::to_string(rho[k]) +
                                " at cell " + std::to_string(k),
                            k);
    }
  }
}

void check_finite(std::span<const double> v, const char* what) {
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!std::isfinite(v[k])) {
      throw ContractError(std::string("non-finite ") + what + " at cell " + std::to_string(k));
    }
  }
}

double sound_speed(const PressureModel& model, double rho) {
  const double dp = model.derivative(rho);
  if (dp < 0.0) {
    throw ContractError("pressure law is not monotone: p'(" + std::to_string(rho) + ") < 0");
  }
  return std::sqrt(dp);
}

}  // namespace

PressureModel PressureModel::quadratic(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw ContractError("quadratic pressure coefficient must be positive");
  return PressureModel(PressureKind::quadratic, a);
}

PressureModel PressureModel::isothermal(double c2) {
  if (!(c2 > 0.0) || !std::isfinite(c2)) throw ContractError("isothermal sound speed squared must be positive");
  return PressureModel(PressureKind::isothermal, c2);
}

std::string PressureModel::to_string() const {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", coeff_);
  return std::string(kind_ == PressureKind::quadratic ? "quadratic:" : "isothermal:") + buf;
}

PressureModel builtin_pressure(PressureKind kind, double coefficient) {
  return kind == PressureKind::quadratic ? PressureModel::quadratic(coefficient)
                                         : PressureModel::isothermal(coefficient);
}

Field1D State1D::velocity() const {
  Field1D u(rho.size());
  for (std::size_t i = 0; i < rho.size(); ++i) u[i] = mom[i] / rho[i];
  return u;
}

void State1D::validate() const {
  if (mom.size() != rho.size()) throw ContractError("State1D: rho and mom differ in size");
  check_density(rho.values());
  check_finite(mom.values(), "momentum");
}

Field2D State2D::velocity_x() const {
  Field2D u(rho.n());
  for (std::size_t k = 0; k < rho.size(); ++k) u.values()[k] = mom_x.values()[k] / rho.values()[k];
  return u;
}

Field2D State2D::velocity_y() const {
  Field2D v(rho.n());
  for (std::size_t k = 0; k < rho.size(); ++k) v.values()[k] = mom_y.values()[k] / rho.values()[k];
  return v;
}

void State2D::validate() const {
  if (mom_x.n() != rho.n() || mom_y.n() != rho.n()) {
    throw ContractError("State2D: fields differ in size");
  }
  check_density(rho.values());
  check_finite(mom_x.values(), "x-momentum");
  check_finite(mom_y.values(), "y-momentum");
}

void SchemeParams::validate() const {
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) throw ContractError("kappa must be >= 0");
  if (!(mu >= 0.0) || !std::isfinite(mu)) throw ContractError("mu must be >= 0");
}

double global_lambda(const State1D& state, const PressureModel& model) {
  state.validate();
  double m = 0.0;
  for (std::size_t i = 0; i < state.size(); ++i) {
    const double rho = state.rho[i];
    m = std::max(m, std::abs(state.mom[i] / rho) + sound_speed(model, rho));
  }
  return 0.5 * m;
}

double global_lambda(const State2D& state, const PressureModel& model) {
  state.validate();
  double m = 0.0;
  for (std::size_t k = 0; k < state.rho.size(); ++k) {
    const double rho = state.rho.values()[k];
    const double u = state.mom_x.values()[k] / rho;
    const double v = state.mom_y.values()[k] / rho;
    m = std::max(m, std::hypot(u, v) + sound_speed(model, rho));
  }
  return 0.5 * m;
}

Energy1D discrete_energy(const State1D& state, const PressureModel& model, double kappa,
                         const Grid1D& grid) {
  state.validate();
  if (state.size() != grid.size()) throw ContractError("discrete_energy: state does not match grid");
  const std::size_t n = grid.size();
  const double h = grid.h();
  Energy1D e{0.0, Field1D(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const double rho = state.rho[i];
    const double u = state.mom[i] / rho;
    const double grad = (state.rho.at(static_cast<long long>(i) + 1) - rho) / h;
    e.per_cell[i] = 0.5 * rho * u * u + model.potential(rho) + 0.5 * kappa * grad * grad;
    e.total += e.per_cell[i];
  }
  e.total /= static_cast<double>(n);
  return e;
}

Energy2D discrete_energy(const State2D& state, const PressureModel& model, double kappa,
                         const Grid2D& grid) {
  state.validate();
  if (state.n() != grid.n()) throw ContractError("discrete_energy: state does not match grid");
  const std::size_t n = grid.n();
  const double h = grid.h();
  Energy2D e{0.0, Field2D(n)};
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const long long ii = static_cast<long long>(i), jj = static_cast<long long>(j);
      const double rho = state.rho(i, j);
      const double u = state.mom_x(i, j) / rho;
      const double v = state.mom_y(i, j) / rho;
      const double gx = (state.rho.at(ii + 1, jj) - rho) / h;
      const double gy = (state.rho.at(ii, jj + 1) - rho) / h;
      e.per_cell(i, j) = 0.5 * rho * (u * u + v * v) + model.potential(rho) +
                         0.5 * kappa * (gx * gx + gy * gy);
      e.total += e.per_cell(i, j);
    }
  }
  e.total /= static_cast<double>(n * n);
  return e;
}

EntropyVariables1D entropy_variables(const State1D& state, const PressureModel& model, double kappa,
                                     const Grid1D& grid) {
  state.validate();
  if (state.size() != grid.size()) throw ContractError("entropy_variables: state does not match grid");
  const std::size_t n = grid.size();
  const Field1D lap = apply_1d(OpKind::laplacian, state.rho, grid);
  EntropyVariables1D ev{Field1D(n), Field1D(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const double rho = state.rho[i];
    const double u = state.mom[i] / rho;
    ev.v_rho[i] = model.potential_derivative(rho) - 0.5 * u * u - kappa * lap[i];
    ev.v_u[i] = u;
  }
  return ev;
}

EntropyVariables2D entropy_variables(const State2D& state, const PressureModel& model, double kappa,
                                     const Grid2D& grid) {
  state.validate();
  if (state.n() != grid.n()) throw ContractError("entropy_variables: state does not match grid");
  const std::size_t n = grid.n();
  const Field2D lap = apply_2d(OpKind::laplacian, Axis::both, state.rho, grid);
  EntropyVariables2D ev{Field2D(n), Field2D(n), Field2D(n)};
  for (std::size_t k = 0; k < n * n; ++k) {
    const double rho = state.rho.values()[k];
    const double u = state.mom_x.values()[k] / rho;
    const double v = state.mom_y.values()[k] / rho;
    ev.v_rho.values()[k] = model.potential_derivative(rho) - 0.5 * (u * u + v * v) - kappa * lap.values()[k];
    ev.v_u.values()[k] = u;
    ev.v_v.values()[k] = v;
  }
  return ev;
}

}  // namespace korteweg

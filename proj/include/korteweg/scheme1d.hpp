#pragma once

#include <vector>

#include "korteweg/grid.hpp"
#include "korteweg/physics.hpp"
#include "korteweg/system.hpp"

namespace korteweg {

/// Time derivatives (d rho/dt, d(rho u)/dt) of the 1D scheme.
///
/// Sign convention: these are +d/dt, i.e. the negation of the right-hand
/// sides F^rho, F^{rho u} that appear with -d/dt on the left of the scheme.
struct Rhs1D {
  Field1D d_rho;
  Field1D d_mom;
};

/// Interface quantity of the capillarity flux at x_{i+1/2}:
///
///   G_i = (rho_{i+1} lap(rho)_i + rho_i lap(rho)_{i+1}) / 2 - (forward(rho)_i)^2 / 2
///
/// The momentum equation receives kappa * backward(G).
Field1D capillarity_flux_1d(const Field1D& rho, const Grid1D& grid);

/// Semi-discrete right-hand side of the 1D Navier-Stokes-Korteweg scheme.
///
///   d rho/dt   = -central(rho u) + D(rho)
///   d(rho u)/dt = -central(rho u^2) - central(p) + D(rho u) + mu lap(u) + kappa backward(G)
///
/// D is lambda h lap(.) for Lax-Friedrichs, with lambda recomputed from the
/// state, or the interface-weighted Rusanov form
/// lambda_{i+1/2} forward(.)_i - lambda_{i-1/2} backward(.)_i.
Rhs1D rhs_1d(const State1D& state, const PressureModel& model, const SchemeParams& params,
             const Grid1D& grid);

/// Reusable evaluator of the 1D scheme over packed states [rho | rho u].
class Scheme1D final : public SemiDiscreteSystem {
 public:
  Scheme1D(PressureModel model, SchemeParams params, Grid1D grid);

  int dimension() const override { return 1; }
  std::size_t cells() const override { return grid_.size(); }
  double h() const override { return grid_.h(); }
  const PressureModel& model() const override { return model_; }
  const SchemeParams& params() const override { return params_; }
  const Grid1D& grid() const { return grid_; }

  double lambda(std::span<const double> w) const override;
  using SemiDiscreteSystem::rhs;
  void rhs(std::span<const double> w, double lambda, std::span<double> out) const override;
  std::vector<std::size_t> footprint(std::size_t cell) const override;
  Measurement measure(std::span<const double> w) const override;

  std::vector<double> pack(const State1D& state) const;
  State1D unpack(std::span<const double> w) const;

 private:
  PressureModel model_;
  SchemeParams params_;
  Grid1D grid_;
  // Periodically padded scratch, two ghost cells per side.
  mutable std::vector<double> rho_, mom_, u_, lap_, flux_g_, diss_rho_, diss_mom_, speed_;
};

}  // namespace korteweg

#pragma once

#include <vector>

#include "korteweg/grid.hpp"
#include "korteweg/physics.hpp"
#include "korteweg/system.hpp"

namespace korteweg {

/// Time derivatives (+d/dt) of rho, rho u and rho v for the 2D scheme.
struct Rhs2D {
  Field2D d_rho;
  Field2D d_mom_x;
  Field2D d_mom_y;
};

struct CapillarityBlocks2D {
  Field2D x_block;  ///< kappa-weighted capillarity force on rho u
  Field2D y_block;  ///< kappa-weighted capillarity force on rho v
};

/// Capillarity forces of the 2D scheme, evaluated with the plain difference
/// operators. With lap the full 2D laplacian:
///
///   x_block = kappa [ backward_x((rho_{i,j} lap_{i+1,j} + rho_{i+1,j} lap_{i,j}) / 2)
///                     - 1/2 backward_x((forward_x rho_{i,j})^2)
///                     + 1/2 backward_x(backward_y rho_{i+1,j} backward_y rho_{i,j})
///                     - backward_y(central_x rho_{i,j} forward_y rho_{i,j}) ]
///
/// and y_block is the same expression with the roles of x and y exchanged.
CapillarityBlocks2D capillarity_blocks_2d(const Field2D& rho, double kappa, const Grid2D& grid);

/// Semi-discrete right-hand side of the 2D scheme (square cells only).
///
/// Terms are summed in the fixed order convective, pressure, dissipation,
/// viscosity, capillarity. Rusanov dissipation acts axis by axis with
/// interface speeds lambda_{i+1/2,j} = 1/2 max over the two adjacent cells of
/// |(u, v)| + sqrt(p').
Rhs2D rhs_2d(const State2D& state, const PressureModel& model, const SchemeParams& params,
             const Grid2D& grid);

/// Reusable evaluator of the 2D scheme over packed states [rho | rho u | rho v].
class Scheme2D final : public SemiDiscreteSystem {
 public:
  Scheme2D(PressureModel model, SchemeParams params, Grid2D grid);

  int dimension() const override { return 2; }
  std::size_t cells() const override { return grid_.cells(); }
  double h() const override { return grid_.h(); }
  const PressureModel& model() const override { return model_; }
  const SchemeParams& params() const override { return params_; }
  const Grid2D& grid() const { return grid_; }

  double lambda(std::span<const double> w) const override;
  using SemiDiscreteSystem::rhs;
  void rhs(std::span<const double> w, double lambda, std::span<double> out) const override;
  std::vector<std::size_t> footprint(std::size_t cell) const override;
  Measurement measure(std::span<const double> w) const override;

  std::vector<double> pack(const State2D& state) const;
  State2D unpack(std::span<const double> w) const;

 private:
  PressureModel model_;
  SchemeParams params_;
  Grid2D grid_;
  mutable std::vector<double> rho_, mx_, my_, u_, v_, speed_, lap_, gx_, hx_, gy_, hy_;
};

}  // namespace korteweg

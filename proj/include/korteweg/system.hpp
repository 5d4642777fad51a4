#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "korteweg/physics.hpp"

namespace korteweg {

/// Conserved totals and discrete energy of a state.
struct Measurement {
  double mass = 0.0;
  std::array<double, 2> momentum{0.0, 0.0};  ///< second entry unused in 1D
  double energy = 0.0;
};

/// A semi-discrete scheme d/dt w = F(w) over a packed state vector.
///
/// The packed layout is component-major: w = [rho | rho u | rho v], each block
/// holding one value per cell in the grid's flat order. Time integrators only
/// see this interface.
///
/// Implementations keep scratch buffers, so one instance must not evaluate
/// right-hand sides from several threads at once.
class SemiDiscreteSystem {
 public:
  virtual ~SemiDiscreteSystem() = default;

  virtual int dimension() const = 0;
  virtual std::size_t cells() const = 0;
  std::size_t components() const { return static_cast<std::size_t>(dimension()) + 1; }
  std::size_t unknowns() const { return cells() * components(); }

  virtual double h() const = 0;
  virtual const PressureModel& model() const = 0;
  virtual const SchemeParams& params() const = 0;

  /// Global Lax-Friedrichs speed of the packed state.
  virtual double lambda(std::span<const double> w) const = 0;

  /// Writes d/dt w into `out` using the given global speed. Rusanov schemes
  /// compute interface speeds from `w` and ignore `lambda`.
  virtual void rhs(std::span<const double> w, double lambda, std::span<double> out) const = 0;
  void rhs(std::span<const double> w, std::span<double> out) const { rhs(w, lambda(w), out); }

  /// Cells whose right-hand side may depend on the value in `cell`.
  virtual std::vector<std::size_t> footprint(std::size_t cell) const = 0;

  virtual Measurement measure(std::span<const double> w) const = 0;

  /// Throws PositivityError naming the first cell with rho <= 0 (or non-finite data).
  void check_state(std::span<const double> w) const;
};

}  // namespace korteweg

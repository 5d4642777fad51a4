#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "korteweg/grid.hpp"
#include "korteweg/physics.hpp"

namespace korteweg {

/// Time series of conserved totals and discrete energy.
struct DiagnosticsRecord {
  struct Row {
    double t = 0.0;
    double dt = 0.0;  ///< step that led to this row, 0 for the initial row
    double mass = 0.0;
    std::array<double, 2> momentum{0.0, 0.0};
    double energy = 0.0;
  };
  int dimension = 1;
  std::vector<Row> rows;
};

struct Totals {
  double mass = 0.0;
  std::array<double, 2> momentum{0.0, 0.0};
};

/// mass = (1/N^d) sum rho, momentum = (1/N^d) sum rho u (per component).
Totals totals(const State1D& state, const Grid1D& grid);
Totals totals(const State2D& state, const Grid2D& grid);

/// One term of the energy balance and the sign the stability proof asserts.
struct DissipationComponent {
  enum class Claim { nonnegative, zero };
  std::string name;
  double value = 0.0;
  double magnitude = 0.0;  ///< sum of |summands|, the rounding scale of `value`
  Claim claim = Claim::nonnegative;

  /// |value| / magnitude for zero claims, -value / magnitude (clamped at 0)
  /// for nonnegative claims: how far the claim is violated in relative terms.
  double violation() const noexcept;
};

/// Semi-discrete energy balance of a state under Lax-Friedrichs dissipation.
///
/// `value` is -<v, F> with v the entropy variables and F the +d/dt right-hand
/// side, i.e. -N^d dE/dt. Components are assembled independently and should
/// sum to `value`; B and C are evaluated in their summed-by-parts quadratic
/// forms so they are nonnegative by construction.
struct DissipationReport {
  double value = 0.0;
  double magnitude = 0.0;  ///< sum |v_k F_k|
  std::vector<DissipationComponent> components;
  double residual = 0.0;   ///< |value - sum of components|
  double scale = 0.0;      ///< N^d (1 + max|state|)^3
  double lambda = 0.0;

  /// mu sum |forward grad u|^2 + kappa lambda h sum (lap rho)^2; `value` is bounded below by it.
  double energy_lower_bound = 0.0;

  // 2D only: exact quadratic forms of A3/A4 after cancelling pure differences,
  // and their lower bounds weighted with (lambda - |v|/2) resp. (lambda - |u|/2).
  double a3_quadratic = 0.0;
  double a3_lower_bound = 0.0;
  double a4_quadratic = 0.0;
  double a4_lower_bound = 0.0;

  double relative_residual() const noexcept { return magnitude > 0.0 ? residual / magnitude : residual; }
  const DissipationComponent& component(std::string_view name) const;
};

/// Components A, B, C. Requires Lax-Friedrichs dissipation.
DissipationReport dissipation_report_1d(const State1D& state, const PressureModel& model,
                                        const SchemeParams& params, const Grid1D& grid);

/// Components A1, A2, A3, A4, B, C, D1, D2. Requires Lax-Friedrichs dissipation.
DissipationReport dissipation_report_2d(const State2D& state, const PressureModel& model,
                                        const SchemeParams& params, const Grid2D& grid);

/// eoc_r = log2(e_{r-1} / e_r) for grids refined by factor two.
std::vector<double> eoc(const std::vector<double>& errors);

}  // namespace korteweg

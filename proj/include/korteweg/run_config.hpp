#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "korteweg/physics.hpp"
#include "korteweg/time_integration.hpp"

namespace korteweg {

enum class InitialKind { mms, riemann, thin_film, tabulated };

struct InitialCondition {
  InitialKind kind = InitialKind::mms;
  // riemann: the right state fills [jump_a, jump_b) (along x in 2D), the left state the rest.
  double rho_l = 0.25;
  double rho_r = 1.25;
  double u_l = 0.0;
  double u_r = 0.0;
  double jump_a = 0.25;
  double jump_b = 0.75;
  // tabulated: a fields CSV (x[,y],rho,mom_x[,mom_y]) with one row per cell.
  std::string path;

  bool operator==(const InitialCondition&) const = default;
};

/// Everything needed for one run of the solver. MMS runs with several
/// `levels` become a convergence study; every other run uses `n_cells`.
struct RunConfig {
  std::string name = "run";
  int dimension = 1;
  std::size_t n_cells = 64;
  std::vector<std::size_t> levels;
  PressureModel model = PressureModel::isothermal(1.0);
  double kappa = 0.0;
  double mu = 0.0;
  Dissipation dissipation = Dissipation::lax_friedrichs;
  Integrator integrator = Integrator::explicit_euler;
  std::optional<double> alpha;  ///< unset: 0.7 explicit, 20 implicit
  double t_end = 0.0;
  InitialCondition initial{};
  double domain_length = 1.0;
  double origin = 0.0;
  std::string output_dir = "out";
  std::size_t energy_every = 1;  ///< energy.csv row every k steps (first and last always)
  std::size_t fields_every = 0;  ///< fields snapshot every k steps; 0 = initial and final only
  NewtonParams newton{};

  double effective_alpha() const { return alpha ? *alpha : TimeParams::default_alpha(integrator); }
  /// Throws ConfigError naming the offending field.
  void validate() const;
  bool operator==(const RunConfig&) const = default;
};

/// Line-oriented `key = value` text; `#` starts a comment. Unknown keys and
/// malformed values raise ConfigError with the 1-based line number. The
/// result is validated.
RunConfig parse_config_text(std::string_view text, RunConfig base = {});
RunConfig parse_config_file(const std::string& path, RunConfig base = {});

/// Sets one key from its text form (same syntax as the config file).
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

/// Canonical text form; parse_config_text(to_config_text(c)) == c.
std::string to_config_text(const RunConfig& config);

/// Keys accepted by the parser, in canonical order.
const std::vector<std::string>& config_keys();

PressureModel parse_pressure(std::string_view text);
/// 17 significant digits, the CSV number format.
std::string format_double(double value);
/// Shortest decimal form that reads back to the same double.
std::string shortest_double(double value);

}  // namespace korteweg

#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "korteweg/mms.hpp"
#include "korteweg/presets.hpp"
#include "korteweg/run_config.hpp"
#include "korteweg/system.hpp"

namespace korteweg {

/// Scheme for `config` on n cells per axis.
std::unique_ptr<SemiDiscreteSystem> make_system(const RunConfig& config, std::size_t n);
/// Packed initial state of `config` on n cells per axis.
std::vector<double> initial_state(const RunConfig& config, std::size_t n);
/// Cell-centre coordinates of `config`'s grid along one axis.
std::vector<double> cell_centers(const RunConfig& config, std::size_t n);

struct RunOptions {
  bool write_files = true;
  /// Extra observer, called for every step (all levels of an MMS study).
  StepCallback on_step;
};

struct RunResult {
  std::string name;
  bool ok = true;
  std::string error;
  double t = 0.0;                  ///< time reached (of the last level for MMS)
  std::size_t steps = 0;
  std::vector<double> state;       ///< final packed state
  std::optional<ConvergenceTable> convergence;
  std::filesystem::path dir;
};

/// Runs one configuration and writes into `dir`:
///   energy.csv     t,dt,mass,mom_x[,mom_y],energy
///   fields_<t>.csv x[,y],rho,mom_x[,mom_y]
///   config.txt     canonical key=value form of `config`
/// MMS runs write convergence.csv at the top and the per-level files under
/// n<N>/. On a solver error the open CSVs get a `# ABORTED t=<t>` trailer.
RunResult run(const RunConfig& config, const std::filesystem::path& dir, const RunOptions& options = {});

/// Single-run presets write into `out`; sweeps into `out/<run name>`.
std::vector<RunResult> run_preset(const Preset& preset, const std::filesystem::path& out,
                                  const RunOptions& options = {});

/// Parsed CSV: header names and numeric rows; `#` lines are collected separately.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> comments;
  std::size_t column(const std::string& name) const;  ///< throws ConfigError if absent
};
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace korteweg

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "korteweg/run_config.hpp"

namespace korteweg {

/// A named experiment: one or more runs. Sweeps write each member run into
/// the subdirectory `<output_dir>/<run name>`.
struct Preset {
  std::string name;
  std::string summary;
  std::vector<RunConfig> runs;
};

const std::vector<Preset>& presets();
/// Throws ConfigError listing the known names.
const Preset& find_preset(std::string_view name);
/// Every preset with the full key=value expansion of each run.
std::string list_presets();

}  // namespace korteweg

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "korteweg/error.hpp"
#include "korteweg/presets.hpp"
#include "korteweg/run.hpp"
#include "korteweg/verify.hpp"

using namespace korteweg;

namespace {

void print_table(const ConvergenceTable& table) {
  std::printf("  %8s", "N");
  const char* names[] = {"rho", "rho u", "rho v"};
  const std::size_t comps = static_cast<std::size_t>(table.dimension) + 1;
  for (std::size_t a = 0; a < comps; ++a) std::printf(" %12s %6s", names[a], "EOC");
  std::printf("\n");
  for (const auto& row : table.rows) {
    std::printf("  %8zu", row.n_cells);
    for (std::size_t a = 0; a < comps; ++a) {
      std::printf(" %12.5g", row.errors[a]);
      if (row.eoc.empty()) {
        std::printf(" %6s", "-");
      } else {
        std::printf(" %6.3f", row.eoc[a]);
      }
    }
    std::printf("   (%zu steps, %.1fs)%s%s\n", row.steps, row.seconds, row.failure.empty() ? "" : "  FAILED: ",
                row.failure.c_str());
  }
}

int do_run(const std::string& config_path, const std::string& preset_name, std::string out,
           const std::vector<std::string>& overrides) {
  std::vector<RunConfig> configs;
  std::string default_out;
  if (!preset_name.empty()) {
    if (!config_path.empty()) std::cerr << "note: --preset takes precedence over --config\n";
    const Preset& preset = find_preset(preset_name);
    configs = preset.runs;
    default_out = "out/" + preset.name;
  } else {
    configs.push_back(parse_config_file(config_path));
    default_out = configs.front().output_dir;
  }
  for (auto& c : configs) {
    for (const auto& o : overrides) {
      const auto eq = o.find('=');
      if (eq == std::string::npos) throw ConfigError("--override expects key=value, got '" + o + "'");
      apply_setting(c, o.substr(0, eq), o.substr(eq + 1));
    }
    c.validate();
  }
  if (out.empty()) out = default_out;

  int status = 0;
  for (const auto& c : configs) {
    const std::filesystem::path dir = configs.size() == 1 ? std::filesystem::path(out) : std::filesystem::path(out) / c.name;
    std::printf("%s -> %s\n", c.name.c_str(), dir.string().c_str());
    std::fflush(stdout);
    const RunResult r = run(c, dir);
    if (r.convergence) print_table(*r.convergence);
    if (r.ok) {
      std::printf("  done: t=%g, %zu steps\n", r.t, r.steps);
    } else {
      std::fprintf(stderr, "%s: aborted at t=%g: %s\n", c.name.c_str(), r.t, r.error.c_str());
      status = 1;
    }
  }
  return status;
}

int do_verify() {
  int failed = 0;
  for (const auto& r : verify_suite()) {
    std::printf("%s  %s: %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
    if (!r.pass) ++failed;
  }
  std::printf("%s\n", failed == 0 ? "all checks passed" : "some checks FAILED");
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite volume solver for the Navier-Stokes-Korteweg and Euler-Korteweg systems"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "Run a configuration file or a named preset");
  std::string config_path, preset_name, out;
  std::vector<std::string> overrides;
  auto* config_opt = run_cmd->add_option("--config", config_path, "key=value configuration file")->check(CLI::ExistingFile);
  auto* preset_opt = run_cmd->add_option("--preset", preset_name, "preset name (see list-presets)");
  run_cmd->add_option("--out", out, "output directory");
  run_cmd->add_option("--override", overrides, "key=value applied after the file or preset");
  run_cmd->callback([&] {
    if (config_opt->count() == 0 && preset_opt->count() == 0) throw CLI::ValidationError("run", "need --config or --preset");
  });

  app.add_subcommand("list-presets", "Print every preset with its full parameter expansion");
  app.add_subcommand("verify", "Run the randomised scheme property checks");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("list-presets")) {
      std::fputs(list_presets().c_str(), stdout);
      return 0;
    }
    if (app.got_subcommand("verify")) return do_verify();
    return do_run(config_path, preset_name, out, overrides);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "korteweg/error.hpp"
#include "korteweg/presets.hpp"
#include "korteweg/run.hpp"
#include "korteweg/run_config.hpp"
#include "korteweg/system.hpp"

using namespace korteweg;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("korteweg_test_config_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunConfig small_riemann(double kappa) {
  RunConfig c = parse_config_text("dimension=1\nn_cells=64\nt_end=0.02\ninitial=riemann:0.25,1.25,0,0");
  c.kappa = kappa;
  c.mu = 0.01;
  c.fields_every = 10;
  c.energy_every = 5;
  return c;
}

}  // namespace

TEST(ParseConfig, MinimalConfigFillsDefaults) {
  const RunConfig c = parse_config_text("dimension=1\nn_cells=64\nt_end=0.1\ninitial=riemann:0.25,1.25,0,0");
  EXPECT_EQ(c.dimension, 1);
  EXPECT_EQ(c.n_cells, 64u);
  EXPECT_DOUBLE_EQ(c.t_end, 0.1);
  EXPECT_EQ(c.initial.kind, InitialKind::riemann);
  EXPECT_DOUBLE_EQ(c.initial.rho_l, 0.25);
  EXPECT_DOUBLE_EQ(c.initial.rho_r, 1.25);
  EXPECT_DOUBLE_EQ(c.initial.u_l, 0.0);
  EXPECT_DOUBLE_EQ(c.initial.u_r, 0.0);
  EXPECT_EQ(c.model, PressureModel::isothermal(1.0));
  EXPECT_EQ(c.kappa, 0.0);
  EXPECT_EQ(c.mu, 0.0);
  EXPECT_EQ(c.integrator, Integrator::explicit_euler);
  EXPECT_EQ(c.dissipation, Dissipation::lax_friedrichs);
  EXPECT_DOUBLE_EQ(c.effective_alpha(), 0.7);
}

TEST(ParseConfig, ImplicitDefaultAlphaIsTwenty) {
  const RunConfig c = parse_config_text("integrator=implicit\nt_end=0.1\ninitial=mms");
  EXPECT_DOUBLE_EQ(c.effective_alpha(), 20.0);
}

TEST(ParseConfig, NegativeAlphaNamesTheField) {
  try {
    parse_config_text("alpha=-1\nt_end=0.1");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("alpha"), std::string::npos) << e.what();
  }
}

TEST(ParseConfig, ErrorsCarryLineNumbers) {
  try {
    parse_config_text("dimension=1\n# comment\n\nn_cells=abc\n");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 4u);
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
  }
}

TEST(ParseConfig, RejectsUnknownDuplicateAndMalformed) {
  EXPECT_THROW(parse_config_text("viscosity=1"), ConfigError);
  EXPECT_THROW(parse_config_text("kappa=1\nkappa=2"), ConfigError);
  EXPECT_THROW(parse_config_text("just words"), ConfigError);
  EXPECT_THROW(parse_config_text("model=ideal:1"), ConfigError);
  EXPECT_THROW(parse_config_text("dissipation=upwind"), ConfigError);
  EXPECT_THROW(parse_config_text("initial=riemann:1,2,3"), ConfigError);
  EXPECT_THROW(parse_config_text("initial=riemann:0,1,0,0"), ConfigError);
  EXPECT_THROW(parse_config_text("dimension=3"), ConfigError);
  EXPECT_THROW(parse_config_text("energy_every=3\nfields_every=4"), ConfigError);
  EXPECT_THROW(parse_config_text("dimension=2\ndomain_length=1\ninitial=mms"), ConfigError);
}

TEST(ParseConfig, CommentsAndWhitespace) {
  const RunConfig c = parse_config_text("  kappa = 0.5   # trailing\n\n# full line\nmodel = quadratic:4.905\n");
  EXPECT_DOUBLE_EQ(c.kappa, 0.5);
  EXPECT_EQ(c.model, PressureModel::quadratic(4.905));
}

TEST(ParseConfig, OverrideAfterFileWins) {
  RunConfig c = parse_config_text("kappa=0.1\nt_end=0.1");
  apply_setting(c, "kappa", "0.2");
  apply_setting(c, " integrator ", " implicit ");
  EXPECT_DOUBLE_EQ(c.kappa, 0.2);
  EXPECT_EQ(c.integrator, Integrator::implicit_euler);
  EXPECT_THROW(apply_setting(c, "nope", "1"), ConfigError);
}

TEST(ParseConfig, BaseConfigSuppliesDefaults) {
  RunConfig base;
  base.kappa = 0.3;
  const RunConfig c = parse_config_text("mu=0.1", base);
  EXPECT_DOUBLE_EQ(c.kappa, 0.3);
  EXPECT_DOUBLE_EQ(c.mu, 0.1);
}

TEST(ConfigText, RoundTripsEveryPreset) {
  for (const auto& preset : presets()) {
    for (const auto& c : preset.runs) {
      const std::string text = to_config_text(c);
      const RunConfig back = parse_config_text(text);
      EXPECT_EQ(back, c) << preset.name << "/" << c.name;
      EXPECT_EQ(to_config_text(back), text);
    }
  }
}

TEST(ConfigText, ListsEveryKey) {
  const std::string text = to_config_text(RunConfig{});
  for (const auto& key : config_keys()) EXPECT_NE(text.find(key + " ="), std::string::npos) << key;
}

TEST(Numbers, FormatsRoundTrip) {
  EXPECT_EQ(shortest_double(0.2), "0.2");
  EXPECT_EQ(shortest_double(0.0003), "0.0003");
  for (double v : {0.1, 1.0 / 3.0, 9.81 / 2.0, 1e-300, -2.5e17}) {
    EXPECT_EQ(std::stod(format_double(v)), v);
    EXPECT_EQ(std::stod(shortest_double(v)), v);
  }
}

TEST(Presets, ExpandToTheExperimentParameters) {
  const Preset& sweep = find_preset("riemann_kappa_sweep");
  ASSERT_EQ(sweep.runs.size(), 4u);
  const double kappas[] = {0.0, 3e-4, 3e-3, 3e-2};
  for (std::size_t k = 0; k < 4; ++k) {
    const RunConfig& c = sweep.runs[k];
    EXPECT_EQ(c.kappa, kappas[k]);
    EXPECT_EQ(c.n_cells, 1024u);
    EXPECT_EQ(c.domain_length / static_cast<double>(c.n_cells), std::ldexp(1.0, -10));
    EXPECT_EQ(c.t_end, 0.1);
    EXPECT_EQ(c.mu, 0.0);
  }

  const RunConfig& film = find_preset("thin_film").runs.front();
  EXPECT_EQ(film.kappa, 0.0059);
  EXPECT_EQ(film.model, PressureModel::quadratic(9.81 / 2));
  EXPECT_DOUBLE_EQ(film.domain_length / static_cast<double>(film.n_cells), 1e-3);
  EXPECT_EQ(film.t_end, 1.0);
  EXPECT_EQ(film.mu, 0.0);

  for (const char* name : {"mms1d_implicit", "mms1d_explicit"}) {
    const RunConfig& c = find_preset(name).runs.front();
    EXPECT_EQ(c.kappa, 0.01);
    EXPECT_EQ(c.mu, 0.01);
    EXPECT_EQ(c.t_end, 0.2);
    EXPECT_EQ(c.levels, (std::vector<std::size_t>{32, 64, 128, 256, 512, 1024}));
  }
  EXPECT_EQ(find_preset("mms1d_implicit").runs.front().integrator, Integrator::implicit_euler);
  EXPECT_EQ(find_preset("mms2d_explicit").runs.front().levels, (std::vector<std::size_t>{32, 64, 128}));
  EXPECT_THROW(find_preset("nope"), ConfigError);
}

TEST(Presets, ListingShowsTheExpansion) {
  const std::string text = list_presets();
  for (const auto& p : presets()) EXPECT_NE(text.find(p.name), std::string::npos);
  EXPECT_NE(text.find("kappa = 0.0003"), std::string::npos);
  EXPECT_NE(text.find("kappa = 0.03"), std::string::npos);
  EXPECT_NE(text.find("kappa = 0.0059"), std::string::npos);
  EXPECT_NE(text.find("model = quadratic:4.905"), std::string::npos);
  EXPECT_NE(text.find("levels = 32,64,128\n"), std::string::npos);
}

TEST(Run, WritesFilesAndTotalsRoundTrip) {
  const fs::path dir = scratch_dir("files");
  const RunConfig c = small_riemann(0.003);
  const RunResult r = run(c, dir);
  ASSERT_TRUE(r.ok) << r.error;

  EXPECT_EQ(parse_config_file((dir / "config.txt").string()), c);
  const CsvTable energy = read_csv(dir / "energy.csv");
  EXPECT_EQ(energy.header, (std::vector<std::string>{"t", "dt", "mass", "mom_x", "energy"}));
  ASSERT_GE(energy.rows.size(), 2u);
  EXPECT_EQ(energy.rows.front()[0], 0.0);
  EXPECT_EQ(energy.rows.back()[0], c.t_end);

  const auto system = make_system(c, c.n_cells);
  std::size_t snapshots = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string file = entry.path().filename().string();
    if (file.rfind("fields_", 0) != 0) continue;
    ++snapshots;
    const CsvTable fields = read_csv(entry.path());
    ASSERT_EQ(fields.header, (std::vector<std::string>{"x", "rho", "mom_x"}));
    ASSERT_EQ(fields.rows.size(), c.n_cells);
    std::vector<double> w(2 * c.n_cells);
    for (std::size_t i = 0; i < c.n_cells; ++i) {
      w[i] = fields.rows[i][1];
      w[c.n_cells + i] = fields.rows[i][2];
    }
    const double t = std::stod(file.substr(7, file.size() - 11));
    const auto row = std::find_if(energy.rows.begin(), energy.rows.end(), [&](const auto& r) { return r[0] == t; });
    ASSERT_NE(row, energy.rows.end()) << "no energy row for " << file;
    const Measurement m = system->measure(w);
    EXPECT_NEAR(m.mass, (*row)[2], 1e-12 * std::abs((*row)[2]));
    EXPECT_NEAR(m.momentum[0], (*row)[3], 1e-12 * (1.0 + std::abs((*row)[3])));
    EXPECT_NEAR(m.energy, (*row)[4], 1e-12 * std::abs((*row)[4]));
  }
  EXPECT_GE(snapshots, 3u);

  // The energy series of a dissipative run never increases.
  for (std::size_t k = 1; k < energy.rows.size(); ++k) EXPECT_LE(energy.rows[k][4], energy.rows[k - 1][4]);
  fs::remove_all(dir);
}

TEST(Run, RerunIsByteIdentical) {
  const fs::path a = scratch_dir("rerun_a"), b = scratch_dir("rerun_b");
  const RunConfig c = small_riemann(0.003);
  ASSERT_TRUE(run(c, a).ok);
  ASSERT_TRUE(run(c, b).ok);
  std::size_t compared = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    EXPECT_EQ(slurp(entry.path()), slurp(b / entry.path().filename())) << entry.path().filename();
    ++compared;
  }
  EXPECT_GE(compared, 3u);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(Run, AbortMarksPartialOutputs) {
  const fs::path dir = scratch_dir("abort");
  RunConfig c = small_riemann(0.0);
  c.mu = 0.0;
  c.alpha = 4.0;
  c.t_end = 1.0;
  const RunResult r = run(c, dir);
  ASSERT_FALSE(r.ok);
  EXPECT_FALSE(r.error.empty());
  const CsvTable energy = read_csv(dir / "energy.csv");
  ASSERT_FALSE(energy.comments.empty());
  EXPECT_EQ(energy.comments.back().rfind("# ABORTED t=", 0), 0u) << energy.comments.back();
  fs::remove_all(dir);
}

TEST(Run, StudyWritesConvergenceTable) {
  const fs::path dir = scratch_dir("study");
  RunConfig c = find_preset("mms1d_implicit").runs.front();
  c.levels = {16, 32};
  c.t_end = 0.02;
  const RunResult r = run(c, dir);
  ASSERT_TRUE(r.ok) << r.error;
  ASSERT_TRUE(r.convergence.has_value());
  const CsvTable conv = read_csv(dir / "convergence.csv");
  EXPECT_EQ(conv.header,
            (std::vector<std::string>{"n_cells", "err_rho", "eoc_rho", "err_momx", "eoc_momx"}));
  ASSERT_EQ(conv.rows.size(), 2u);
  EXPECT_TRUE(std::isnan(conv.rows[0][2]));
  EXPECT_EQ(conv.rows[1][0], 32.0);
  EXPECT_EQ(conv.rows[1][1], r.convergence->rows[1].errors[0]);
  EXPECT_TRUE(fs::exists(dir / "n16" / "energy.csv"));
  EXPECT_TRUE(fs::exists(dir / "n32" / "energy.csv"));
  fs::remove_all(dir);
}

TEST(Run, ThinFilmInitialStateIsMirrorSymmetric) {
  const RunConfig c = find_preset("thin_film").runs.front();
  const std::vector<double> w = initial_state(c, c.n_cells);
  const std::size_t n = c.n_cells;
  for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(w[i], w[n - 1 - i]);
  const std::vector<double> x = cell_centers(c, n);
  EXPECT_DOUBLE_EQ(x.front(), -0.5 + 0.5e-3);
  EXPECT_NEAR(w[n / 2], 1e-3 * (1.0 + std::exp(-2000.0 * 0.25e-6)), 1e-18);
}

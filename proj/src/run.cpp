#include "korteweg/run.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "korteweg/error.hpp"
#include "korteweg/scheme1d.hpp"
#include "korteweg/scheme2d.hpp"

namespace korteweg {

namespace fs = std::filesystem;

namespace {

SchemeParams scheme_params(const RunConfig& c) { return SchemeParams{c.kappa, c.mu, c.dissipation}; }

TimeParams time_params(const RunConfig& c) {
  TimeParams t;
  t.alpha = c.effective_alpha();
  t.integrator = c.integrator;
  t.t_end = c.t_end;
  t.newton = c.newton;
  return t;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  return out;
}

std::vector<double> tabulated_state(const RunConfig& c, std::size_t n) {
  const CsvTable table = read_csv(c.initial.path);
  const std::size_t cells = c.dimension == 1 ? n : n * n;
  if (table.rows.size() != cells) {
    throw ConfigError("initial: '" + c.initial.path + "' has " + std::to_string(table.rows.size()) +
                      " rows, expected " + std::to_string(cells));
  }
  std::vector<std::size_t> cols{table.column("rho"), table.column("mom_x")};
  if (c.dimension == 2) cols.push_back(table.column("mom_y"));
  std::vector<double> w(cols.size() * cells);
  for (std::size_t a = 0; a < cols.size(); ++a) {
    for (std::size_t k = 0; k < cells; ++k) w[a * cells + k] = table.rows[k][cols[a]];
  }
  return w;
}

// Writes energy rows and field snapshots of one integration run.
class OutputSink {
 public:
  OutputSink(const RunConfig& config, std::size_t n, fs::path dir, bool enabled)
      : config_(config), n_(n), dir_(std::move(dir)), enabled_(enabled), x_(cell_centers(config, n)) {
    if (!enabled_) return;
    fs::create_directories(dir_);
    energy_ = open_out(dir_ / "energy.csv");
    energy_ << (config_.dimension == 1 ? "t,dt,mass,mom_x,energy\n" : "t,dt,mass,mom_x,mom_y,energy\n");
  }

  void observe(const StepInfo& info) {
    last_t_ = info.t;
    const bool last = info.t == config_.t_end;
    if (last) final_state_.assign(info.state.begin(), info.state.end());
    if (!enabled_) return;
    if (info.step % config_.energy_every == 0 || last) {
      energy_ << format_double(info.t) << ',' << format_double(info.dt) << ',' << format_double(info.measurement.mass)
              << ',' << format_double(info.measurement.momentum[0]) << ',';
      if (config_.dimension == 2) energy_ << format_double(info.measurement.momentum[1]) << ',';
      energy_ << format_double(info.measurement.energy) << '\n';
    }
    const bool cadence = config_.fields_every > 0 && info.step % config_.fields_every == 0;
    if (info.step == 0 || last || cadence) write_fields(info.t, info.state);
  }

  void abort() {
    if (!enabled_) return;
    energy_ << "# ABORTED t=" << format_double(last_t_) << '\n';
    energy_.flush();
  }

  double last_t() const { return last_t_; }
  std::vector<double>& final_state() { return final_state_; }

 private:
  void write_fields(double t, std::span<const double> w) {
    std::ofstream out = open_out(dir_ / ("fields_" + shortest_double(t) + ".csv"));
    const std::size_t cells = config_.dimension == 1 ? n_ : n_ * n_;
    if (config_.dimension == 1) {
      out << "x,rho,mom_x\n";
      for (std::size_t i = 0; i < n_; ++i) {
        out << format_double(x_[i]) << ',' << format_double(w[i]) << ',' << format_double(w[cells + i]) << '\n';
      }
    } else {
      out << "x,y,rho,mom_x,mom_y\n";
      for (std::size_t j = 0; j < n_; ++j) {
        for (std::size_t i = 0; i < n_; ++i) {
          const std::size_t k = j * n_ + i;
          out << format_double(x_[i]) << ',' << format_double(x_[j]) << ',' << format_double(w[k]) << ','
              << format_double(w[cells + k]) << ',' << format_double(w[2 * cells + k]) << '\n';
        }
      }
    }
  }

  const RunConfig& config_;
  std::size_t n_;
  fs::path dir_;
  bool enabled_;
  std::vector<double> x_;
  std::ofstream energy_;
  double last_t_ = 0.0;
  std::vector<double> final_state_;
};

RunResult run_mms_study(const RunConfig& config, const fs::path& dir, const RunOptions& options) {
  RunResult result;
  result.name = config.name;
  result.dir = dir;
  if (options.write_files) fs::create_directories(dir);

  StudyParams sp;
  sp.dimension = config.dimension;
  sp.integrator = config.integrator;
  sp.levels = config.levels.empty() ? std::vector<std::size_t>{config.n_cells} : config.levels;
  sp.t_end = config.t_end;
  sp.kappa = config.kappa;
  sp.mu = config.mu;
  sp.model = config.model;
  sp.dissipation = config.dissipation;
  sp.alpha = config.effective_alpha();
  sp.domain_length = config.domain_length;
  sp.newton = config.newton;

  std::map<std::size_t, std::unique_ptr<OutputSink>> sinks;
  sp.observe = [&](std::size_t n) -> StepCallback {
    auto sink = std::make_unique<OutputSink>(config, n, dir / ("n" + std::to_string(n)), options.write_files);
    OutputSink* raw = sink.get();
    sinks[n] = std::move(sink);
    return [raw, &options](const StepInfo& info) {
      raw->observe(info);
      if (options.on_step) options.on_step(info);
    };
  };
  ConvergenceTable table = convergence_study(sp);

  std::ofstream conv;
  if (options.write_files) {
    conv = open_out(dir / "convergence.csv");
    conv << "n_cells,err_rho,eoc_rho,err_momx,eoc_momx" << (config.dimension == 2 ? ",err_momy,eoc_momy" : "")
         << '\n';
  }
  for (const auto& row : table.rows) {
    if (options.write_files) {
      conv << row.n_cells;
      for (std::size_t a = 0; a < row.errors.size(); ++a) {
        conv << ',' << format_double(row.errors[a]) << ',';
        if (!row.eoc.empty()) conv << format_double(row.eoc[a]);
      }
      conv << '\n';
    }
    OutputSink& sink = *sinks.at(row.n_cells);
    if (!row.failure.empty()) {
      sink.abort();
      if (result.ok) {
        result.ok = false;
        result.error = "N=" + std::to_string(row.n_cells) + ": " + row.failure;
        result.t = sink.last_t();
        if (options.write_files) conv << "# ABORTED t=" << format_double(sink.last_t()) << '\n';
      }
    } else if (result.ok) {
      result.t = config.t_end;
      result.steps = row.steps;
      result.state = std::move(sink.final_state());
    }
  }
  result.convergence = std::move(table);
  return result;
}

}  // namespace

std::unique_ptr<SemiDiscreteSystem> make_system(const RunConfig& config, std::size_t n) {
  if (config.dimension == 1) {
    return std::make_unique<Scheme1D>(config.model, scheme_params(config),
                                      Grid1D(n, config.domain_length, config.origin));
  }
  return std::make_unique<Scheme2D>(config.model, scheme_params(config),
                                    Grid2D(n, config.domain_length, config.origin));
}

std::vector<double> cell_centers(const RunConfig& config, std::size_t n) {
  // Offsets from the midpoint, so centres mirror exactly about it.
  const double h = config.domain_length / static_cast<double>(n);
  const double mid = config.origin + 0.5 * config.domain_length;
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = mid + (static_cast<double>(i) + 0.5 - 0.5 * static_cast<double>(n)) * h;
  return x;
}

std::vector<double> initial_state(const RunConfig& config, std::size_t n) {
  config.validate();
  const InitialCondition& ic = config.initial;
  if (ic.kind == InitialKind::tabulated) return tabulated_state(config, n);
  if (ic.kind == InitialKind::mms) {
    if (config.dimension == 1) {
      const ManufacturedSolution1D sol{config.model, config.kappa, config.mu, config.domain_length};
      const Grid1D g(n, config.domain_length);
      return Scheme1D(config.model, scheme_params(config), g).pack(mms_fields_1d(sol, g, 0.0));
    }
    const ManufacturedSolution2D sol{config.model, config.kappa, config.mu};
    const Grid2D g(n, config.domain_length);
    return Scheme2D(config.model, scheme_params(config), g).pack(mms_fields_2d(sol, g, 0.0));
  }

  const std::vector<double> x = cell_centers(config, n);
  const std::size_t cells = config.dimension == 1 ? n : n * n;
  const std::size_t comps = static_cast<std::size_t>(config.dimension) + 1;
  std::vector<double> w(comps * cells, 0.0);
  for (std::size_t k = 0; k < cells; ++k) {
    const double xi = x[k % n];
    const double yj = config.dimension == 1 ? 0.0 : x[k / n];
    if (ic.kind == InitialKind::riemann) {
      const bool right = xi >= ic.jump_a && xi < ic.jump_b;
      w[k] = right ? ic.rho_r : ic.rho_l;
      w[cells + k] = w[k] * (right ? ic.u_r : ic.u_l);
    } else {
      w[k] = 1e-3 * (1.0 + std::exp(-2000.0 * (xi * xi + yj * yj)));
    }
  }
  return w;
}

RunResult run(const RunConfig& config, const fs::path& dir, const RunOptions& options) {
  config.validate();
  if (options.write_files) {
    fs::create_directories(dir);
    open_out(dir / "config.txt") << to_config_text(config);
  }
  if (config.initial.kind == InitialKind::mms) return run_mms_study(config, dir, options);

  RunResult result;
  result.name = config.name;
  result.dir = dir;
  const std::size_t n = config.n_cells;
  const auto system = make_system(config, n);
  std::vector<double> w0 = initial_state(config, n);
  OutputSink sink(config, n, dir, options.write_files);
  IntegrationOptions opts;
  opts.record_every = std::numeric_limits<std::size_t>::max();
  opts.on_step = [&](const StepInfo& info) {
    sink.observe(info);
    if (options.on_step) options.on_step(info);
  };
  try {
    IntegrationResult res = integrate(*system, std::move(w0), time_params(config), opts);
    result.t = res.t;
    result.steps = res.steps;
    result.state = std::move(res.state);
  } catch (const Error& e) {
    sink.abort();
    result.ok = false;
    result.error = e.what();
    result.t = sink.last_t();
  }
  return result;
}

std::vector<RunResult> run_preset(const Preset& preset, const fs::path& out, const RunOptions& options) {
  std::vector<RunResult> results;
  for (const auto& config : preset.runs) {
    results.push_back(run(config, preset.runs.size() == 1 ? out : out / config.name, options));
  }
  return results;
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t k = 0; k < header.size(); ++k) {
    if (header[k] == name) return k;
  }
  throw ConfigError("csv: no column '" + name + "'");
}

CsvTable read_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path.string() + "'");
  CsvTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      table.comments.push_back(line);
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    if (table.header.empty()) {
      table.header = std::move(fields);
      continue;
    }
    if (fields.size() != table.header.size()) {
      throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                            std::to_string(table.header.size()) + " fields",
                        line_no);
    }
    std::vector<double> row;
    for (const auto& f : fields) {
      if (f.empty()) {
        row.push_back(std::nan(""));
        continue;
      }
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc() || ptr != f.data() + f.size()) {
        throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": bad number '" + f + "'", line_no);
      }
      row.push_back(v);
    }
    table.rows.push_back(std::move(row));
  }
  if (table.header.empty()) throw ConfigError("'" + path.string() + "' is empty");
  return table;
}

}  // namespace korteweg

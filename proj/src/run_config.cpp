#include "korteweg/run_config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "korteweg/error.hpp"

namespace korteweg {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_double(std::string_view key, std::string_view text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw ConfigError(std::string(key) + ": expected a number, got '" + std::string(text) + "'");
  }
  return v;
}

std::size_t parse_size(std::string_view key, std::string_view text) {
  std::size_t v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(std::string(key) + ": expected a non-negative integer, got '" + std::string(text) + "'");
  }
  return v;
}

std::string join_sizes(const std::vector<std::size_t>& v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) out += (k ? "," : "") + std::to_string(v[k]);
  return out;
}

std::string initial_to_text(const InitialCondition& ic) {
  switch (ic.kind) {
    case InitialKind::mms: return "mms";
    case InitialKind::thin_film: return "thin_film";
    case InitialKind::tabulated: return "tabulated:" + ic.path;
    case InitialKind::riemann:
      return "riemann:" + shortest_double(ic.rho_l) + "," + shortest_double(ic.rho_r) + "," + shortest_double(ic.u_l) +
             "," + shortest_double(ic.u_r);
  }
  return {};
}

InitialCondition parse_initial(std::string_view text, InitialCondition ic) {
  const auto colon = text.find(':');
  const std::string_view kind = trim(text.substr(0, colon));
  const std::string_view args = colon == std::string_view::npos ? std::string_view{} : trim(text.substr(colon + 1));
  if (kind == "mms" || kind == "thin_film") {
    if (!args.empty()) throw ConfigError("initial: '" + std::string(kind) + "' takes no arguments");
    ic.kind = kind == "mms" ? InitialKind::mms : InitialKind::thin_film;
  } else if (kind == "riemann") {
    const auto parts = split(args, ',');
    if (parts.size() != 4) throw ConfigError("initial: riemann expects rho_l,rho_r,u_l,u_r");
    ic.kind = InitialKind::riemann;
    ic.rho_l = parse_double("initial", parts[0]);
    ic.rho_r = parse_double("initial", parts[1]);
    ic.u_l = parse_double("initial", parts[2]);
    ic.u_r = parse_double("initial", parts[3]);
  } else if (kind == "tabulated") {
    if (args.empty()) throw ConfigError("initial: tabulated expects a file path");
    ic.kind = InitialKind::tabulated;
    ic.path = std::string(args);
  } else {
    throw ConfigError("initial: unknown kind '" + std::string(kind) + "' (mms, riemann, thin_film, tabulated)");
  }
  return ic;
}

using Setter = std::function<void(RunConfig&, std::string_view)>;
using Getter = std::function<std::string(const RunConfig&)>;

struct KeySpec {
  std::string key;
  Setter set;
  Getter get;
};

const std::vector<KeySpec>& key_specs() {
  static const std::vector<KeySpec> specs = [] {
    std::vector<KeySpec> s;
    auto num = [](double RunConfig::*field) {
      return std::pair<Setter, Getter>{
          [field](RunConfig& c, std::string_view v) { c.*field = parse_double("", v); },
          [field](const RunConfig& c) { return shortest_double(c.*field); }};
    };
    auto add = [&](std::string key, Setter set, Getter get) {
      // Prefix number parse errors with the key.
      Setter wrapped = [key, set](RunConfig& c, std::string_view v) {
        try {
          set(c, v);
        } catch (const ConfigError& e) {
          const std::string msg = e.what();
          throw ConfigError(msg.rfind(": ", 0) == 0 ? key + msg : msg);
        }
      };
      s.push_back({std::move(key), std::move(wrapped), std::move(get)});
    };
    add("name", [](RunConfig& c, std::string_view v) { c.name = std::string(v); },
        [](const RunConfig& c) { return c.name; });
    add("dimension",
        [](RunConfig& c, std::string_view v) { c.dimension = static_cast<int>(parse_size("dimension", v)); },
        [](const RunConfig& c) { return std::to_string(c.dimension); });
    add("n_cells", [](RunConfig& c, std::string_view v) { c.n_cells = parse_size("n_cells", v); },
        [](const RunConfig& c) { return std::to_string(c.n_cells); });
    add("levels",
        [](RunConfig& c, std::string_view v) {
          c.levels.clear();
          if (v.empty()) return;
          for (auto part : split(v, ',')) c.levels.push_back(parse_size("levels", part));
        },
        [](const RunConfig& c) { return join_sizes(c.levels); });
    add("model", [](RunConfig& c, std::string_view v) { c.model = parse_pressure(v); },
        [](const RunConfig& c) {
          return std::string(c.model.kind() == PressureKind::quadratic ? "quadratic:" : "isothermal:") +
                 shortest_double(c.model.coefficient());
        });
    auto [sk, gk] = num(&RunConfig::kappa);
    add("kappa", sk, gk);
    auto [sm, gm] = num(&RunConfig::mu);
    add("mu", sm, gm);
    add("dissipation",
        [](RunConfig& c, std::string_view v) {
          if (v == "lax_friedrichs") {
            c.dissipation = Dissipation::lax_friedrichs;
          } else if (v == "rusanov") {
            c.dissipation = Dissipation::rusanov;
          } else {
            throw ConfigError("dissipation: expected lax_friedrichs or rusanov, got '" + std::string(v) + "'");
          }
        },
        [](const RunConfig& c) {
          return std::string(c.dissipation == Dissipation::rusanov ? "rusanov" : "lax_friedrichs");
        });
    add("integrator",
        [](RunConfig& c, std::string_view v) {
          if (v == "explicit") {
            c.integrator = Integrator::explicit_euler;
          } else if (v == "implicit") {
            c.integrator = Integrator::implicit_euler;
          } else {
            throw ConfigError("integrator: expected explicit or implicit, got '" + std::string(v) + "'");
          }
        },
        [](const RunConfig& c) {
          return std::string(c.integrator == Integrator::implicit_euler ? "implicit" : "explicit");
        });
    add("alpha",
        [](RunConfig& c, std::string_view v) {
          if (v.empty() || v == "default") {
            c.alpha.reset();
          } else {
            c.alpha = parse_double("alpha", v);
          }
        },
        [](const RunConfig& c) { return c.alpha ? shortest_double(*c.alpha) : std::string("default"); });
    auto [st, gt] = num(&RunConfig::t_end);
    add("t_end", st, gt);
    add("initial", [](RunConfig& c, std::string_view v) { c.initial = parse_initial(v, c.initial); },
        [](const RunConfig& c) { return initial_to_text(c.initial); });
    add("riemann_jumps",
        [](RunConfig& c, std::string_view v) {
          const auto parts = split(v, ',');
          if (parts.size() != 2) throw ConfigError("riemann_jumps: expected two positions a,b");
          c.initial.jump_a = parse_double("riemann_jumps", parts[0]);
          c.initial.jump_b = parse_double("riemann_jumps", parts[1]);
        },
        [](const RunConfig& c) { return shortest_double(c.initial.jump_a) + "," + shortest_double(c.initial.jump_b); });
    auto [sl, gl] = num(&RunConfig::domain_length);
    add("domain_length", sl, gl);
    auto [so, go] = num(&RunConfig::origin);
    add("origin", so, go);
    add("output_dir", [](RunConfig& c, std::string_view v) { c.output_dir = std::string(v); },
        [](const RunConfig& c) { return c.output_dir; });
    add("energy_every", [](RunConfig& c, std::string_view v) { c.energy_every = parse_size("energy_every", v); },
        [](const RunConfig& c) { return std::to_string(c.energy_every); });
    add("fields_every", [](RunConfig& c, std::string_view v) { c.fields_every = parse_size("fields_every", v); },
        [](const RunConfig& c) { return std::to_string(c.fields_every); });
    add("newton_max_iter",
        [](RunConfig& c, std::string_view v) {
          c.newton.max_iter = static_cast<int>(parse_size("newton_max_iter", v));
        },
        [](const RunConfig& c) { return std::to_string(c.newton.max_iter); });
    add("newton_residual_tol",
        [](RunConfig& c, std::string_view v) { c.newton.residual_tol = parse_double("newton_residual_tol", v); },
        [](const RunConfig& c) { return shortest_double(c.newton.residual_tol); });
    add("newton_step_tol",
        [](RunConfig& c, std::string_view v) { c.newton.step_tol = parse_double("newton_step_tol", v); },
        [](const RunConfig& c) { return shortest_double(c.newton.step_tol); });
    return s;
  }();
  return specs;
}

const KeySpec* find_key(std::string_view key) {
  for (const auto& spec : key_specs()) {
    if (spec.key == key) return &spec;
  }
  return nullptr;
}

}  // namespace

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string shortest_double(double value) {
  // Plain decimal when it stays short (0.0003 rather than 3e-04).
  char buf[400];
  const auto fixed = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed);
  if (fixed.ec == std::errc() && fixed.ptr - buf <= 12) return std::string(buf, fixed.ptr);
  const auto general = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, general.ec == std::errc() ? general.ptr : buf);
}

PressureModel parse_pressure(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw ConfigError("model: expected kind:coefficient, e.g. isothermal:1");
  const std::string_view kind = trim(text.substr(0, colon));
  const double coeff = parse_double("model", trim(text.substr(colon + 1)));
  if (!(coeff > 0.0)) throw ConfigError("model: coefficient must be positive");
  if (kind == "quadratic") return PressureModel::quadratic(coeff);
  if (kind == "isothermal") return PressureModel::isothermal(coeff);
  throw ConfigError("model: unknown kind '" + std::string(kind) + "' (quadratic, isothermal)");
}

void RunConfig::validate() const {
  auto fail = [](const std::string& field, const std::string& why) { throw ConfigError(field + ": " + why); };
  if (dimension != 1 && dimension != 2) fail("dimension", "must be 1 or 2");
  if (levels.empty() && n_cells == 0) fail("n_cells", "must be positive");
  for (std::size_t k = 0; k < levels.size(); ++k) {
    if (levels[k] == 0) fail("levels", "entries must be positive");
    if (k > 0 && levels[k] <= levels[k - 1]) fail("levels", "must be strictly increasing");
  }
  if (!levels.empty() && initial.kind != InitialKind::mms) fail("levels", "only used by mms runs");
  if (!(kappa >= 0.0)) fail("kappa", "must be >= 0");
  if (!(mu >= 0.0)) fail("mu", "must be >= 0");
  if (alpha && !(*alpha > 0.0)) fail("alpha", "must be positive");
  if (!(t_end >= 0.0)) fail("t_end", "must be >= 0");
  if (!(domain_length > 0.0)) fail("domain_length", "must be positive");
  if (newton.max_iter < 1) fail("newton_max_iter", "must be >= 1");
  if (!(newton.residual_tol > 0.0)) fail("newton_residual_tol", "must be positive");
  if (!(newton.step_tol > 0.0)) fail("newton_step_tol", "must be positive");
  if (energy_every == 0) fail("energy_every", "must be >= 1");
  if (fields_every > 0 && fields_every % energy_every != 0) {
    fail("fields_every", "must be a multiple of energy_every");
  }
  if (output_dir.empty()) fail("output_dir", "must not be empty");
  if (name.empty() || name.find('/') != std::string::npos) fail("name", "must be non-empty without '/'");
  if (initial.kind == InitialKind::riemann) {
    if (!(initial.rho_l > 0.0) || !(initial.rho_r > 0.0)) fail("initial", "riemann densities must be positive");
    if (!(initial.jump_a < initial.jump_b)) fail("riemann_jumps", "need a < b");
  }
  if (initial.kind == InitialKind::mms && origin != 0.0) fail("origin", "mms fields assume origin 0");
  if (initial.kind == InitialKind::mms && dimension == 2) {
    const double halfturns = domain_length / 3.14159265358979323846;
    if (std::abs(halfturns - std::round(halfturns)) > 1e-12 || std::round(halfturns) < 1.0) {
      fail("domain_length", "2D manufactured fields are periodic only on multiples of pi");
    }
  }
}

void apply_setting(RunConfig& config, std::string_view key, std::string_view value) {
  const KeySpec* spec = find_key(trim(key));
  if (spec == nullptr) throw ConfigError("unknown key '" + std::string(trim(key)) + "'");
  spec->set(config, trim(value));
}

RunConfig parse_config_text(std::string_view text, RunConfig base) {
  std::size_t line_no = 0;
  std::size_t start = 0;
  std::map<std::string, std::size_t> seen;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    std::string_view line = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    start = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key=value", line_no);
    }
    const std::string key(trim(line.substr(0, eq)));
    if (auto it = seen.find(key); it != seen.end()) {
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "' (first on line " +
                            std::to_string(it->second) + ")",
                        line_no);
    }
    seen[key] = line_no;
    try {
      apply_setting(base, key, line.substr(eq + 1));
    } catch (const Error& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what(), line_no);
    }
  }
  base.validate();
  return base;
}

RunConfig parse_config_file(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), std::move(base));
}

std::string to_config_text(const RunConfig& config) {
  std::string out;
  for (const auto& spec : key_specs()) out += spec.key + " = " + spec.get(config) + "\n";
  return out;
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& spec : key_specs()) k.push_back(spec.key);
    return k;
  }();
  return keys;
}

}  // namespace korteweg

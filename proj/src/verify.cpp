#include "korteweg/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "korteweg/diagnostics.hpp"
#include "korteweg/scheme1d.hpp"
#include "korteweg/scheme2d.hpp"

namespace korteweg {

namespace {

std::string fmt_worst(const char* label, double worst, double bound) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "%s %.3e (bound %.1e)", label, worst, bound);
  return buf;
}

// Random states mixing rough and moderately smooth data across both pressure laws.
struct Corpus {
  std::mt19937_64 rng;
  std::uniform_real_distribution<double> unit{0.0, 1.0};

  explicit Corpus(std::uint64_t seed) : rng(seed) {}

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(rng); }

  PressureModel model() {
    return unit(rng) < 0.5 ? PressureModel::isothermal(uniform(0.2, 3.0)) : PressureModel::quadratic(uniform(0.2, 5.0));
  }
  SchemeParams params(Dissipation d) { return SchemeParams{uniform(0.0, 0.1), uniform(0.0, 0.1), d}; }

  State1D state_1d(std::size_t n) {
    State1D s{Field1D(n), Field1D(n)};
    const double lo = uniform(0.1, 1.0), span = uniform(0.1, 3.0), m = uniform(0.1, 2.0);
    for (std::size_t i = 0; i < n; ++i) {
      s.rho[i] = lo + span * unit(rng);
      s.mom[i] = m * (2.0 * unit(rng) - 1.0);
    }
    return s;
  }
  State2D state_2d(std::size_t n) {
    State2D s{Field2D(n), Field2D(n), Field2D(n)};
    const double lo = uniform(0.1, 1.0), span = uniform(0.1, 3.0), m = uniform(0.1, 2.0);
    for (std::size_t k = 0; k < n * n; ++k) {
      s.rho.values()[k] = lo + span * unit(rng);
      s.mom_x.values()[k] = m * (2.0 * unit(rng) - 1.0);
      s.mom_y.values()[k] = m * (2.0 * unit(rng) - 1.0);
    }
    return s;
  }
  Field1D field_1d(std::size_t n) {
    Field1D f(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = uniform(-5.0, 5.0);
    return f;
  }
  Field2D field_2d(std::size_t n) {
    Field2D f(n);
    for (double& v : f.values()) v = uniform(-5.0, 5.0);
    return f;
  }
};

double relative_sum(const Field1D& f) {
  double s = 0.0, m = 0.0;
  for (double v : f.values()) {
    s += v;
    m += std::abs(v);
  }
  return m > 0.0 ? std::abs(s) / m : 0.0;
}

double relative_sum(const Field2D& f) {
  double s = 0.0, m = 0.0;
  for (double v : f.values()) {
    s += v;
    m += std::abs(v);
  }
  return m > 0.0 ? std::abs(s) / m : 0.0;
}

CheckResult identities(Corpus& c, std::size_t pairs) {
  double worst = 0.0;
  for (std::size_t n : {3u, 16u, 101u}) {
    const Grid1D g(n);
    for (std::size_t k = 0; k < pairs; ++k) {
      worst = std::max(worst, check_identities(c.field_1d(n), c.field_1d(n), g).max_relative());
    }
  }
  for (std::size_t n : {3u, 8u, 17u}) {
    const Grid2D g(n);
    for (std::size_t k = 0; k < pairs; ++k) {
      worst = std::max(worst, check_identities(c.field_2d(n), c.field_2d(n), g).max_relative());
    }
  }
  return {"operator identities (1D N=3,16,101; 2D N=3,8,17)", worst <= 1e-12, fmt_worst("worst relative", worst, 1e-12)};
}

CheckResult conservation(Corpus& c, std::size_t states_1d, std::size_t states_2d, Dissipation d) {
  const char* label = d == Dissipation::rusanov ? "Rusanov" : "Lax-Friedrichs";
  double worst = 0.0;
  const std::size_t sizes_1d[] = {3, 8, 32, 64};
  for (std::size_t k = 0; k < states_1d; ++k) {
    const std::size_t n = sizes_1d[k % 4];
    const Rhs1D r = rhs_1d(c.state_1d(n), c.model(), c.params(d), Grid1D(n));
    worst = std::max({worst, relative_sum(r.d_rho), relative_sum(r.d_mom)});
  }
  const std::size_t sizes_2d[] = {3, 8, 32};
  for (std::size_t k = 0; k < states_2d; ++k) {
    const std::size_t n = sizes_2d[k % 3];
    const Rhs2D r = rhs_2d(c.state_2d(n), c.model(), c.params(d), Grid2D(n));
    worst = std::max({worst, relative_sum(r.d_rho), relative_sum(r.d_mom_x), relative_sum(r.d_mom_y)});
  }
  return {std::string("conservation of every RHS, ") + label, worst <= 1e-12,
          fmt_worst("worst |sum| / sum|.|", worst, 1e-12)};
}

struct DissipationWorst {
  double value = 0.0;     // most negative value / scale
  double residual = 0.0;  // worst relative reconstruction residual
  double cross = 0.0;     // worst D1/D2 violation
  bool nonneg_bc = true;
};

void update(DissipationWorst& w, const DissipationReport& r, bool two_d) {
  w.value = std::max(w.value, -r.value / r.scale);
  w.residual = std::max(w.residual, r.relative_residual());
  if (r.component("B").value < 0.0 || r.component("C").value < 0.0) w.nonneg_bc = false;
  if (two_d) w.cross = std::max({w.cross, r.component("D1").violation(), r.component("D2").violation()});
}

std::vector<CheckResult> dissipation(Corpus& c, std::size_t states_1d, std::size_t states_2d) {
  DissipationWorst w1, w2;
  const std::size_t sizes_1d[] = {3, 8, 32, 64};
  for (std::size_t k = 0; k < states_1d; ++k) {
    const std::size_t n = sizes_1d[k % 4];
    update(w1, dissipation_report_1d(c.state_1d(n), c.model(), c.params(Dissipation::lax_friedrichs), Grid1D(n)),
           false);
  }
  const std::size_t sizes_2d[] = {3, 8, 32};
  for (std::size_t k = 0; k < states_2d; ++k) {
    const std::size_t n = sizes_2d[k % 3];
    update(w2, dissipation_report_2d(c.state_2d(n), c.model(), c.params(Dissipation::lax_friedrichs), Grid2D(n)),
           true);
  }
  std::vector<CheckResult> out;
  for (int dim : {1, 2}) {
    const DissipationWorst& w = dim == 1 ? w1 : w2;
    const std::string tag = dim == 1 ? "1D" : "2D";
    out.push_back({tag + " energy dissipation -<v,F> >= -1e-10 scale", w.value <= 1e-10,
                   fmt_worst("worst -value/scale", w.value, 1e-10)});
    out.push_back({tag + " dissipation component reconstruction", w.residual <= 1e-10,
                   fmt_worst("worst relative residual", w.residual, 1e-10)});
    out.push_back({tag + " B and C nonnegative", w.nonneg_bc, w.nonneg_bc ? "all nonnegative" : "negative value seen"});
  }
  out.push_back({"2D capillarity cross terms D1, D2 vanish", w2.cross <= 1e-11,
                 fmt_worst("worst relative", w2.cross, 1e-11)});
  return out;
}

}  // namespace

std::vector<CheckResult> verify_suite(const VerifyOptions& options) {
  Corpus corpus(options.seed);
  std::vector<CheckResult> out;
  out.push_back(identities(corpus, options.identity_pairs));
  out.push_back(conservation(corpus, options.states_1d, options.states_2d, Dissipation::lax_friedrichs));
  out.push_back(conservation(corpus, options.states_1d, options.states_2d, Dissipation::rusanov));
  for (auto& r : dissipation(corpus, options.states_1d, options.states_2d)) out.push_back(std::move(r));
  return out;
}

}  // namespace korteweg

#include "korteweg/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "korteweg/error.hpp"
#include "korteweg/scheme1d.hpp"
#include "korteweg/scheme2d.hpp"

namespace korteweg {

namespace {

// The stencil of `op` applied with absolute coefficients to |f|: a bound on the
// magnitude of the summands that produce apply_1d(op, f).
Field1D abs_stencil(OpKind op, const Field1D& f, const Grid1D& grid) {
  Field1D a(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) a[i] = std::abs(f[i]);
  Field1D out(f.size());
  const double h = grid.h();
  for (std::size_t i = 0; i < f.size(); ++i) {
    const long long ii = static_cast<long long>(i);
    switch (op) {
      case OpKind::central: out[i] = (a.at(ii + 1) + a.at(ii - 1)) / (2.0 * h); break;
      case OpKind::forward: out[i] = (a.at(ii + 1) + a[i]) / h; break;
      case OpKind::backward: out[i] = (a[i] + a.at(ii - 1)) / h; break;
      case OpKind::laplacian: out[i] = (a.at(ii + 1) + 2.0 * a[i] + a.at(ii - 1)) / (h * h); break;
    }
  }
  return out;
}

Field2D abs_stencil(OpKind op, Axis axis, const Field2D& f, const Grid2D& grid) {
  const std::size_t n = f.n();
  Field2D a(n);
  for (std::size_t k = 0; k < f.size(); ++k) a.values()[k] = std::abs(f.values()[k]);
  Field2D out(n);
  const double h = grid.h();
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const long long ii = static_cast<long long>(i), jj = static_cast<long long>(j);
      const long long di = axis == Axis::x ? 1 : 0, dj = axis == Axis::y ? 1 : 0;
      const double fp = a.at(ii + di, jj + dj), fm = a.at(ii - di, jj - dj), f0 = a(i, j);
      switch (op) {
        case OpKind::central: out(i, j) = (fp + fm) / (2.0 * h); break;
        case OpKind::forward: out(i, j) = (fp + f0) / h; break;
        case OpKind::backward: out(i, j) = (f0 + fm) / h; break;
        case OpKind::laplacian: out(i, j) = (fp + 2.0 * f0 + fm) / (h * h); break;
      }
    }
  }
  return out;
}

double max_abs_state(std::span<const double> a, std::span<const double> b,
                     std::span<const double> c = {}) {
  double m = 0.0;
  for (auto s : {a, b, c}) {
    for (double x : s) m = std::max(m, std::abs(x));
  }
  return m;
}

void require_lax_friedrichs(const SchemeParams& params) {
  if (params.dissipation != Dissipation::lax_friedrichs) {
    throw ContractError("dissipation reports require Lax-Friedrichs dissipation");
  }
}

}  // namespace

double DissipationComponent::violation() const noexcept {
  const double v = claim == Claim::zero ? std::abs(value) : std::max(0.0, -value);
  return magnitude > 0.0 ? v / magnitude : v;
}

const DissipationComponent& DissipationReport::component(std::string_view name) const {
  for (const auto& c : components) {
    if (c.name == name) return c;
  }
  throw ContractError("no dissipation component named " + std::string(name));
}

Totals totals(const State1D& state, const Grid1D& grid) {
  if (state.size() != grid.size()) throw ContractError("totals: state does not match grid");
  Totals t;
  for (std::size_t i = 0; i < state.size(); ++i) {
    t.mass += state.rho[i];
    t.momentum[0] += state.mom[i];
  }
  const double s = 1.0 / static_cast<double>(grid.size());
  t.mass *= s;
  t.momentum[0] *= s;
  return t;
}

Totals totals(const State2D& state, const Grid2D& grid) {
  if (state.n() != grid.n()) throw ContractError("totals: state does not match grid");
  Totals t;
  for (std::size_t k = 0; k < grid.cells(); ++k) {
    t.mass += state.rho.values()[k];
    t.momentum[0] += state.mom_x.values()[k];
    t.momentum[1] += state.mom_y.values()[k];
  }
  const double s = 1.0 / static_cast<double>(grid.cells());
  t.mass *= s;
  t.momentum[0] *= s;
  t.momentum[1] *= s;
  return t;
}

DissipationReport dissipation_report_1d(const State1D& state, const PressureModel& model,
                                        const SchemeParams& params, const Grid1D& grid) {
  require_lax_friedrichs(params);
  state.validate();
  if (state.size() != grid.size()) throw ContractError("dissipation_report_1d: state does not match grid");
  const std::size_t n = grid.size();
  const double h = grid.h();
  const double kappa = params.kappa;
  const double mu = params.mu;

  DissipationReport rep;
  rep.lambda = global_lambda(state, model);
  const double lh = rep.lambda * h;

  const Field1D u = state.velocity();
  Field1D q(n), p(n);
  for (std::size_t i = 0; i < n; ++i) {
    q[i] = state.mom[i] * u[i];
    p[i] = model.pressure(state.rho[i]);
  }
  const Field1D c_mom = apply_1d(OpKind::central, state.mom, grid);
  const Field1D c_q = apply_1d(OpKind::central, q, grid);
  const Field1D c_p = apply_1d(OpKind::central, p, grid);
  const Field1D lap_rho = apply_1d(OpKind::laplacian, state.rho, grid);
  const Field1D lap_mom = apply_1d(OpKind::laplacian, state.mom, grid);
  const Field1D fwd_u = apply_1d(OpKind::forward, u, grid);

  // Direct route: -<v, F>.
  const EntropyVariables1D v = entropy_variables(state, model, kappa, grid);
  const Rhs1D f = rhs_1d(state, model, params, grid);
  {
    const Field1D m_mom = abs_stencil(OpKind::central, state.mom, grid);
    const Field1D m_q = abs_stencil(OpKind::central, q, grid);
    const Field1D m_p = abs_stencil(OpKind::central, p, grid);
    const Field1D m_lr = abs_stencil(OpKind::laplacian, state.rho, grid);
    const Field1D m_lm = abs_stencil(OpKind::laplacian, state.mom, grid);
    const Field1D m_lu = abs_stencil(OpKind::laplacian, u, grid);
    const Field1D m_g = abs_stencil(OpKind::backward, capillarity_flux_1d(state.rho, grid), grid);
    for (std::size_t i = 0; i < n; ++i) {
      rep.value -= v.v_rho[i] * f.d_rho[i] + v.v_u[i] * f.d_mom[i];
      const double vr = std::abs(model.potential_derivative(state.rho[i]) - 0.5 * u[i] * u[i]) +
                        kappa * m_lr[i];
      rep.magnitude += vr * (m_mom[i] + lh * m_lr[i]) +
                       std::abs(u[i]) * (m_q[i] + m_p[i] + lh * m_lm[i] + mu * m_lu[i] + kappa * m_g[i]);
    }
  }

  DissipationComponent a{"A", 0.0, 0.0, DissipationComponent::Claim::nonnegative};
  DissipationComponent b{"B", 0.0, 0.0, DissipationComponent::Claim::nonnegative};
  DissipationComponent c{"C", 0.0, 0.0, DissipationComponent::Claim::nonnegative};
  for (std::size_t i = 0; i < n; ++i) {
    const double ent = model.potential_derivative(state.rho[i]) - 0.5 * u[i] * u[i];
    const double t1 = (c_mom[i] - lh * lap_rho[i]) * ent;
    const double t2 = u[i] * (c_q[i] + c_p[i] - lh * lap_mom[i]);
    a.value += t1 + t2;
    a.magnitude += std::abs(t1) + std::abs(t2);
    b.value += mu * fwd_u[i] * fwd_u[i];
    c.value += kappa * lh * lap_rho[i] * lap_rho[i];
  }
  b.magnitude = b.value;
  c.magnitude = c.value;
  rep.components = {a, b, c};
  rep.residual = std::abs(rep.value - (a.value + b.value + c.value));
  rep.energy_lower_bound = b.value + c.value;
  const double smax = max_abs_state(state.rho.values(), state.mom.values());
  rep.scale = static_cast<double>(n) * std::pow(1.0 + smax, 3);
  return rep;
}

DissipationReport dissipation_report_2d(const State2D& state, const PressureModel& model,
                                        const SchemeParams& params, const Grid2D& grid) {
  require_lax_friedrichs(params);
  state.validate();
  if (state.n() != grid.n()) throw ContractError("dissipation_report_2d: state does not match grid");
  const std::size_t n = grid.n();
  const std::size_t cells = grid.cells();
  const double h = grid.h();
  const double kappa = params.kappa;
  const double mu = params.mu;

  DissipationReport rep;
  rep.lambda = global_lambda(state, model);
  const double lam = rep.lambda;
  const double lh = lam * h;

  const Field2D& rho = state.rho;
  const Field2D& mx = state.mom_x;
  const Field2D& my = state.mom_y;
  const Field2D u = state.velocity_x();
  const Field2D v = state.velocity_y();
  Field2D muu(n), muv(n), mvv(n), p(n);
  for (std::size_t k = 0; k < cells; ++k) {
    muu.values()[k] = mx.values()[k] * u.values()[k];
    muv.values()[k] = mx.values()[k] * v.values()[k];
    mvv.values()[k] = my.values()[k] * v.values()[k];
    p.values()[k] = model.pressure(rho.values()[k]);
  }
  auto op = [&](OpKind k, Axis a, const Field2D& f) { return apply_2d(k, a, f, grid); };
  auto mag = [&](OpKind k, Axis a, const Field2D& f) { return abs_stencil(k, a, f, grid); };

  const Field2D cx_mx = op(OpKind::central, Axis::x, mx), cy_my = op(OpKind::central, Axis::y, my);
  const Field2D cx_muu = op(OpKind::central, Axis::x, muu), cy_mvv = op(OpKind::central, Axis::y, mvv);
  const Field2D cx_muv = op(OpKind::central, Axis::x, muv), cy_muv = op(OpKind::central, Axis::y, muv);
  const Field2D cx_p = op(OpKind::central, Axis::x, p), cy_p = op(OpKind::central, Axis::y, p);
  const Field2D lx_rho = op(OpKind::laplacian, Axis::x, rho), ly_rho = op(OpKind::laplacian, Axis::y, rho);
  const Field2D lx_mx = op(OpKind::laplacian, Axis::x, mx), ly_mx = op(OpKind::laplacian, Axis::y, mx);
  const Field2D lx_my = op(OpKind::laplacian, Axis::x, my), ly_my = op(OpKind::laplacian, Axis::y, my);
  const Field2D lap_rho = op(OpKind::laplacian, Axis::both, rho);
  const Field2D fx_u = op(OpKind::forward, Axis::x, u), fy_u = op(OpKind::forward, Axis::y, u);
  const Field2D fx_v = op(OpKind::forward, Axis::x, v), fy_v = op(OpKind::forward, Axis::y, v);
  const CapillarityBlocks2D blocks = capillarity_blocks_2d(rho, kappa, grid);

  // Direct route.
  const EntropyVariables2D ev = entropy_variables(state, model, kappa, grid);
  const Rhs2D f = rhs_2d(state, model, params, grid);
  {
    const Field2D m_cx_mx = mag(OpKind::central, Axis::x, mx), m_cy_my = mag(OpKind::central, Axis::y, my);
    const Field2D m_cx_muu = mag(OpKind::central, Axis::x, muu), m_cy_mvv = mag(OpKind::central, Axis::y, mvv);
    const Field2D m_cx_muv = mag(OpKind::central, Axis::x, muv), m_cy_muv = mag(OpKind::central, Axis::y, muv);
    const Field2D m_cx_p = mag(OpKind::central, Axis::x, p), m_cy_p = mag(OpKind::central, Axis::y, p);
    const Field2D m_lx_rho = mag(OpKind::laplacian, Axis::x, rho), m_ly_rho = mag(OpKind::laplacian, Axis::y, rho);
    const Field2D m_lx_mx = mag(OpKind::laplacian, Axis::x, mx), m_ly_mx = mag(OpKind::laplacian, Axis::y, mx);
    const Field2D m_lx_my = mag(OpKind::laplacian, Axis::x, my), m_ly_my = mag(OpKind::laplacian, Axis::y, my);
    const Field2D m_lx_u = mag(OpKind::laplacian, Axis::x, u), m_ly_u = mag(OpKind::laplacian, Axis::y, u);
    const Field2D m_lx_v = mag(OpKind::laplacian, Axis::x, v), m_ly_v = mag(OpKind::laplacian, Axis::y, v);
    for (std::size_t k = 0; k < cells; ++k) {
      rep.value -= ev.v_rho.values()[k] * f.d_rho.values()[k] + ev.v_u.values()[k] * f.d_mom_x.values()[k] +
                   ev.v_v.values()[k] * f.d_mom_y.values()[k];
      const double uu = u.values()[k], vv = v.values()[k];
      const double m_lap = m_lx_rho.values()[k] + m_ly_rho.values()[k];
      const double vr =
          std::abs(model.potential_derivative(rho.values()[k]) - 0.5 * (uu * uu + vv * vv)) + kappa * m_lap;
      rep.magnitude += vr * (m_cx_mx.values()[k] + m_cy_my.values()[k] + lh * m_lap);
      rep.magnitude += std::abs(uu) * (m_cx_muu.values()[k] + m_cy_muv.values()[k] + m_cx_p.values()[k] +
                                       lh * (m_lx_mx.values()[k] + m_ly_mx.values()[k]) +
                                       mu * (m_lx_u.values()[k] + m_ly_u.values()[k]) +
                                       std::abs(blocks.x_block.values()[k]));
      rep.magnitude += std::abs(vv) * (m_cy_mvv.values()[k] + m_cx_muv.values()[k] + m_cy_p.values()[k] +
                                       lh * (m_lx_my.values()[k] + m_ly_my.values()[k]) +
                                       mu * (m_lx_v.values()[k] + m_ly_v.values()[k]) +
                                       std::abs(blocks.y_block.values()[k]));
    }
  }

  using Claim = DissipationComponent::Claim;
  DissipationComponent a1{"A1", 0, 0, Claim::nonnegative}, a2{"A2", 0, 0, Claim::nonnegative};
  DissipationComponent a3{"A3", 0, 0, Claim::nonnegative}, a4{"A4", 0, 0, Claim::nonnegative};
  DissipationComponent b{"B", 0, 0, Claim::nonnegative}, c{"C", 0, 0, Claim::nonnegative};
  DissipationComponent d1{"D1", 0, 0, Claim::zero}, d2{"D2", 0, 0, Claim::zero};
  auto add = [](DissipationComponent& comp, double term) {
    comp.value += term;
    comp.magnitude += std::abs(term);
  };
  for (std::size_t k = 0; k < cells; ++k) {
    const double uu = u.values()[k], vv = v.values()[k];
    const double dP = model.potential_derivative(rho.values()[k]);
    const double div_x = cx_mx.values()[k] - lh * lx_rho.values()[k];
    const double div_y = cy_my.values()[k] - lh * ly_rho.values()[k];

    add(a1, (dP - 0.5 * uu * uu) * div_x);
    add(a1, uu * (cx_muu.values()[k] + cx_p.values()[k] - lh * lx_mx.values()[k]));
    add(a2, (dP - 0.5 * vv * vv) * div_y);
    add(a2, vv * (cy_mvv.values()[k] + cy_p.values()[k] - lh * ly_my.values()[k]));
    add(a3, uu * (cy_muv.values()[k] - lh * ly_mx.values()[k]));
    add(a3, -0.5 * uu * uu * div_y);
    add(a4, vv * (cx_muv.values()[k] - lh * lx_my.values()[k]));
    add(a4, -0.5 * vv * vv * div_x);

    b.value += mu * (fx_u.values()[k] * fx_u.values()[k] + fy_u.values()[k] * fy_u.values()[k] +
                     fx_v.values()[k] * fx_v.values()[k] + fy_v.values()[k] * fy_v.values()[k]);
    c.value += lam * kappa * h * lap_rho.values()[k] * lap_rho.values()[k];

    add(d1, -kappa * lap_rho.values()[k] * cx_mx.values()[k]);
    add(d1, -uu * blocks.x_block.values()[k]);
    add(d2, -kappa * lap_rho.values()[k] * cy_my.values()[k]);
    add(d2, -vv * blocks.y_block.values()[k]);
  }
  b.magnitude = b.value;
  c.magnitude = c.value;
  rep.components = {a1, a2, a3, a4, b, c, d1, d2};
  double sum = 0.0;
  for (const auto& comp : rep.components) sum += comp.value;
  rep.residual = std::abs(rep.value - sum);
  rep.energy_lower_bound = b.value + c.value;

  // Quadratic forms of the cross terms A3 (y-differences of u) and A4
  // (x-differences of v).
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const long long ii = static_cast<long long>(i), jj = static_cast<long long>(j);
      {
        const double du_p = u.at(ii, jj + 1) - u(i, j), du_m = u(i, j) - u.at(ii, jj - 1);
        const double rp = rho.at(ii, jj + 1), rm = rho.at(ii, jj - 1);
        const double vp = v.at(ii, jj + 1), vm = v.at(ii, jj - 1);
        rep.a3_quadratic += lam / (2.0 * h) * (rp * du_p * du_p + rm * du_m * du_m) -
                            1.0 / (4.0 * h) * (rp * vp * du_p * du_p - rm * vm * du_m * du_m);
        rep.a3_lower_bound += 1.0 / (2.0 * h) *
                              (rp * (lam - 0.5 * std::abs(vp)) * du_p * du_p +
                               rm * (lam - 0.5 * std::abs(vm)) * du_m * du_m);
      }
      {
        const double dv_p = v.at(ii + 1, jj) - v(i, j), dv_m = v(i, j) - v.at(ii - 1, jj);
        const double rp = rho.at(ii + 1, jj), rm = rho.at(ii - 1, jj);
        const double up = u.at(ii + 1, jj), um = u.at(ii - 1, jj);
        rep.a4_quadratic += lam / (2.0 * h) * (rp * dv_p * dv_p + rm * dv_m * dv_m) -
                            1.0 / (4.0 * h) * (rp * up * dv_p * dv_p - rm * um * dv_m * dv_m);
        rep.a4_lower_bound += 1.0 / (2.0 * h) *
                              (rp * (lam - 0.5 * std::abs(up)) * dv_p * dv_p +
                               rm * (lam - 0.5 * std::abs(um)) * dv_m * dv_m);
      }
    }
  }

  const double smax = max_abs_state(rho.values(), mx.values(), my.values());
  rep.scale = static_cast<double>(cells) * std::pow(1.0 + smax, 3);
  return rep;
}

std::vector<double> eoc(const std::vector<double>& errors) {
  for (double e : errors) {
    if (!(e > 0.0)) throw ContractError("eoc: errors must be positive");
  }
  std::vector<double> out;
  for (std::size_t r = 1; r < errors.size(); ++r) out.push_back(std::log2(errors[r - 1] / errors[r]));
  return out;
}

}  // namespace korteweg

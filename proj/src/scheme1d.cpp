#include "korteweg/scheme1d.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "korteweg/error.hpp"

namespace korteweg {

namespace {
constexpr std::size_t kGhost = 2;
}

void SemiDiscreteSystem::check_state(std::span<const double> w) const {
  const std::size_t n = cells();
  if (w.size() != unknowns()) {
    throw ContractError("packed state has " + std::to_string(w.size()) + " entries, expected " +
                        std::to_string(unknowns()));
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (!(w[k] > 0.0)) {
      if (std::isnan(w[k])) throw ContractError("non-finite density at cell " + std::to_string(k));
      throw PositivityError("density must be positive, got " + std::to_string(w[k]) + " at cell " +
                                std::to_string(k),
                            k);
    }
  }
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (!std::isfinite(w[k])) {
      throw ContractError("non-finite value in state at cell " + std::to_string(k % n));
    }
  }
}

Field1D capillarity_flux_1d(const Field1D& rho, const Grid1D& grid) {
  const Field1D lap = apply_1d(OpKind::laplacian, rho, grid);
  const Field1D fwd = apply_1d(OpKind::forward, rho, grid);
  const std::size_t n = grid.size();
  Field1D g(n);
  for (std::size_t i = 0; i < n; ++i) {
    const long long ii = static_cast<long long>(i);
    g[i] = 0.5 * (rho.at(ii + 1) * lap[i] + rho[i] * lap.at(ii + 1)) - 0.5 * fwd[i] * fwd[i];
  }
  return g;
}

Scheme1D::Scheme1D(PressureModel model, SchemeParams params, Grid1D grid)
    : model_(model), params_(params), grid_(grid) {
  params_.validate();
  const std::size_t padded = grid_.size() + 2 * kGhost;
  for (auto* v : {&rho_, &mom_, &u_, &lap_, &flux_g_, &diss_rho_, &diss_mom_, &speed_}) {
    v->assign(padded, 0.0);
  }
}

double Scheme1D::lambda(std::span<const double> w) const {
  const std::size_t n = cells();
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double rho = w[i];
    const double dp = model_.derivative(rho);
    if (dp < 0.0) throw ContractError("pressure law is not monotone at cell " + std::to_string(i));
    m = std::max(m, std::abs(w[n + i] / rho) + std::sqrt(dp));
  }
  return 0.5 * m;
}

void Scheme1D::rhs(std::span<const double> w, double lambda, std::span<double> out) const {
  const std::size_t n = cells();
  if (w.size() != 2 * n || out.size() != 2 * n) {
    throw ContractError("Scheme1D::rhs: packed vectors must hold 2N entries");
  }
  const double h = grid_.h();
  const double inv_h = 1.0 / h;
  const double inv_2h = 0.5 / h;
  const double inv_h2 = 1.0 / (h * h);
  const double kappa = params_.kappa;
  const double mu = params_.mu;
  const std::size_t padded = n + 2 * kGhost;

  double* rho = rho_.data();
  double* mom = mom_.data();
  double* u = u_.data();
  for (std::size_t k = 0; k < padded; ++k) {
    const std::size_t c = grid_.wrap(static_cast<long long>(k) - static_cast<long long>(kGhost));
    rho[k] = w[c];
    mom[k] = w[n + c];
  }
  for (std::size_t k = kGhost; k < n + kGhost; ++k) {
    if (!(rho[k] > 0.0) || !std::isfinite(rho[k]) || !std::isfinite(mom[k])) {
      const std::size_t cell = k - kGhost;
      if (std::isfinite(rho[k]) && std::isfinite(mom[k])) {
        throw PositivityError("density must be positive, got " + std::to_string(rho[k]) +
                                  " at cell " + std::to_string(cell),
                              cell);
      }
      throw ContractError("non-finite value in state at cell " + std::to_string(cell));
    }
  }
  for (std::size_t k = 0; k < padded; ++k) u[k] = mom[k] / rho[k];

  // Laplacian of rho at padded cells 1..n+2, capillarity interface values G at
  // padded interfaces k+1/2 for k = 1..n+1.
  double* lap = lap_.data();
  for (std::size_t k = 1; k + 1 < padded; ++k) {
    lap[k] = (rho[k + 1] - 2.0 * rho[k] + rho[k - 1]) * inv_h2;
  }
  double* g = flux_g_.data();
  for (std::size_t k = 1; k + 2 < padded; ++k) {
    const double grad = (rho[k + 1] - rho[k]) * inv_h;
    g[k] = 0.5 * (rho[k + 1] * lap[k] + rho[k] * lap[k + 1]) - 0.5 * grad * grad;
  }

  // Numerical dissipation fluxes at interfaces k+1/2.
  double* dr = diss_rho_.data();
  double* dm = diss_mom_.data();
  if (params_.dissipation == Dissipation::lax_friedrichs) {
    for (std::size_t k = 1; k + 2 < padded; ++k) {
      dr[k] = lambda * (rho[k + 1] - rho[k]) * inv_h;
      dm[k] = lambda * (mom[k + 1] - mom[k]) * inv_h;
    }
  } else {
    double* s = speed_.data();
    for (std::size_t k = 1; k + 1 < padded; ++k) {
      s[k] = 0.5 * (std::abs(u[k]) + std::sqrt(model_.derivative(rho[k])));
    }
    for (std::size_t k = 1; k + 2 < padded; ++k) {
      const double lam = std::max(s[k], s[k + 1]);
      dr[k] = lam * (rho[k + 1] - rho[k]) * inv_h;
      dm[k] = lam * (mom[k + 1] - mom[k]) * inv_h;
    }
  }

  double* d_rho = out.data();
  double* d_mom = out.data() + n;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k = i + kGhost;
    d_rho[i] = -(mom[k + 1] - mom[k - 1]) * inv_2h + (dr[k] - dr[k - 1]);

    const double convective = (mom[k + 1] * u[k + 1] - mom[k - 1] * u[k - 1]) * inv_2h;
    const double pressure = (model_.pressure(rho[k + 1]) - model_.pressure(rho[k - 1])) * inv_2h;
    const double dissipation = dm[k] - dm[k - 1];
    const double viscosity = mu * (u[k + 1] - 2.0 * u[k] + u[k - 1]) * inv_h2;
    const double capillarity = kappa * (g[k] - g[k - 1]) * inv_h;
    d_mom[i] = -convective - pressure + dissipation + viscosity + capillarity;
  }
}

std::vector<std::size_t> Scheme1D::footprint(std::size_t cell) const {
  std::vector<std::size_t> f;
  for (long long off = -2; off <= 2; ++off) {
    f.push_back(grid_.wrap(static_cast<long long>(cell) + off));
  }
  std::sort(f.begin(), f.end());
  f.erase(std::unique(f.begin(), f.end()), f.end());
  return f;
}

Measurement Scheme1D::measure(std::span<const double> w) const {
  const std::size_t n = cells();
  const double h = grid_.h();
  Measurement m;
  for (std::size_t i = 0; i < n; ++i) {
    const double rho = w[i];
    const double mom = w[n + i];
    const double grad = (w[i + 1 == n ? 0 : i + 1] - rho) / h;
    m.mass += rho;
    m.momentum[0] += mom;
    m.energy += 0.5 * mom * mom / rho + model_.potential(rho) + 0.5 * params_.kappa * grad * grad;
  }
  const double scale = 1.0 / static_cast<double>(n);
  m.mass *= scale;
  m.momentum[0] *= scale;
  m.energy *= scale;
  return m;
}

std::vector<double> Scheme1D::pack(const State1D& state) const {
  if (state.size() != cells() || state.mom.size() != cells()) {
    throw ContractError("Scheme1D::pack: state does not match grid");
  }
  std::vector<double> w(2 * cells());
  std::copy(state.rho.values().begin(), state.rho.values().end(), w.begin());
  std::copy(state.mom.values().begin(), state.mom.values().end(), w.begin() + static_cast<long>(cells()));
  return w;
}

State1D Scheme1D::unpack(std::span<const double> w) const {
  const std::size_t n = cells();
  if (w.size() != 2 * n) throw ContractError("Scheme1D::unpack: wrong packed size");
  return State1D{Field1D(std::vector<double>(w.begin(), w.begin() + static_cast<long>(n))),
                 Field1D(std::vector<double>(w.begin() + static_cast<long>(n), w.end()))};
}

Rhs1D rhs_1d(const State1D& state, const PressureModel& model, const SchemeParams& params,
             const Grid1D& grid) {
  state.validate();
  if (state.size() != grid.size()) throw ContractError("rhs_1d: state does not match grid");
  const Scheme1D scheme(model, params, grid);
  const std::vector<double> w = scheme.pack(state);
  std::vector<double> out(w.size());
  scheme.rhs(w, out);
  const State1D d = scheme.unpack(out);
  return Rhs1D{d.rho, d.mom};
}

}  // namespace korteweg

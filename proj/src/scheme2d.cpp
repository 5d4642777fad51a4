#include "korteweg/scheme2d.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "korteweg/error.hpp"

namespace korteweg {

namespace {

constexpr long long kGhost = 2;

// Row-major view into a periodically padded (n + 4)^2 buffer addressed with
// cell indices in [-2, n + 1].
struct Padded {
  long long stride;
  std::size_t operator()(long long i, long long j) const noexcept {
    return static_cast<std::size_t>((j + kGhost) * stride + (i + kGhost));
  }
};

}  // namespace

CapillarityBlocks2D capillarity_blocks_2d(const Field2D& rho, double kappa, const Grid2D& grid) {
  const std::size_t n = grid.n();
  const Field2D lap = apply_2d(OpKind::laplacian, Axis::both, rho, grid);
  const Field2D fx = apply_2d(OpKind::forward, Axis::x, rho, grid);
  const Field2D fy = apply_2d(OpKind::forward, Axis::y, rho, grid);
  const Field2D bx = apply_2d(OpKind::backward, Axis::x, rho, grid);
  const Field2D by = apply_2d(OpKind::backward, Axis::y, rho, grid);
  const Field2D cx = apply_2d(OpKind::central, Axis::x, rho, grid);
  const Field2D cy = apply_2d(OpKind::central, Axis::y, rho, grid);

  Field2D cross_x(n), sq_x(n), mixed_x(n), shear_x(n);
  Field2D cross_y(n), sq_y(n), mixed_y(n), shear_y(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const long long ii = static_cast<long long>(i), jj = static_cast<long long>(j);
      cross_x(i, j) = 0.5 * (rho(i, j) * lap.at(ii + 1, jj) + rho.at(ii + 1, jj) * lap(i, j));
      sq_x(i, j) = fx(i, j) * fx(i, j);
      mixed_x(i, j) = by.at(ii + 1, jj) * by(i, j);
      shear_x(i, j) = cx(i, j) * fy(i, j);

      cross_y(i, j) = 0.5 * (rho(i, j) * lap.at(ii, jj + 1) + rho.at(ii, jj + 1) * lap(i, j));
      sq_y(i, j) = fy(i, j) * fy(i, j);
      mixed_y(i, j) = bx.at(ii, jj + 1) * bx(i, j);
      shear_y(i, j) = cy(i, j) * fx(i, j);
    }
  }
  const Field2D a_x = apply_2d(OpKind::backward, Axis::x, cross_x, grid);
  const Field2D b_x = apply_2d(OpKind::backward, Axis::x, sq_x, grid);
  const Field2D c_x = apply_2d(OpKind::backward, Axis::x, mixed_x, grid);
  const Field2D d_x = apply_2d(OpKind::backward, Axis::y, shear_x, grid);
  const Field2D a_y = apply_2d(OpKind::backward, Axis::y, cross_y, grid);
  const Field2D b_y = apply_2d(OpKind::backward, Axis::y, sq_y, grid);
  const Field2D c_y = apply_2d(OpKind::backward, Axis::y, mixed_y, grid);
  const Field2D d_y = apply_2d(OpKind::backward, Axis::x, shear_y, grid);

  CapillarityBlocks2D out{Field2D(n), Field2D(n)};
  for (std::size_t k = 0; k < n * n; ++k) {
    out.x_block.values()[k] =
        kappa * (a_x.values()[k] - 0.5 * b_x.values()[k] + 0.5 * c_x.values()[k] - d_x.values()[k]);
    out.y_block.values()[k] =
        kappa * (a_y.values()[k] - 0.5 * b_y.values()[k] + 0.5 * c_y.values()[k] - d_y.values()[k]);
  }
  return out;
}

Scheme2D::Scheme2D(PressureModel model, SchemeParams params, Grid2D grid)
    : model_(model), params_(params), grid_(grid) {
  params_.validate();
  const std::size_t p = grid_.n() + 2 * kGhost;
  for (auto* v : {&rho_, &mx_, &my_, &u_, &v_, &speed_, &lap_, &gx_, &hx_, &gy_, &hy_}) {
    v->assign(p * p, 0.0);
  }
}

double Scheme2D::lambda(std::span<const double> w) const {
  const std::size_t cells_ = cells();
  double m = 0.0;
  for (std::size_t k = 0; k < cells_; ++k) {
    const double rho = w[k];
    const double dp = model_.derivative(rho);
    if (dp < 0.0) throw ContractError("pressure law is not monotone at cell " + std::to_string(k));
    m = std::max(m, std::hypot(w[cells_ + k] / rho, w[2 * cells_ + k] / rho) + std::sqrt(dp));
  }
  return 0.5 * m;
}

void Scheme2D::rhs(std::span<const double> w, double lambda, std::span<double> out) const {
  const std::size_t total = cells();
  if (w.size() != 3 * total || out.size() != 3 * total) {
    throw ContractError("Scheme2D::rhs: packed vectors must hold 3 N^2 entries");
  }
  const long long n = static_cast<long long>(grid_.n());
  const Padded at{n + 2 * kGhost};
  const double h = grid_.h();
  const double inv_h = 1.0 / h;
  const double inv_2h = 0.5 / h;
  const double inv_h2 = 1.0 / (h * h);
  const double kappa = params_.kappa;
  const double mu = params_.mu;

  double* rho = rho_.data();
  double* mx = mx_.data();
  double* my = my_.data();
  double* u = u_.data();
  double* v = v_.data();
  for (long long j = -kGhost; j < n + kGhost; ++j) {
    const std::size_t cj = grid_.wrap(j);
    for (long long i = -kGhost; i < n + kGhost; ++i) {
      const std::size_t c = grid_.index(grid_.wrap(i), cj);
      const std::size_t p = at(i, j);
      rho[p] = w[c];
      mx[p] = w[total + c];
      my[p] = w[2 * total + c];
    }
  }
  for (std::size_t c = 0; c < total; ++c) {
    if (!(w[c] > 0.0) || !std::isfinite(w[c]) || !std::isfinite(w[total + c]) ||
        !std::isfinite(w[2 * total + c])) {
      if (std::isfinite(w[c]) && std::isfinite(w[total + c]) && std::isfinite(w[2 * total + c])) {
        throw PositivityError("density must be positive, got " + std::to_string(w[c]) + " at cell " +
                                  std::to_string(c),
                              c);
      }
      throw ContractError("non-finite value in state at cell " + std::to_string(c));
    }
  }
  const std::size_t padded_total = rho_.size();
  for (std::size_t p = 0; p < padded_total; ++p) {
    u[p] = mx[p] / rho[p];
    v[p] = my[p] / rho[p];
  }

  double* lap = lap_.data();
  for (long long j = -1; j <= n; ++j) {
    for (long long i = -1; i <= n; ++i) {
      lap[at(i, j)] = (rho[at(i + 1, j)] + rho[at(i - 1, j)] + rho[at(i, j + 1)] + rho[at(i, j - 1)] -
                       4.0 * rho[at(i, j)]) *
                      inv_h2;
    }
  }

  // Capillarity interface quantities on [-1, n-1]^2:
  //   gx: cross-average and gradient products at (i+1/2, j)
  //   hx: central_x(rho) forward_y(rho) at (i, j+1/2)
  //   gy, hy: the same with x and y exchanged.
  double* gx = gx_.data();
  double* hx = hx_.data();
  double* gy = gy_.data();
  double* hy = hy_.data();
  for (long long j = -1; j < n; ++j) {
    for (long long i = -1; i < n; ++i) {
      const std::size_t p = at(i, j);
      const double r = rho[p];
      const double rxp = rho[at(i + 1, j)];
      const double ryp = rho[at(i, j + 1)];
      const double fwd_x = (rxp - r) * inv_h;
      const double fwd_y = (ryp - r) * inv_h;
      gx[p] = 0.5 * (r * lap[at(i + 1, j)] + rxp * lap[p]) - 0.5 * fwd_x * fwd_x +
              0.5 * ((rxp - rho[at(i + 1, j - 1)]) * inv_h) * ((r - rho[at(i, j - 1)]) * inv_h);
      hx[p] = (rxp - rho[at(i - 1, j)]) * inv_2h * fwd_y;
      gy[p] = 0.5 * (r * lap[at(i, j + 1)] + ryp * lap[p]) - 0.5 * fwd_y * fwd_y +
              0.5 * ((ryp - rho[at(i - 1, j + 1)]) * inv_h) * ((r - rho[at(i - 1, j)]) * inv_h);
      hy[p] = (ryp - rho[at(i, j - 1)]) * inv_2h * fwd_x;
    }
  }

  double* s = speed_.data();
  const bool rusanov = params_.dissipation == Dissipation::rusanov;
  if (rusanov) {
    for (long long j = -1; j <= n; ++j) {
      for (long long i = -1; i <= n; ++i) {
        const std::size_t p = at(i, j);
        s[p] = 0.5 * (std::hypot(u[p], v[p]) + std::sqrt(model_.derivative(rho[p])));
      }
    }
  }

  double* d_rho = out.data();
  double* d_mx = out.data() + total;
  double* d_my = out.data() + 2 * total;
  for (long long j = 0; j < n; ++j) {
    for (long long i = 0; i < n; ++i) {
      const std::size_t p = at(i, j);
      const std::size_t e = at(i + 1, j), west = at(i - 1, j), nn = at(i, j + 1), so = at(i, j - 1);
      const std::size_t c = grid_.index(static_cast<std::size_t>(i), static_cast<std::size_t>(j));

      double le = lambda, lw = lambda, ln = lambda, ls = lambda;
      if (rusanov) {
        le = std::max(s[p], s[e]);
        lw = std::max(s[p], s[west]);
        ln = std::max(s[p], s[nn]);
        ls = std::max(s[p], s[so]);
      }
      auto dissipation = [&](const double* f) {
        return (le * (f[e] - f[p]) - lw * (f[p] - f[west]) + ln * (f[nn] - f[p]) - ls * (f[p] - f[so])) *
               inv_h;
      };

      d_rho[c] = -((mx[e] - mx[west]) + (my[nn] - my[so])) * inv_2h + dissipation(rho);

      const double conv_x = ((mx[e] * u[e] - mx[west] * u[west]) + (mx[nn] * v[nn] - mx[so] * v[so])) * inv_2h;
      const double pres_x = (model_.pressure(rho[e]) - model_.pressure(rho[west])) * inv_2h;
      const double visc_x = mu * (u[e] + u[west] + u[nn] + u[so] - 4.0 * u[p]) * inv_h2;
      const double cap_x = kappa * ((gx[p] - gx[west]) - (hx[p] - hx[so])) * inv_h;
      d_mx[c] = -conv_x - pres_x + dissipation(mx) + visc_x + cap_x;

      const double conv_y = ((my[nn] * v[nn] - my[so] * v[so]) + (mx[e] * v[e] - mx[west] * v[west])) * inv_2h;
      const double pres_y = (model_.pressure(rho[nn]) - model_.pressure(rho[so])) * inv_2h;
      const double visc_y = mu * (v[e] + v[west] + v[nn] + v[so] - 4.0 * v[p]) * inv_h2;
      const double cap_y = kappa * ((gy[p] - gy[so]) - (hy[p] - hy[west])) * inv_h;
      d_my[c] = -conv_y - pres_y + dissipation(my) + visc_y + cap_y;
    }
  }
}

std::vector<std::size_t> Scheme2D::footprint(std::size_t cell) const {
  const long long n = static_cast<long long>(grid_.n());
  const long long i = static_cast<long long>(cell) % n, j = static_cast<long long>(cell) / n;
  std::vector<std::size_t> f;
  for (long long dj = -2; dj <= 2; ++dj) {
    for (long long di = -2; di <= 2; ++di) {
      f.push_back(grid_.index(grid_.wrap(i + di), grid_.wrap(j + dj)));
    }
  }
  std::sort(f.begin(), f.end());
  f.erase(std::unique(f.begin(), f.end()), f.end());
  return f;
}

Measurement Scheme2D::measure(std::span<const double> w) const {
  const std::size_t n = grid_.n();
  const std::size_t total = cells();
  const double h = grid_.h();
  Measurement m;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t jp = j + 1 == n ? 0 : j + 1;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t ip = i + 1 == n ? 0 : i + 1;
      const std::size_t c = grid_.index(i, j);
      const double rho = w[c];
      const double mx = w[total + c];
      const double my = w[2 * total + c];
      const double gx = (w[grid_.index(ip, j)] - rho) / h;
      const double gy = (w[grid_.index(i, jp)] - rho) / h;
      m.mass += rho;
      m.momentum[0] += mx;
      m.momentum[1] += my;
      m.energy += 0.5 * (mx * mx + my * my) / rho + model_.potential(rho) +
                  0.5 * params_.kappa * (gx * gx + gy * gy);
    }
  }
  const double scale = 1.0 / static_cast<double>(total);
  m.mass *= scale;
  m.momentum[0] *= scale;
  m.momentum[1] *= scale;
  m.energy *= scale;
  return m;
}

std::vector<double> Scheme2D::pack(const State2D& state) const {
  if (state.n() != grid_.n() || state.mom_x.n() != grid_.n() || state.mom_y.n() != grid_.n()) {
    throw ContractError("Scheme2D::pack: state does not match grid");
  }
  std::vector<double> w;
  w.reserve(3 * cells());
  for (const Field2D* f : {&state.rho, &state.mom_x, &state.mom_y}) {
    w.insert(w.end(), f->values().begin(), f->values().end());
  }
  return w;
}

State2D Scheme2D::unpack(std::span<const double> w) const {
  const std::size_t total = cells();
  if (w.size() != 3 * total) throw ContractError("Scheme2D::unpack: wrong packed size");
  auto block = [&](std::size_t b) {
    return Field2D(grid_.n(), std::vector<double>(w.begin() + static_cast<long>(b * total),
                                                  w.begin() + static_cast<long>((b + 1) * total)));
  };
  return State2D{block(0), block(1), block(2)};
}

Rhs2D rhs_2d(const State2D& state, const PressureModel& model, const SchemeParams& params,
             const Grid2D& grid) {
  state.validate();
  if (state.n() != grid.n()) throw ContractError("rhs_2d: state does not match grid");
  const Scheme2D scheme(model, params, grid);
  const std::vector<double> w = scheme.pack(state);
  std::vector<double> out(w.size());
  scheme.rhs(w, out);
  State2D d = scheme.unpack(out);
  return Rhs2D{std::move(d.rho), std::move(d.mom_x), std::move(d.mom_y)};
}

}  // namespace korteweg

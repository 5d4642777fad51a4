#include "korteweg/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "korteweg/error.hpp"

namespace korteweg {

namespace {

void require_finite(std::span<const double> v, const char* what) {
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!std::isfinite(v[k])) {
      throw ContractError(std::string(what) + ": non-finite value at index " + std::to_string(k));
    }
  }
}

void require_size(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw ContractError(std::string(what) + ": field has " + std::to_string(got) +
                        " entries, grid expects " + std::to_string(want));
  }
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// `get(off)` returns the value at offset `off` along the stencil's line.
template <class Get>
double stencil(OpKind op, Get&& get, double h) {
  switch (op) {
    case OpKind::central:
      return (get(1) - get(-1)) / (2.0 * h);
    case OpKind::forward:
      return (get(1) - get(0)) / h;
    case OpKind::backward:
      return (get(0) - get(-1)) / h;
    case OpKind::laplacian:
      return (get(1) - 2.0 * get(0) + get(-1)) / (h * h);
  }
  return 0.0;
}

// Sum over the stencil's summands in absolute value, used as a rounding scale.
template <class Get>
double stencil_magnitude(OpKind op, Get&& get, double h) {
  switch (op) {
    case OpKind::central:
      return (std::abs(get(1)) + std::abs(get(-1))) / (2.0 * h);
    case OpKind::forward:
      return (std::abs(get(1)) + std::abs(get(0))) / h;
    case OpKind::backward:
      return (std::abs(get(0)) + std::abs(get(-1))) / h;
    case OpKind::laplacian:
      return (std::abs(get(1)) + 2.0 * std::abs(get(0)) + std::abs(get(-1))) / (h * h);
  }
  return 0.0;
}

// Identity residuals along one periodic axis. `shift(k, off)` maps flat cell k
// and an offset along the axis to a flat index.
template <class Shift>
IdentityReport line_identities(std::span<const double> phi, std::span<const double> psi,
                               double h, Shift&& shift) {
  const std::size_t total = phi.size();
  IdentityReport r;
  auto sum_op = [&](OpKind op) {
    IdentityReport::Entry e;
    double s = 0.0;
    for (std::size_t k = 0; k < total; ++k) {
      auto get = [&](int off) { return phi[shift(k, off)]; };
      s += stencil(op, get, h);
      e.scale += stencil_magnitude(op, get, h);
    }
    e.residual = std::abs(s);
    return e;
  };
  r.sum_central = sum_op(OpKind::central);
  r.sum_forward = sum_op(OpKind::forward);
  r.sum_backward = sum_op(OpKind::backward);
  r.sum_laplacian = sum_op(OpKind::laplacian);

  const double pmax = max_abs(phi);
  std::vector<double> fwd(total), bwd(total);
  for (std::size_t k = 0; k < total; ++k) {
    auto get = [&](int off) { return phi[shift(k, off)]; };
    fwd[k] = stencil(OpKind::forward, get, h);
    bwd[k] = stencil(OpKind::backward, get, h);
  }
  r.central_vs_mean.scale = 2.0 * pmax / h;
  r.laplacian_vs_fwd_bwd.scale = 4.0 * pmax / (h * h);
  r.laplacian_vs_bwd_fwd.scale = 4.0 * pmax / (h * h);
  for (std::size_t k = 0; k < total; ++k) {
    auto get = [&](int off) { return phi[shift(k, off)]; };
    const double c = stencil(OpKind::central, get, h);
    const double lap = stencil(OpKind::laplacian, get, h);
    auto get_b = [&](int off) { return bwd[shift(k, off)]; };
    auto get_f = [&](int off) { return fwd[shift(k, off)]; };
    const double fb = stencil(OpKind::forward, get_b, h);
    const double bf = stencil(OpKind::backward, get_f, h);
    r.central_vs_mean.residual =
        std::max(r.central_vs_mean.residual, std::abs(c - 0.5 * (fwd[k] + bwd[k])));
    r.laplacian_vs_fwd_bwd.residual = std::max(r.laplacian_vs_fwd_bwd.residual, std::abs(lap - fb));
    r.laplacian_vs_bwd_fwd.residual = std::max(r.laplacian_vs_bwd_fwd.residual, std::abs(lap - bf));
  }

  double s = 0.0;
  for (std::size_t k = 0; k < total; ++k) {
    auto gpsi = [&](int off) { return psi[shift(k, off)]; };
    auto gphi = [&](int off) { return phi[shift(k, off)]; };
    s += phi[k] * stencil(OpKind::forward, gpsi, h) + psi[k] * stencil(OpKind::backward, gphi, h);
    r.partial_summation.scale += std::abs(phi[k]) * stencil_magnitude(OpKind::forward, gpsi, h) +
                                 std::abs(psi[k]) * stencil_magnitude(OpKind::backward, gphi, h);
  }
  r.partial_summation.residual = std::abs(s);
  return r;
}

void keep_worse(IdentityReport::Entry& into, const IdentityReport::Entry& other) {
  if (other.relative() > into.relative()) into = other;
}

}  // namespace

Grid1D::Grid1D(std::size_t n_cells, double length, double origin)
    : n_(n_cells), length_(length), origin_(origin), h_(length / static_cast<double>(n_cells)) {
  if (n_cells == 0) throw ContractError("Grid1D: number of cells must be positive");
  if (!(length > 0.0) || !std::isfinite(length)) throw ContractError("Grid1D: length must be positive");
  if (!std::isfinite(origin)) throw ContractError("Grid1D: origin must be finite");
}

Grid2D::Grid2D(std::size_t n_per_axis, double length, double origin)
    : n_(n_per_axis), length_(length), origin_(origin), h_(length / static_cast<double>(n_per_axis)) {
  if (n_per_axis == 0) throw ContractError("Grid2D: number of cells must be positive");
  if (!(length > 0.0) || !std::isfinite(length)) throw ContractError("Grid2D: length must be positive");
  if (!std::isfinite(origin)) throw ContractError("Grid2D: origin must be finite");
}

Field2D::Field2D(std::size_t n, std::vector<double> values) : n_(n), values_(std::move(values)) {
  if (values_.size() != n * n) {
    throw ContractError("Field2D: expected " + std::to_string(n * n) + " values, got " +
                        std::to_string(values_.size()));
  }
}

Field1D apply_1d(OpKind op, const Field1D& f, const Grid1D& grid) {
  require_size(f.size(), grid.size(), "apply_1d");
  require_finite(f.values(), "apply_1d");
  const std::size_t n = grid.size();
  const double h = grid.h();
  Field1D out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const long long ii = static_cast<long long>(i);
    out[i] = stencil(op, [&](int off) { return f.at(ii + off); }, h);
  }
  return out;
}

Field2D apply_2d(OpKind op, Axis axis, const Field2D& f, const Grid2D& grid) {
  require_size(f.size(), grid.cells(), "apply_2d");
  require_finite(f.values(), "apply_2d");
  if (axis == Axis::both) {
    if (op != OpKind::laplacian) {
      throw ContractError("apply_2d: Axis::both is only defined for the laplacian");
    }
    Field2D out = apply_2d(op, Axis::x, f, grid);
    const Field2D y = apply_2d(op, Axis::y, f, grid);
    for (std::size_t k = 0; k < out.size(); ++k) out.values()[k] += y.values()[k];
    return out;
  }
  const std::size_t n = grid.n();
  const double h = grid.h();
  Field2D out(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const long long ii = static_cast<long long>(i), jj = static_cast<long long>(j);
      if (axis == Axis::x) {
        out(i, j) = stencil(op, [&](int off) { return f.at(ii + off, jj); }, h);
      } else {
        out(i, j) = stencil(op, [&](int off) { return f.at(ii, jj + off); }, h);
      }
    }
  }
  return out;
}

double IdentityReport::max_relative() const noexcept {
  double m = 0.0;
  for (const Entry* e : {&sum_central, &sum_forward, &sum_backward, &sum_laplacian, &central_vs_mean,
                         &laplacian_vs_fwd_bwd, &laplacian_vs_bwd_fwd, &partial_summation}) {
    m = std::max(m, e->relative());
  }
  return m;
}

IdentityReport check_identities(const Field1D& phi, const Field1D& psi, const Grid1D& grid) {
  require_size(phi.size(), grid.size(), "check_identities");
  require_size(psi.size(), grid.size(), "check_identities");
  return line_identities(phi.values(), psi.values(), grid.h(), [&](std::size_t k, int off) {
    return grid.wrap(static_cast<long long>(k) + off);
  });
}

IdentityReport check_identities(const Field2D& phi, const Field2D& psi, const Grid2D& grid) {
  require_size(phi.size(), grid.cells(), "check_identities");
  require_size(psi.size(), grid.cells(), "check_identities");
  const std::size_t n = grid.n();
  auto shift_x = [&](std::size_t k, int off) {
    const std::size_t i = k % n, j = k / n;
    return grid.index(grid.wrap(static_cast<long long>(i) + off), j);
  };
  auto shift_y = [&](std::size_t k, int off) {
    const std::size_t i = k % n, j = k / n;
    return grid.index(i, grid.wrap(static_cast<long long>(j) + off));
  };
  IdentityReport r = line_identities(phi.values(), psi.values(), grid.h(), shift_x);
  const IdentityReport ry = line_identities(phi.values(), psi.values(), grid.h(), shift_y);
  keep_worse(r.sum_central, ry.sum_central);
  keep_worse(r.sum_forward, ry.sum_forward);
  keep_worse(r.sum_backward, ry.sum_backward);
  keep_worse(r.central_vs_mean, ry.central_vs_mean);
  keep_worse(r.laplacian_vs_fwd_bwd, ry.laplacian_vs_fwd_bwd);
  keep_worse(r.laplacian_vs_bwd_fwd, ry.laplacian_vs_bwd_fwd);
  keep_worse(r.partial_summation, ry.partial_summation);

  // The full laplacian sums to zero as well.
  const Field2D lap = apply_2d(OpKind::laplacian, Axis::both, phi, grid);
  IdentityReport::Entry both;
  double s = 0.0;
  for (double v : lap.values()) s += v;
  both.residual = std::abs(s);
  both.scale = r.sum_laplacian.scale + ry.sum_laplacian.scale;
  r.sum_laplacian = both.relative() > std::max(r.sum_laplacian.relative(), ry.sum_laplacian.relative())
                        ? both
                        : (ry.sum_laplacian.relative() > r.sum_laplacian.relative() ? ry.sum_laplacian
                                                                                     : r.sum_laplacian);
  return r;
}

}  // namespace korteweg

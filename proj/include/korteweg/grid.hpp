#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace korteweg {

/// Equidistant periodic grid on a 1D torus of the given length.
///
/// Cells are numbered 0..N-1; cell i covers [origin + i*h, origin + (i+1)*h).
/// The default torus is [0, 1), so h = 1/N and the centres are (2i+1)/(2N).
class Grid1D {
 public:
  explicit Grid1D(std::size_t n_cells, double length = 1.0, double origin = 0.0);

  std::size_t size() const noexcept { return n_; }
  double h() const noexcept { return h_; }
  double length() const noexcept { return length_; }
  double origin() const noexcept { return origin_; }
  double center(std::size_t i) const noexcept {
    return origin_ + (static_cast<double>(i) + 0.5) * h_;
  }
  /// Maps any integer index onto 0..N-1.
  std::size_t wrap(long long i) const noexcept {
    const long long n = static_cast<long long>(n_);
    const long long r = i % n;
    return static_cast<std::size_t>(r < 0 ? r + n : r);
  }

  bool operator==(const Grid1D&) const = default;

 private:
  std::size_t n_;
  double length_;
  double origin_;
  double h_;
};

/// Periodic grid of N x N square cells on a 2D torus.
class Grid2D {
 public:
  explicit Grid2D(std::size_t n_per_axis, double length = 1.0, double origin = 0.0);

  std::size_t n() const noexcept { return n_; }
  std::size_t cells() const noexcept { return n_ * n_; }
  double h() const noexcept { return h_; }
  double length() const noexcept { return length_; }
  double origin() const noexcept { return origin_; }
  double center(std::size_t i) const noexcept {
    return origin_ + (static_cast<double>(i) + 0.5) * h_;
  }
  std::size_t wrap(long long i) const noexcept {
    const long long n = static_cast<long long>(n_);
    const long long r = i % n;
    return static_cast<std::size_t>(r < 0 ? r + n : r);
  }
  /// Flat storage index, x fastest.
  std::size_t index(std::size_t i, std::size_t j) const noexcept { return j * n_ + i; }

  bool operator==(const Grid2D&) const = default;

 private:
  std::size_t n_;
  double length_;
  double origin_;
  double h_;
};

/// Cell averages on a 1D grid.
class Field1D {
 public:
  Field1D() = default;
  explicit Field1D(std::size_t n, double fill = 0.0) : values_(n, fill) {}
  explicit Field1D(std::vector<double> values) : values_(std::move(values)) {}
  Field1D(std::initializer_list<double> values) : values_(values) {}

  std::size_t size() const noexcept { return values_.size(); }
  double& operator[](std::size_t i) noexcept { return values_[i]; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  /// Periodic access.
  double at(long long i) const noexcept {
    const long long n = static_cast<long long>(values_.size());
    const long long r = i % n;
    return values_[static_cast<std::size_t>(r < 0 ? r + n : r)];
  }

  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }
  const std::vector<double>& vector() const noexcept { return values_; }

  bool operator==(const Field1D&) const = default;

 private:
  std::vector<double> values_;
};

/// Cell averages on an N x N grid, stored with x fastest.
class Field2D {
 public:
  Field2D() = default;
  explicit Field2D(std::size_t n, double fill = 0.0) : n_(n), values_(n * n, fill) {}
  Field2D(std::size_t n, std::vector<double> values);

  std::size_t n() const noexcept { return n_; }
  std::size_t size() const noexcept { return values_.size(); }
  double& operator()(std::size_t i, std::size_t j) noexcept { return values_[j * n_ + i]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return values_[j * n_ + i]; }
  double at(long long i, long long j) const noexcept {
    const long long n = static_cast<long long>(n_);
    long long a = i % n, b = j % n;
    if (a < 0) a += n;
    if (b < 0) b += n;
    return values_[static_cast<std::size_t>(b * n + a)];
  }

  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }
  const std::vector<double>& vector() const noexcept { return values_; }

  bool operator==(const Field2D&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> values_;
};

enum class OpKind { central, forward, backward, laplacian };
enum class Axis { x, y, both };

/// Periodic difference operator on a 1D field. Returns a new field.
///
/// central  (f[i+1] - f[i-1]) / 2h
/// forward  (f[i+1] - f[i]) / h
/// backward (f[i] - f[i-1]) / h
/// laplacian (f[i+1] - 2 f[i] + f[i-1]) / h^2
Field1D apply_1d(OpKind op, const Field1D& f, const Grid1D& grid);

/// Axis-wise version of apply_1d. Axis::both is only valid for the laplacian
/// and returns the sum of the two axis laplacians.
Field2D apply_2d(OpKind op, Axis axis, const Field2D& f, const Grid2D& grid);

/// Residuals of the summation identities of the difference operators.
///
/// Each entry holds the absolute residual and the magnitude of the terms that
/// produced it, so callers can judge it relative to floating-point rounding.
struct IdentityReport {
  struct Entry {
    double residual = 0.0;
    double scale = 0.0;
    double relative() const noexcept { return scale > 0.0 ? residual / scale : residual; }
  };
  Entry sum_central;            ///< sum of central(phi)
  Entry sum_forward;            ///< sum of forward(phi)
  Entry sum_backward;           ///< sum of backward(phi)
  Entry sum_laplacian;          ///< sum of laplacian(phi)
  Entry central_vs_mean;        ///< max |central - (forward + backward)/2|
  Entry laplacian_vs_fwd_bwd;   ///< max |laplacian - forward(backward)|
  Entry laplacian_vs_bwd_fwd;   ///< max |laplacian - backward(forward)|
  Entry partial_summation;      ///< |sum phi forward(psi) + sum psi backward(phi)|

  double max_relative() const noexcept;
};

IdentityReport check_identities(const Field1D& phi, const Field1D& psi, const Grid1D& grid);
/// 2D variant; every entry is the worse of the x and y axes.
IdentityReport check_identities(const Field2D& phi, const Field2D& psi, const Grid2D& grid);

}  // namespace korteweg

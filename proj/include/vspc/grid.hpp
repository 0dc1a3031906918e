#pragma once

#include <complex>
#include <numbers>

#include <Eigen/Core>

namespace vspc {

/// Row-major n x n sample array; entry (j1, j2) is the value at
/// x = (2 pi j1 / n, 2 pi j2 / n).
using RealGrid = Eigen::Array<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
/// Row-major n x n coefficient array; entry (i1, i2) holds mode
/// k = (wavenumber(i1), wavenumber(i2)).
using ComplexGrid =
    Eigen::Array<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Uniform discretization of the 2 pi periodic torus with n points per axis.
class GridSpec {
 public:
  /// Throws UsageError unless n is a power of two and n >= 8.
  explicit GridSpec(int n);

  int n() const { return n_; }
  static constexpr double length() { return 2.0 * std::numbers::pi; }
  double dx() const { return length() / n_; }
  double cell_area() const { return dx() * dx(); }
  double coordinate(int j) const { return dx() * j; }

  /// Signed wavenumber of array index i, in {-n/2+1, ..., n/2}.
  int wavenumber(int i) const { return i <= n_ / 2 ? i : i - n_; }
  /// Array index holding wavenumber k (taken modulo n).
  int index_of(int k) const { return ((k % n_) + n_) % n_; }
  bool is_nyquist(int i) const { return i == n_ / 2; }
  /// Wavenumber used by odd-order (first derivative) multipliers: the
  /// Nyquist index maps to 0 so real fields stay real.
  double odd_wavenumber(int i) const { return is_nyquist(i) ? 0.0 : wavenumber(i); }
  /// Largest retained |k| component under the 2/3 rule.
  int dealias_cutoff() const { return n_ / 3; }
  bool is_dealiased_mode(int i1, int i2) const;

  RealGrid zeros_real() const { return RealGrid::Zero(n_, n_); }
  ComplexGrid zeros_complex() const { return ComplexGrid::Zero(n_, n_); }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  int n_;
};

}  // namespace vspc

#pragma once

#include <array>
#include <utility>

#include "vspc/grid.hpp"

namespace vspc {

enum class Representation { physical, spectral };

/// A real scalar field on the torus, held either as grid samples or as
/// Fourier coefficients. Spectral coefficients follow
///   fhat(k) = (1/n^2) sum_j f(x_j) exp(-i k.x_j),
/// so fhat(0) is the field mean.
class ScalarField {
 public:
  static ScalarField physical(const GridSpec& grid, RealGrid values);
  static ScalarField spectral(const GridSpec& grid, ComplexGrid coefficients);
  static ScalarField zeros(const GridSpec& grid, Representation rep);
  static ScalarField constant(const GridSpec& grid, double value);

  /// Samples f(x1, x2) at the grid points.
  template <class Fn>
  static ScalarField sample(const GridSpec& grid, Fn&& f) {
    RealGrid v(grid.n(), grid.n());
    for (int j1 = 0; j1 < grid.n(); ++j1)
      for (int j2 = 0; j2 < grid.n(); ++j2) v(j1, j2) = f(grid.coordinate(j1), grid.coordinate(j2));
    return physical(grid, std::move(v));
  }

  const GridSpec& grid() const { return grid_; }
  Representation representation() const { return rep_; }
  bool is_physical() const { return rep_ == Representation::physical; }
  bool is_spectral() const { return rep_ == Representation::spectral; }

  /// Grid samples; throws UsageError for a spectral field.
  const RealGrid& values() const;
  RealGrid& values();
  /// Fourier coefficients; throws UsageError for a physical field.
  const ComplexGrid& coefficients() const;
  ComplexGrid& coefficients();

  ScalarField& operator+=(const ScalarField& other);
  ScalarField& operator-=(const ScalarField& other);
  ScalarField& operator*=(double a);

 private:
  ScalarField(const GridSpec& grid, Representation rep) : grid_(grid), rep_(rep) {}

  GridSpec grid_;
  Representation rep_;
  RealGrid values_;
  ComplexGrid coefficients_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double a, ScalarField f);

/// Two-component vector field on a shared grid.
class VectorField {
 public:
  VectorField(ScalarField c0, ScalarField c1);
  static VectorField zeros(const GridSpec& grid, Representation rep);

  const GridSpec& grid() const { return c_[0].grid(); }
  const ScalarField& operator[](int i) const { return c_[i]; }
  ScalarField& operator[](int i) { return c_[i]; }

  VectorField& operator+=(const VectorField& other);
  VectorField& operator*=(double a);

 private:
  std::array<ScalarField, 2> c_;
};

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(double a, VectorField v);

/// 2x2 tensor field stored by columns: column(k) is F_{.k}, and
/// entry(i, k) = column(k)[i] = F_{ik}.
class TensorField {
 public:
  TensorField(VectorField col0, VectorField col1);
  static TensorField zeros(const GridSpec& grid, Representation rep);
  static TensorField identity(const GridSpec& grid);

  const GridSpec& grid() const { return cols_[0].grid(); }
  const VectorField& column(int k) const { return cols_[k]; }
  VectorField& column(int k) { return cols_[k]; }
  const ScalarField& entry(int i, int k) const { return cols_[k][i]; }
  ScalarField& entry(int i, int k) { return cols_[k][i]; }

  TensorField& operator+=(const TensorField& other);
  TensorField& operator*=(double a);

 private:
  std::array<VectorField, 2> cols_;
};

TensorField operator+(TensorField a, const TensorField& b);
TensorField operator-(TensorField a, const TensorField& b);
TensorField operator*(double a, TensorField f);

}  // namespace vspc

#include "vspc/field.hpp"

#include "vspc/errors.hpp"

namespace vspc {

namespace {

void require_compatible(const ScalarField& a, const ScalarField& b) {
  if (!(a.grid() == b.grid())) throw UsageError("fields live on different grids");
  if (a.representation() != b.representation())
    throw UsageError("fields are in different representations");
}

}  // namespace

ScalarField ScalarField::physical(const GridSpec& grid, RealGrid values) {
  if (values.rows() != grid.n() || values.cols() != grid.n())
    throw UsageError("sample array does not match grid size");
  ScalarField f(grid, Representation::physical);
  f.values_ = std::move(values);
  return f;
}

ScalarField ScalarField::spectral(const GridSpec& grid, ComplexGrid coefficients) {
  if (coefficients.rows() != grid.n() || coefficients.cols() != grid.n())
    throw UsageError("coefficient array does not match grid size");
  ScalarField f(grid, Representation::spectral);
  f.coefficients_ = std::move(coefficients);
  return f;
}

ScalarField ScalarField::zeros(const GridSpec& grid, Representation rep) {
  return rep == Representation::physical ? physical(grid, grid.zeros_real())
                                          : spectral(grid, grid.zeros_complex());
}

ScalarField ScalarField::constant(const GridSpec& grid, double value) {
  return physical(grid, RealGrid::Constant(grid.n(), grid.n(), value));
}

const RealGrid& ScalarField::values() const {
  if (!is_physical()) throw UsageError("field is in spectral representation");
  return values_;
}

RealGrid& ScalarField::values() {
  if (!is_physical()) throw UsageError("field is in spectral representation");
  return values_;
}

const ComplexGrid& ScalarField::coefficients() const {
  if (!is_spectral()) throw UsageError("field is in physical representation");
  return coefficients_;
}

ComplexGrid& ScalarField::coefficients() {
  if (!is_spectral()) throw UsageError("field is in physical representation");
  return coefficients_;
}

ScalarField& ScalarField::operator+=(const ScalarField& other) {
  require_compatible(*this, other);
  if (is_physical())
    values_ += other.values_;
  else
    coefficients_ += other.coefficients_;
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other) {
  require_compatible(*this, other);
  if (is_physical())
    values_ -= other.values_;
  else
    coefficients_ -= other.coefficients_;
  return *this;
}

ScalarField& ScalarField::operator*=(double a) {
  if (is_physical())
    values_ *= a;
  else
    coefficients_ *= a;
  return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double a, ScalarField f) { return f *= a; }

VectorField::VectorField(ScalarField c0, ScalarField c1) : c_{std::move(c0), std::move(c1)} {
  if (!(c_[0].grid() == c_[1].grid())) throw UsageError("vector components on different grids");
}

VectorField VectorField::zeros(const GridSpec& grid, Representation rep) {
  return {ScalarField::zeros(grid, rep), ScalarField::zeros(grid, rep)};
}

VectorField& VectorField::operator+=(const VectorField& other) {
  c_[0] += other.c_[0];
  c_[1] += other.c_[1];
  return *this;
}

VectorField& VectorField::operator*=(double a) {
  c_[0] *= a;
  c_[1] *= a;
  return *this;
}

VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) {
  a[0] -= b[0];
  a[1] -= b[1];
  return a;
}
VectorField operator*(double a, VectorField v) { return v *= a; }

TensorField::TensorField(VectorField col0, VectorField col1) : cols_{std::move(col0), std::move(col1)} {
  if (!(cols_[0].grid() == cols_[1].grid())) throw UsageError("tensor columns on different grids");
}

TensorField TensorField::zeros(const GridSpec& grid, Representation rep) {
  return {VectorField::zeros(grid, rep), VectorField::zeros(grid, rep)};
}

TensorField TensorField::identity(const GridSpec& grid) {
  auto one = ScalarField::constant(grid, 1.0);
  auto zero = ScalarField::constant(grid, 0.0);
  return {VectorField(one, zero), VectorField(zero, one)};
}

TensorField& TensorField::operator+=(const TensorField& other) {
  cols_[0] += other.cols_[0];
  cols_[1] += other.cols_[1];
  return *this;
}

TensorField& TensorField::operator*=(double a) {
  cols_[0] *= a;
  cols_[1] *= a;
  return *this;
}

TensorField operator+(TensorField a, const TensorField& b) { return a += b; }
TensorField operator-(TensorField a, const TensorField& b) {
  a.column(0) = a.column(0) - b.column(0);
  a.column(1) = a.column(1) - b.column(1);
  return a;
}
TensorField operator*(double a, TensorField f) { return f *= a; }

}  // namespace vspc

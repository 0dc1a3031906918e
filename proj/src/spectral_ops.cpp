#include "vspc/spectral_ops.hpp"

#include <cmath>
#include <iostream>
#include <limits>
#include <vector>

#include "vspc/errors.hpp"
#include "vspc/transform.hpp"

namespace vspc {

namespace {

constexpr double kConstraintTolerance = 1e-8;
constexpr double kCommutatorZero = 1e-10;

template <class Multiplier>
ScalarField apply_multiplier(const ScalarField& f, Multiplier&& m) {
  const ScalarField fs = as_spectral(f);
  const GridSpec& g = f.grid();
  ComplexGrid c = fs.coefficients();
  for (int i1 = 0; i1 < g.n(); ++i1)
    for (int i2 = 0; i2 < g.n(); ++i2) c(i1, i2) *= m(i1, i2);
  ScalarField out = ScalarField::spectral(g, std::move(c));
  return f.is_physical() ? to_physical(out) : out;
}

double k_squared(const GridSpec& g, int i1, int i2) {
  const double k1 = g.wavenumber(i1), k2 = g.wavenumber(i2);
  return k1 * k1 + k2 * k2;
}

double symbol(double kk, const SobolevOrder& s) {
  if (s.kind() == Multiplier::inhomogeneous) return std::pow(1.0 + kk, 0.5 * s.s());
  if (kk == 0.0) return 0.0;
  return std::pow(kk, 0.5 * s.s());
}

struct Mode {
  int k1, k2;
  std::complex<double> c;
};

std::vector<Mode> retained_modes(const ScalarField& f, const char* name) {
  const ScalarField fs = as_spectral(f);
  const GridSpec& g = f.grid();
  const auto& c = fs.coefficients();
  const double floor = 1e-14 * std::max(c.abs().maxCoeff(), std::numeric_limits<double>::min());
  std::vector<Mode> modes;
  for (int i1 = 0; i1 < g.n(); ++i1)
    for (int i2 = 0; i2 < g.n(); ++i2) {
      if (std::abs(c(i1, i2)) <= floor) continue;
      if (g.is_dealiased_mode(i1, i2))
        throw UsageError(std::string("commutator_check: ") + name +
                         " has content beyond the dealias cutoff");
      modes.push_back({g.wavenumber(i1), g.wavenumber(i2), c(i1, i2)});
    }
  return modes;
}

double max_norm(const VectorField& v) {
  const VectorField p = as_physical(v);
  return (p[0].values().square() + p[1].values().square()).sqrt().maxCoeff();
}

}  // namespace

SobolevOrder::SobolevOrder(double s, Multiplier kind) : s_(s), kind_(kind) {
  if (!std::isfinite(s) || s < 0.0) throw UsageError("Sobolev order must be finite and >= 0");
}

ScalarField partial(const ScalarField& f, int axis) {
  if (axis != 0 && axis != 1) throw UsageError("partial: axis must be 0 or 1");
  const GridSpec& g = f.grid();
  Eigen::ArrayXcd ik(g.n());
  for (int i = 0; i < g.n(); ++i) ik(i) = std::complex<double>(0.0, g.odd_wavenumber(i));
  ComplexGrid c = as_spectral(f).coefficients();
  if (axis == 0)
    c.colwise() *= ik;
  else
    c.rowwise() *= ik.transpose();
  ScalarField out = ScalarField::spectral(g, std::move(c));
  return f.is_physical() ? to_physical(out) : out;
}

VectorField gradient(const ScalarField& f) { return {partial(f, 0), partial(f, 1)}; }

ScalarField divergence(const VectorField& v) { return partial(v[0], 0) + partial(v[1], 1); }

ScalarField laplacian(const ScalarField& f) {
  const GridSpec& g = f.grid();
  return apply_multiplier(f, [&](int i1, int i2) { return std::complex<double>(-k_squared(g, i1, i2)); });
}

VectorField laplacian(const VectorField& v) { return {laplacian(v[0]), laplacian(v[1])}; }

ScalarField curl(const VectorField& v) { return partial(v[1], 0) - partial(v[0], 1); }

VectorField advective_derivative(const VectorField& a, const VectorField& b) {
  const VectorField ap = as_physical(dealias(as_spectral(a)));
  const VectorField bs = dealias(as_spectral(b));
  std::array<ScalarField, 2> out{ScalarField::zeros(a.grid(), Representation::physical),
                                 ScalarField::zeros(a.grid(), Representation::physical)};
  for (int j = 0; j < 2; ++j)
    for (int m = 0; m < 2; ++m)
      out[j] += pointwise_product(ap[m], to_physical(partial(bs[j], m)));
  return dealias(VectorField(to_spectral(out[0]), to_spectral(out[1])));
}

VectorField leray_project(const VectorField& v) {
  const VectorField vs = as_spectral(v);
  const GridSpec& g = v.grid();
  ComplexGrid c0 = vs[0].coefficients();
  ComplexGrid c1 = vs[1].coefficients();
  for (int i1 = 0; i1 < g.n(); ++i1)
    for (int i2 = 0; i2 < g.n(); ++i2) {
      const double k1 = g.odd_wavenumber(i1), k2 = g.odd_wavenumber(i2);
      const double kk = k1 * k1 + k2 * k2;
      if (kk == 0.0) continue;
      const std::complex<double> kv = (k1 * c0(i1, i2) + k2 * c1(i1, i2)) / kk;
      c0(i1, i2) -= k1 * kv;
      c1(i1, i2) -= k2 * kv;
    }
  VectorField out(ScalarField::spectral(g, std::move(c0)), ScalarField::spectral(g, std::move(c1)));
  return v[0].is_physical() ? as_physical(out) : out;
}

VectorField gradient_part(const VectorField& v) {
  VectorField p = leray_project(as_spectral(v));
  VectorField out = as_spectral(v) - p;
  // Mean flow is not a gradient on the torus.
  out[0].coefficients()(0, 0) = 0.0;
  out[1].coefficients()(0, 0) = 0.0;
  return v[0].is_physical() ? as_physical(out) : out;
}

VectorField pressure_gradient(const VectorField& u, const TensorField& F) {
  const double div_u = max_abs(as_physical(divergence(u)));
  const double div_F = std::max(max_abs(as_physical(divergence(F.column(0)))),
                                max_abs(as_physical(divergence(F.column(1)))));
  if (div_u > kConstraintTolerance || div_F > kConstraintTolerance)
    std::clog << "warning: pressure_gradient inputs violate the divergence constraint (div u "
              << div_u << ", div F " << div_F << ")\n";
  VectorField forcing = advective_derivative(F.column(0), F.column(0));
  forcing += advective_derivative(F.column(1), F.column(1));
  forcing = forcing - advective_derivative(u, u);
  VectorField out = gradient_part(forcing);
  return u[0].is_physical() ? as_physical(out) : out;
}

ScalarField lambda_s(const ScalarField& f, const SobolevOrder& s) {
  const GridSpec& g = f.grid();
  return apply_multiplier(f, [&](int i1, int i2) {
    return std::complex<double>(symbol(k_squared(g, i1, i2), s));
  });
}

double sobolev_norm(const ScalarField& f, double s) {
  const SobolevOrder order(s, Multiplier::inhomogeneous);
  const ScalarField fs = as_spectral(f);
  const GridSpec& g = f.grid();
  const auto& c = fs.coefficients();
  double sum = 0.0;
  for (int i1 = 0; i1 < g.n(); ++i1)
    for (int i2 = 0; i2 < g.n(); ++i2) {
      const double w = symbol(k_squared(g, i1, i2), order);
      sum += w * w * std::norm(c(i1, i2));
    }
  return GridSpec::length() * std::sqrt(sum);
}

CommutatorReport commutator_check(const SobolevOrder& s, const ScalarField& f, const ScalarField& g) {
  if (!(f.grid() == g.grid())) throw UsageError("commutator_check: grid mismatch");
  const GridSpec& grid = f.grid();
  const auto fm = retained_modes(f, "f");
  const auto gm = retained_modes(g, "g");

  // Output wavenumbers span [-n, n] per axis.
  const int n = grid.n();
  const int width = 2 * n + 1;
  std::vector<std::complex<double>> product(static_cast<std::size_t>(width) * width);
  for (const auto& a : fm)
    for (const auto& b : gm) {
      const int k1 = a.k1 + b.k1, k2 = a.k2 + b.k2;
      const double weight = symbol(double(k1) * k1 + double(k2) * k2, s) -
                            symbol(double(b.k1) * b.k1 + double(b.k2) * b.k2, s);
      if (weight == 0.0) continue;
      product[static_cast<std::size_t>(k1 + n) * width + (k2 + n)] += weight * a.c * b.c;
    }
  double sum = 0.0;
  for (const auto& c : product) sum += std::norm(c);

  CommutatorReport report;
  report.s = s.s();
  report.lhs = GridSpec::length() * std::sqrt(sum);

  const double grad_f_inf = max_norm(gradient(as_spectral(f)));
  const double g_inf = max_abs(as_physical(g));
  // Lambda^{s-1} may carry a negative power; the mean maps to zero either way.
  const ScalarField gs = as_spectral(g);
  ComplexGrid lg = gs.coefficients();
  for (int i1 = 0; i1 < n; ++i1)
    for (int i2 = 0; i2 < n; ++i2) {
      const double kk = k_squared(grid, i1, i2);
      lg(i1, i2) *= kk == 0.0 ? 0.0 : std::pow(kk, 0.5 * (s.s() - 1.0));
    }
  const double lambda_g = l2_norm(ScalarField::spectral(grid, std::move(lg)));
  const double lambda_f = l2_norm(lambda_s(as_spectral(f), SobolevOrder(s.s())));
  report.rhs = grad_f_inf * lambda_g + lambda_f * g_inf;

  if (report.rhs == 0.0) {
    if (report.lhs > kCommutatorZero)
      throw InequalityViolation("commutator is nonzero while the bound vanishes");
    report.ratio = 0.0;
  } else {
    report.ratio = report.lhs / report.rhs;
  }
  return report;
}

}  // namespace vspc

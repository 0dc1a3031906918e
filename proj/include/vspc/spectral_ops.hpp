#pragma once

#include "vspc/field.hpp"

namespace vspc {

// Differential and singular-integral operators as exact Fourier multipliers.
// Unless noted otherwise each operator returns its result in the same
// representation as its (first) argument. First-derivative multipliers treat
// the Nyquist index as k = 0 so real fields stay real.

/// Selects the multiplier family used by lambda_s / sobolev-type operators.
enum class Multiplier {
  homogeneous,   // |k|^s, Lambda^s = (-Delta)^{s/2}
  inhomogeneous  // (1 + |k|^2)^{s/2}, J^s = (1 - Delta)^{s/2}
};

/// Non-negative, finite derivative order.
class SobolevOrder {
 public:
  explicit SobolevOrder(double s, Multiplier kind = Multiplier::homogeneous);
  double s() const { return s_; }
  Multiplier kind() const { return kind_; }

 private:
  double s_;
  Multiplier kind_;
};

ScalarField partial(const ScalarField& f, int axis);
VectorField gradient(const ScalarField& f);
ScalarField divergence(const VectorField& v);
ScalarField laplacian(const ScalarField& f);
VectorField laplacian(const VectorField& v);
/// 2D scalar curl d1 v2 - d2 v1.
ScalarField curl(const VectorField& v);
/// (a . grad) b, formed in physical space from dealiased inputs; the result is
/// spectral and dealiased.
VectorField advective_derivative(const VectorField& a, const VectorField& b);

/// Leray projector vhat -> vhat - k (k . vhat) / |k|^2 for k != 0; the mean
/// passes through.
VectorField leray_project(const VectorField& v);
/// Complement (I - P): the gradient part of v. Zero mean.
VectorField gradient_part(const VectorField& v);

/// grad p for the divergence-free system: the gradient part of
/// F_{.i}.grad F_{.i} - u.grad u, built from Riesz multipliers k_i k_j / |k|^2.
/// Inputs violating div u = 0 or div F_{.k} = 0 by more than 1e-8 in max norm
/// produce a warning on std::clog; the result is still returned.
VectorField pressure_gradient(const VectorField& u, const TensorField& F);

/// Multiplier |k|^s (or (1+|k|^2)^{s/2}); the homogeneous variant maps the
/// mean to zero.
ScalarField lambda_s(const ScalarField& f, const SobolevOrder& s);

/// ((2 pi)^2 sum_k (1 + |k|^2)^s |fhat(k)|^2)^{1/2}.
double sobolev_norm(const ScalarField& f, double s);

struct CommutatorReport {
  double s = 0.0;
  double lhs = 0.0;    // ||Lambda^s(fg) - f Lambda^s g||_2
  double rhs = 0.0;    // ||grad f||_inf ||Lambda^{s-1} g||_2 + ||Lambda^s f||_2 ||g||_inf
  double ratio = 0.0;  // lhs / rhs (0 when both vanish)
};

/// Evaluates both sides of the Kato-Ponce commutator inequality at the
/// (p1, p2, p3, p4) = (inf, 2, 2, inf) instantiation. The commutator is formed
/// from its bilinear symbol, sum_m (|k|^s - |k-m|^s) fhat(m) ghat(k-m), so no
/// aliasing enters regardless of bandwidth. Throws InequalityViolation when
/// rhs = 0 but lhs > 1e-10.
CommutatorReport commutator_check(const SobolevOrder& s, const ScalarField& f, const ScalarField& g);

}  // namespace vspc

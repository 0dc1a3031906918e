#pragma once

#include <functional>

#include <Eigen/Core>

namespace vspc {

/// Parameters of the two-dimensional explicit blowup family
///   a(t) = f0 / (1 - c f0 t),  c = (alpha + beta) / (alpha - beta),
/// with blowup time t* = (alpha - beta) / ((alpha + beta) f0) when c f0 > 0.
class BlowupParams {
 public:
  /// Throws UsageError when alpha + beta = 0, alpha - beta = 0 or f0 = 0.
  BlowupParams(double alpha, double beta, double f0);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double f0() const { return f0_; }
  double c() const { return (alpha_ + beta_) / (alpha_ - beta_); }
  bool blows_up() const { return c() * f0_ > 0.0; }
  /// (alpha - beta) / ((alpha + beta) f0); meaningful when blows_up().
  double t_star() const { return (alpha_ - beta_) / ((alpha_ + beta_) * f0_); }
  /// Velocity-gradient amplitude a(t).
  double a(double t) const;

 private:
  double alpha_, beta_, f0_;
};

/// `corrected` is the family that actually solves the system
/// (u = (a x1, -a x2), F = diag(|g|^{-1/c}, |g|^{1/c}), g = 1 - c f0 t);
/// `printed` keeps both velocity components positive and the F22 exponent
/// (beta + alpha) / (alpha - beta), as the formula is usually quoted.
enum class Fidelity { corrected, printed };

struct BlowupFields {
  double a = 0.0;
  Eigen::Matrix2d grad_u;  // (grad u)_{jm} = d_m u_j
  Eigen::Matrix2d F;
  /// p = pressure_coeffs(0) x1^2 + pressure_coeffs(1) x2^2.
  Eigen::Vector2d pressure_coeffs;
};

/// Throws PoleError at or past t* when the family blows up, or whenever
/// 1 - c f0 t = 0.
BlowupFields blowup_fields(const BlowupParams& p, double t, Fidelity fidelity = Fidelity::corrected);

struct BlowupResidual {
  Eigen::Vector2d momentum;     // d_t u + u.grad u + grad p - nu Delta u - div(F F^T)
  Eigen::Matrix2d deformation;  // d_t F + u.grad F - grad u F
  double div_u = 0.0;
  /// Largest magnitude among the terms entering the residuals (>= 1); use it
  /// to judge residuals relative to the size of what cancelled.
  double scale = 1.0;
};

/// Substitutes the family into the momentum and deformation equations at
/// point x, using analytic time derivatives. Delta u = 0 and div(F F^T) = 0
/// because u is linear and F is constant in space, so nu does not enter.
BlowupResidual blowup_residual(const BlowupParams& p, double t, const Eigen::Vector2d& x,
                         Fidelity fidelity = Fidelity::corrected);

/// int_0^T |a(s)| ds = |ln(1 - c f0 T)| / |c|; +infinity for T >= t* on a
/// blowing-up family. Throws UsageError for T < 0.
double blowup_bkm_integral(const BlowupParams& p, double T);

/// Velocity gradient A(t) (trace-free) and deformation F of a spatially
/// linear profile u = A x with spatially constant F, for which the
/// deformation equation reduces to dF/dt = A F.
struct LinearProfileState {
  Eigen::Matrix2d A = Eigen::Matrix2d::Zero();
  Eigen::Matrix2d F = Eigen::Matrix2d::Identity();
  double t = 0.0;
};

using MatrixFunction = std::function<Eigen::Matrix2d(double)>;

/// One classical RK4 step of dF/dt = A(t) F. The returned A is A(t + dt).
/// Throws UsageError if A(t) is not trace-free to 1e-12.
LinearProfileState ode_reduce_step(const LinearProfileState& state, const MatrixFunction& A_of_t, double dt);
/// Convenience for A(t) = diag(a(t), -a(t)).
LinearProfileState ode_reduce_step(const LinearProfileState& state, const std::function<double(double)>& a_of_t,
                                   double dt);

/// Integrates from state.t to t_end with `steps` equal RK4 steps.
LinearProfileState ode_reduce_integrate(LinearProfileState state, const std::function<double(double)>& a_of_t,
                                        double t_end, int steps);

}  // namespace vspc

#include "vspc/exact_solutions.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "vspc/errors.hpp"

namespace vspc {

namespace {

constexpr double kTraceTolerance = 1e-12;

struct Exponents {
  double e11, e22;
};

Exponents f_exponents(const BlowupParams& p, Fidelity fidelity) {
  const double a = p.alpha(), b = p.beta();
  if (fidelity == Fidelity::printed) return {(b - a) / (a + b), (b + a) / (a - b)};
  return {-1.0 / p.c(), 1.0 / p.c()};
}

double denominator(const BlowupParams& p, double t) {
  const double g = 1.0 - p.c() * p.f0() * t;
  if (g == 0.0 || (p.blows_up() && t >= p.t_star()))
    throw PoleError("explicit family evaluated at or past its pole (t = " + std::to_string(t) + ")");
  return g;
}

}  // namespace

BlowupParams::BlowupParams(double alpha, double beta, double f0) : alpha_(alpha), beta_(beta), f0_(f0) {
  if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(f0))
    throw UsageError("family parameters must be finite");
  if (alpha + beta == 0.0) throw UsageError("family parameters need alpha + beta != 0");
  if (alpha - beta == 0.0) throw UsageError("family parameters need alpha - beta != 0");
  if (f0 == 0.0) throw UsageError("family parameters need f0 != 0");
}

double BlowupParams::a(double t) const { return f0_ / denominator(*this, t); }

BlowupFields blowup_fields(const BlowupParams& p, double t, Fidelity fidelity) {
  const double g = denominator(p, t);
  const double a = p.f0() / g;
  const Exponents e = f_exponents(p, fidelity);
  BlowupFields out;
  out.a = a;
  const double second = fidelity == Fidelity::printed ? a : -a;
  out.grad_u << a, 0.0, 0.0, second;
  out.F << std::pow(std::abs(g), e.e11), 0.0, 0.0, std::pow(std::abs(g), e.e22);
  const double denom = p.beta() - p.alpha();
  out.pressure_coeffs << a * a * p.alpha() / denom, -a * a * p.beta() / denom;
  return out;
}

BlowupResidual blowup_residual(const BlowupParams& p, double t, const Eigen::Vector2d& x, Fidelity fidelity) {
  const BlowupFields f = blowup_fields(p, t, fidelity);
  const double g = 1.0 - p.c() * p.f0() * t;
  const double dg = -p.c() * p.f0();
  // a = f0 / g  =>  a' = -f0 g' / g^2.
  const double da = -p.f0() * dg / (g * g);
  const Eigen::Matrix2d& A = f.grad_u;
  const Eigen::Matrix2d dA = A * (da / f.a);

  const Eigen::Vector2d u = A * x;
  const Eigen::Vector2d du_dt = dA * x;
  const Eigen::Vector2d advection = A * u;
  const Eigen::Vector2d grad_p(2.0 * f.pressure_coeffs(0) * x(0), 2.0 * f.pressure_coeffs(1) * x(1));

  BlowupResidual r;
  r.momentum = du_dt + advection + grad_p;

  // d/dt |g|^e = e |g|^e g' / g; F is spatially constant so u.grad F = 0.
  const Exponents e = f_exponents(p, fidelity);
  Eigen::Matrix2d dF = Eigen::Matrix2d::Zero();
  dF(0, 0) = e.e11 * f.F(0, 0) * dg / g;
  dF(1, 1) = e.e22 * f.F(1, 1) * dg / g;
  const Eigen::Matrix2d stretch = A * f.F;
  r.deformation = dF - stretch;
  r.div_u = A.trace();

  r.scale = std::max({1.0, du_dt.cwiseAbs().maxCoeff(), advection.cwiseAbs().maxCoeff(),
                      grad_p.cwiseAbs().maxCoeff(), dF.cwiseAbs().maxCoeff(), stretch.cwiseAbs().maxCoeff()});
  return r;
}

double blowup_bkm_integral(const BlowupParams& p, double T) {
  if (!(T >= 0.0)) throw UsageError("integration horizon must be >= 0");
  if (p.blows_up() && T >= p.t_star()) return std::numeric_limits<double>::infinity();
  return std::abs(std::log1p(-p.c() * p.f0() * T)) / std::abs(p.c());
}

LinearProfileState ode_reduce_step(const LinearProfileState& state, const MatrixFunction& A_of_t, double dt) {
  const double t = state.t;
  const Eigen::Matrix2d A0 = A_of_t(t);
  if (std::abs(A0.trace()) > kTraceTolerance) throw UsageError("velocity gradient must be trace-free");
  const Eigen::Matrix2d Ah = A_of_t(t + 0.5 * dt);
  const Eigen::Matrix2d A1 = A_of_t(t + dt);
  const Eigen::Matrix2d& F = state.F;
  const Eigen::Matrix2d k1 = A0 * F;
  const Eigen::Matrix2d k2 = Ah * (F + 0.5 * dt * k1);
  const Eigen::Matrix2d k3 = Ah * (F + 0.5 * dt * k2);
  const Eigen::Matrix2d k4 = A1 * (F + dt * k3);
  return {A1, F + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4), t + dt};
}

LinearProfileState ode_reduce_step(const LinearProfileState& state, const std::function<double(double)>& a_of_t,
                                   double dt) {
  return ode_reduce_step(
      state,
      MatrixFunction([&](double t) {
        const double a = a_of_t(t);
        return Eigen::Matrix2d{{a, 0.0}, {0.0, -a}};
      }),
      dt);
}

LinearProfileState ode_reduce_integrate(LinearProfileState state, const std::function<double(double)>& a_of_t,
                                        double t_end, int steps) {
  if (steps <= 0) throw UsageError("step count must be positive");
  const double t0 = state.t;
  const double dt = (t_end - t0) / steps;
  for (int i = 0; i < steps; ++i) {
    state = ode_reduce_step(state, a_of_t, dt);
    state.t = t0 + (i + 1) * dt;
  }
  return state;
}

}  // namespace vspc

#include "vspc/flowmap.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <string>
#include <ostream>

#include <Eigen/LU>

#include "vspc/errors.hpp"
#include "vspc/parallel.hpp"
#include "vspc/spectral_ops.hpp"
#include "vspc/transform.hpp"

namespace vspc {

namespace {

constexpr double kTwoPi = GridSpec::length();
// Coefficients below this fraction of the largest one are left out of the sum.
constexpr double kModeCutoff = 1e-15;

double wrap(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r >= kTwoPi ? 0.0 : r;
}

Eigen::Vector2d wrap(const Eigen::Vector2d& x) { return {wrap(x(0)), wrap(x(1))}; }

// Cubic Lagrange weights for nodes at offsets -1, 0, 1, 2 and position s in [0, 1).
std::array<double, 4> cubic_weights(double s) {
  return {-s * (s - 1.0) * (s - 2.0) / 6.0, (s + 1.0) * (s - 1.0) * (s - 2.0) / 2.0,
          -(s + 1.0) * s * (s - 2.0) / 2.0, (s + 1.0) * s * (s - 1.0) / 6.0};
}

}  // namespace

FieldSampler::FieldSampler(const std::vector<ScalarField>& fields, Interpolation method)
    : method_(method), grid_(fields.empty() ? GridSpec(8) : fields.front().grid()), count_(fields.size()) {
  if (fields.empty()) throw UsageError("sampler needs at least one field");
  for (const auto& f : fields)
    if (!(f.grid() == grid_)) throw UsageError("sampled fields must share a grid");
  const int n = grid_.n();

  if (method_ == Interpolation::bicubic) {
    for (const auto& f : fields) samples_.push_back(as_physical(f).values());
    return;
  }

  std::vector<ComplexGrid> coefs;
  double largest = 0.0;
  for (const auto& f : fields) {
    coefs.push_back(as_spectral(f).coefficients());
    largest = std::max(largest, coefs.back().abs().maxCoeff());
  }
  coef_.resize(count_);
  const double floor = kModeCutoff * largest;
  for (int i1 = 0; i1 < n; ++i1)
    for (int i2 = 0; i2 < n; ++i2) {
      bool keep = false;
      for (const auto& c : coefs) keep = keep || std::abs(c(i1, i2)) > floor;
      if (!keep) continue;
      modes_.push_back({grid_.wavenumber(i1), grid_.wavenumber(i2)});
      for (std::size_t f = 0; f < count_; ++f) coef_[f].push_back(coefs[f](i1, i2));
    }
}

std::vector<double> FieldSampler::operator()(const Eigen::Vector2d& x) const {
  std::vector<double> out(count_, 0.0);
  const int n = grid_.n();

  if (method_ == Interpolation::bicubic) {
    const double y1 = wrap(x(0)) / grid_.dx(), y2 = wrap(x(1)) / grid_.dx();
    const int b1 = static_cast<int>(std::floor(y1)), b2 = static_cast<int>(std::floor(y2));
    const auto w1 = cubic_weights(y1 - b1), w2 = cubic_weights(y2 - b2);
    for (std::size_t f = 0; f < count_; ++f) {
      const RealGrid& v = samples_[f];
      double acc = 0.0;
      for (int a = 0; a < 4; ++a) {
        const int j1 = grid_.index_of(b1 + a - 1);
        double row = 0.0;
        for (int b = 0; b < 4; ++b) row += w2[b] * v(j1, grid_.index_of(b2 + b - 1));
        acc += w1[a] * row;
      }
      out[f] = acc;
    }
    return out;
  }

  // e^{i k x} for k in [-n/2, n/2], indexed by k + n/2.
  const int half = n / 2;
  std::vector<std::complex<double>> e1(n + 1), e2(n + 1);
  for (int k = -half; k <= half; ++k) {
    e1[k + half] = std::polar(1.0, k * x(0));
    e2[k + half] = std::polar(1.0, k * x(1));
  }
  std::vector<std::complex<double>> acc(count_);
  for (std::size_t m = 0; m < modes_.size(); ++m) {
    const std::complex<double> phase = e1[modes_[m].k1 + half] * e2[modes_[m].k2 + half];
    for (std::size_t f = 0; f < count_; ++f) acc[f] += coef_[f][m] * phase;
  }
  for (std::size_t f = 0; f < count_; ++f) out[f] = acc[f].real();
  return out;
}

void VelocityProvider::add_snapshot(const State& state) {
  if (!times_.empty() && !(state.t > times_.back()))
    throw UsageError("velocity snapshots must arrive in increasing time order");
  const VectorField u = as_spectral(state.u);
  std::vector<ScalarField> fields{u[0], u[1], partial(u[0], 0), partial(u[0], 1), partial(u[1], 0),
                                  partial(u[1], 1)};
  times_.push_back(state.t);
  samplers_.emplace_back(fields, method_);
}

double VelocityProvider::first_time() const {
  if (times_.empty()) throw MissingDataError("velocity provider holds no snapshots");
  return times_.front();
}

double VelocityProvider::last_time() const {
  if (times_.empty()) throw MissingDataError("velocity provider holds no snapshots");
  return times_.back();
}

VelocitySample VelocityProvider::operator()(double t, const Eigen::Vector2d& x) const {
  const double t0 = first_time(), t1 = last_time();
  const double eps = 1e-12 * std::max(1.0, std::abs(t1));
  if (t < t0 - eps || t > t1 + eps)
    throw MissingDataError("velocity requested at t = " + std::to_string(t) + " outside stored range [" +
                           std::to_string(t0) + ", " + std::to_string(t1) + "]");
  auto unpack = [](const std::vector<double>& v) {
    VelocitySample s;
    s.u << v[0], v[1];
    s.grad_u << v[2], v[3], v[4], v[5];
    return s;
  };
  if (times_.size() == 1) return unpack(samplers_[0](x));
  const auto it = std::upper_bound(times_.begin(), times_.end(), t);
  const std::size_t i = std::clamp<std::size_t>(it - times_.begin(), 1, times_.size() - 1) - 1;
  const double theta = std::clamp((t - times_[i]) / (times_[i + 1] - times_[i]), 0.0, 1.0);
  if (theta == 0.0) return unpack(samplers_[i](x));
  if (theta == 1.0) return unpack(samplers_[i + 1](x));
  const VelocitySample a = unpack(samplers_[i](x)), b = unpack(samplers_[i + 1](x));
  return {(1.0 - theta) * a.u + theta * b.u, (1.0 - theta) * a.grad_u + theta * b.grad_u};
}

ParticleSet ParticleSet::lattice(int side, double t0) {
  if (side <= 0) throw UsageError("lattice side must be positive");
  ParticleSet p;
  p.t = t0;
  const double h = kTwoPi / side;
  for (int a = 0; a < side; ++a)
    for (int b = 0; b < side; ++b) {
      const Eigen::Vector2d X((a + 0.5) * h, (b + 0.5) * h);
      p.labels.push_back(X);
      p.positions.push_back(X);
      p.jacobians.push_back(Eigen::Matrix2d::Identity());
    }
  return p;
}

namespace {

template <class Source>
ParticleSet advect_impl(const ParticleSet& particles, const Source& u_at, double dt) {
  ParticleSet out = particles;
  const double t = particles.t;
  parallel_for(particles.size(), [&](std::size_t i) {
    const Eigen::Vector2d& x = particles.positions[i];
    const Eigen::Vector2d k1 = u_at(t, x).u;
    const Eigen::Vector2d k2 = u_at(t + 0.5 * dt, x + 0.5 * dt * k1).u;
    const Eigen::Vector2d k3 = u_at(t + 0.5 * dt, x + 0.5 * dt * k2).u;
    const Eigen::Vector2d k4 = u_at(t + dt, x + dt * k3).u;
    const Eigen::Vector2d next = x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    out.positions[i] = particles.periodic ? wrap(next) : next;
  });
  out.t = t + dt;
  return out;
}

template <class Source>
ParticleSet jacobian_impl(const ParticleSet& particles, const Source& u_at, double dt) {
  ParticleSet out = particles;
  const double t = particles.t;
  parallel_for(particles.size(), [&](std::size_t i) {
    const Eigen::Vector2d& x = particles.positions[i];
    const Eigen::Matrix2d& J = particles.jacobians[i];
    const VelocitySample s1 = u_at(t, x);
    const Eigen::Matrix2d L1 = s1.grad_u * J;
    const VelocitySample s2 = u_at(t + 0.5 * dt, x + 0.5 * dt * s1.u);
    const Eigen::Matrix2d L2 = s2.grad_u * (J + 0.5 * dt * L1);
    const VelocitySample s3 = u_at(t + 0.5 * dt, x + 0.5 * dt * s2.u);
    const Eigen::Matrix2d L3 = s3.grad_u * (J + 0.5 * dt * L2);
    const VelocitySample s4 = u_at(t + dt, x + dt * s3.u);
    const Eigen::Matrix2d L4 = s4.grad_u * (J + dt * L3);
    const Eigen::Vector2d next = x + (dt / 6.0) * (s1.u + 2.0 * s2.u + 2.0 * s3.u + s4.u);
    out.positions[i] = particles.periodic ? wrap(next) : next;
    out.jacobians[i] = J + (dt / 6.0) * (L1 + 2.0 * L2 + 2.0 * L3 + L4);
  });
  out.t = t + dt;
  return out;
}

}  // namespace

ParticleSet advect(const ParticleSet& particles, const VelocityProvider& u_at, double dt) {
  return advect_impl(particles, u_at, dt);
}
ParticleSet advect(const ParticleSet& particles, const VelocityAt& u_at, double dt) {
  return advect_impl(particles, u_at, dt);
}
ParticleSet evolve_jacobian(const ParticleSet& particles, const VelocityProvider& u_at, double dt) {
  return jacobian_impl(particles, u_at, dt);
}
ParticleSet evolve_jacobian(const ParticleSet& particles, const VelocityAt& u_at, double dt) {
  return jacobian_impl(particles, u_at, dt);
}

TensorAt tensor_sampler(const TensorField& F, Interpolation method) {
  auto sampler = std::make_shared<const FieldSampler>(
      std::vector<ScalarField>{F.entry(0, 0), F.entry(0, 1), F.entry(1, 0), F.entry(1, 1)}, method);
  return [sampler](const Eigen::Vector2d& x) {
    const auto v = (*sampler)(x);
    Eigen::Matrix2d m;
    m << v[0], v[1], v[2], v[3];
    return m;
  };
}

double compare_with_eulerian(const ParticleSet& particles, const State& state, const TensorAt& F0_at,
                             Interpolation method) {
  if (std::abs(particles.t - state.t) > 1e-9 * std::max(1.0, std::abs(state.t)))
    throw UsageError("particles at t = " + std::to_string(particles.t) + " compared with a field at t = " +
                     std::to_string(state.t));
  const TensorAt F_at = tensor_sampler(state.F, method);
  std::vector<double> err(particles.size());
  parallel_for(particles.size(), [&](std::size_t i) {
    err[i] = (F_at(particles.positions[i]) - particles.jacobians[i] * F0_at(particles.labels[i])).norm();
  });
  return err.empty() ? 0.0 : *std::max_element(err.begin(), err.end());
}

double max_det_defect(const ParticleSet& particles) {
  double worst = 0.0;
  for (const auto& J : particles.jacobians) worst = std::max(worst, std::abs(J.determinant() - 1.0));
  return worst;
}

void write_trajectory_header(std::ostream& out) { out << "label,t,x1,x2,J11,J12,J21,J22,detJ\n"; }

void write_trajectory_rows(std::ostream& out, const ParticleSet& particles) {
  char buf[512];
  for (std::size_t i = 0; i < particles.size(); ++i) {
    const auto& x = particles.positions[i];
    const auto& J = particles.jacobians[i];
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", i, particles.t, x(0),
                  x(1), J(0, 0), J(0, 1), J(1, 0), J(1, 1), J.determinant());
    out << buf;
  }
}

}  // namespace vspc

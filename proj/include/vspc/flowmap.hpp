#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <vector>

#include <Eigen/Core>

#include "vspc/state.hpp"

namespace vspc {

/// How off-grid values of a field are obtained.
enum class Interpolation {
  spectral,  // direct Fourier sum over the nonzero modes (exact for the discrete field)
  bicubic    // tensor-product cubic Lagrange on the 4 x 4 surrounding grid points
};

/// Evaluates a fixed set of periodic fields at arbitrary points.
class FieldSampler {
 public:
  FieldSampler(const std::vector<ScalarField>& fields, Interpolation method);

  std::size_t size() const { return count_; }
  /// Values of every field at x (any real coordinates; wrapped periodically).
  std::vector<double> operator()(const Eigen::Vector2d& x) const;

 private:
  struct Mode {
    int k1, k2;
  };
  Interpolation method_;
  GridSpec grid_;
  std::size_t count_ = 0;
  std::vector<Mode> modes_;                              // spectral: union of nonzero modes
  std::vector<std::vector<std::complex<double>>> coef_;  // per field, aligned with modes_
  std::vector<RealGrid> samples_;                        // bicubic
};

struct VelocitySample {
  Eigen::Vector2d u;
  Eigen::Matrix2d grad_u;  // (j, m) entry = d_m u_j
};

/// Velocity and velocity gradient at arbitrary (t, x), built from stored
/// snapshots with linear interpolation in time.
class VelocityProvider {
 public:
  explicit VelocityProvider(Interpolation method = Interpolation::spectral) : method_(method) {}

  /// Snapshots must be added in strictly increasing time order.
  void add_snapshot(const State& state);
  double first_time() const;
  double last_time() const;
  std::size_t snapshot_count() const { return samplers_.size(); }

  /// Throws MissingDataError outside [first_time(), last_time()].
  VelocitySample operator()(double t, const Eigen::Vector2d& x) const;

 private:
  Interpolation method_;
  std::vector<double> times_;
  std::vector<FieldSampler> samplers_;  // u1, u2, d1u1, d2u1, d1u2, d2u2
};

/// Lagrangian markers: labels X, current positions x and flow-map Jacobians
/// J = dx/dX. Positions are wrapped to [0, 2 pi)^2 unless `periodic` is off.
struct ParticleSet {
  std::vector<Eigen::Vector2d> labels;
  std::vector<Eigen::Vector2d> positions;
  std::vector<Eigen::Matrix2d> jacobians;
  double t = 0.0;
  bool periodic = true;

  std::size_t size() const { return labels.size(); }
  /// side x side lattice, offset by half a lattice cell, J = I.
  static ParticleSet lattice(int side, double t0 = 0.0);
};

/// Any velocity source: (t, x) -> (u, grad u). Positions passed in are not
/// wrapped, so analytic sources need not be periodic.
using VelocityAt = std::function<VelocitySample(double, const Eigen::Vector2d&)>;

/// RK4 update of positions only.
ParticleSet advect(const ParticleSet& particles, const VelocityProvider& u_at, double dt);
ParticleSet advect(const ParticleSet& particles, const VelocityAt& u_at, double dt);

/// Coupled RK4 update of positions and Jacobians, dJ/dt = grad u(t, x(t)) J.
ParticleSet evolve_jacobian(const ParticleSet& particles, const VelocityProvider& u_at, double dt);
ParticleSet evolve_jacobian(const ParticleSet& particles, const VelocityAt& u_at, double dt);

using TensorAt = std::function<Eigen::Matrix2d(const Eigen::Vector2d&)>;

/// Tensor field sampled at a point, as a 2x2 matrix with (i, k) = F_{ik}.
TensorAt tensor_sampler(const TensorField& F, Interpolation method);

/// max over particles of || F(t, x) - J F0(X) ||_Frobenius. Throws UsageError
/// when `state` and `particles` are at different times.
double compare_with_eulerian(const ParticleSet& particles, const State& state, const TensorAt& F0_at,
                             Interpolation method = Interpolation::spectral);

/// Largest |det J - 1| over the particles.
double max_det_defect(const ParticleSet& particles);

/// One CSV row per particle: label, t, x1, x2, J11, J12, J21, J22, detJ.
void write_trajectory_header(std::ostream& out);
void write_trajectory_rows(std::ostream& out, const ParticleSet& particles);

}  // namespace vspc

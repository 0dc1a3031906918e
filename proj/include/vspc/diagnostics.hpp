#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "vspc/state.hpp"

namespace vspc {

/// Per-record norms of a solution, plus time integrals accumulated by the
/// trapezoidal rule from the first record onwards.
///
/// Norm conventions on the 2 pi torus:
///  - L2 and H^s norms are spectral (Parseval);
///  - L^p norms use grid quadrature (2 pi / n)^2 sum |.|^p, L^inf the grid max;
///  - |F| is the pointwise Frobenius norm, |F_{.k}| the Euclidean column norm;
///  - ||grad u||_inf is the grid max of the pointwise operator 2-norm of the
///    2x2 velocity gradient (d_m u_j).
struct DiagnosticsRecord {
  double t = 0.0;
  double dt = 0.0;  // time since the previous record

  double l2_u = 0.0, l2_F = 0.0;
  double h1_u = 0.0, h2_u = 0.0, h1_F = 0.0, h2_F = 0.0;
  double lap_u = 0.0, lap_F = 0.0;  // ||Delta u||_2, ||Delta F||_2
  double grad_energy = 0.0;         // ||grad u||_2^2 + ||grad F||_2^2
  double grad_u_sq = 0.0;           // ||grad u||_2^2
  double hs2_gradu = 0.0;           // ||grad u||_{H^2}^2

  double lp_F_2 = 0.0, lp_F_4 = 0.0, lp_F_6 = 0.0, lp_F_inf = 0.0;
  double lp_F1_2 = 0.0, lp_F1_4 = 0.0, lp_F1_6 = 0.0, lp_F1_inf = 0.0;
  double lp_F2_2 = 0.0, lp_F2_4 = 0.0, lp_F2_6 = 0.0, lp_F2_inf = 0.0;

  double linf_u = 0.0;
  double linf_gradu = 0.0;
  double linf_curl_u = 0.0, linf_curl_F = 0.0;
  double l6_gradF = 0.0;
  double l2_ut = 0.0;  // backward difference; 0 on the first record

  double bkm = 0.0;            // int ||grad u||_inf
  double visc = 0.0;           // 2 nu int ||grad u||_2^2
  double curl_int = 0.0;       // int ||curl u||_inf + sum_k ||curl F_.k||_inf
  double hs2_gradu_int = 0.0;  // int ||grad u||_{H^2}^2

  double energy = 0.0;   // ||u||_2^2 + ||F||_2^2
  double energy0 = 0.0;  // energy of the first record
  double energy_residual = 0.0;

  double div_drift_u = 0.0, div_drift_F = 0.0;
  double projection_F = 0.0;  // L2 size of the last post-step F re-projection

  /// ||F||_p for p in {2, 4, 6, inf}; UsageError otherwise.
  double lp_F(double p) const;
  /// Column-wise ||F_{.k}||_p, k in {0, 1}.
  double lp_column(int k, double p) const;
};

/// Computes every norm of `state`. With a prior record, time integrals are
/// advanced by the trapezoidal rule over [prior->t, state.t]; with a prior
/// state, ||u_t||_2 is the backward difference.
DiagnosticsRecord record(const State& state, double nu, const DiagnosticsRecord* prior = nullptr,
                         const State* prior_state = nullptr, double projection_F = 0.0);

/// Record for a spatially-linear velocity u = A x with spatially-constant F.
/// Such profiles do not live on the torus; norms are reported per unit cell
/// of measure (2 pi)^2 and only the gradient and F-norm entries are filled.
DiagnosticsRecord linear_profile_record(double t, const Eigen::Matrix2d& gradu,
                                        const Eigen::Matrix2d& F,
                                        const DiagnosticsRecord* prior = nullptr);

/// History holding only ||grad u||_inf samples, accumulated by trapezoid.
std::vector<DiagnosticsRecord> gradient_history(std::span<const double> times,
                                                std::span<const double> linf_gradu);

struct CertificateReport {
  std::string name;
  bool applicable = true;
  bool satisfied = true;
  double margin = 0.0;   // bound minus observed, normalized; >= 0 when satisfied
  double worst_t = 0.0;  // time of the smallest margin
  double value = 0.0;    // headline statistic (max residual, fitted constant, ...)
};

inline constexpr double kDefaultEnergyTolerance = 1e-5;
/// Slack for the column-wise L^p bound, in log space, absorbing roundoff on
/// saturated trajectories. The certificate adds to it an a-posteriori
/// estimate of the trapezoid error in bkm, sum dt^3 / 12 |f''|.
inline constexpr double kLpSlack = 1e-9;

/// ||u||^2 + ||F||^2 + 2 nu int ||grad u||^2 equals its initial value.
/// residual(t) = |LHS(t) - LHS(0)| / LHS(0); satisfied iff the max residual is
/// within tolerance. Not applicable to forced runs.
CertificateReport energy_certificate(std::span<const DiagnosticsRecord> history, bool forced,
                                     double tolerance = kDefaultEnergyTolerance);

/// ||F_{.k}(t)||_p <= ||F_{.k}(0)||_p exp(int_0^t ||grad u||_inf) for both
/// columns; margin is the smallest log(bound) - log(observed) over the
/// records after the first (where the bound holds with equality). Satisfied
/// when no margin falls below -(kLpSlack + estimated bkm quadrature error).
CertificateReport lp_growth_certificate(std::span<const DiagnosticsRecord> history, double p);

/// Smallest C with E1(t) <= E1(0) exp(C bkm(t)), E1 = ||grad u||^2 + ||grad F||^2.
/// Satisfied iff C is finite; the cross-resolution stability check is the
/// caller's (it needs two runs).
CertificateReport h1_growth_certificate(std::span<const DiagnosticsRecord> history);

/// Max divergence of u and of the F columns across the history.
CertificateReport divergence_certificate(std::span<const DiagnosticsRecord> history,
                                         double tolerance = 1e-8);

struct BkmReport {
  double integral = 0.0;
  std::optional<double> extrapolated_t_star;
};

/// Accumulated int ||grad u||_inf. When the last `window` records show
/// strictly increasing ||grad u||_inf, 1/||grad u||_inf is fitted linearly in t
/// by least squares and its root is reported. Needs at least 3 records.
BkmReport bkm_report(std::span<const DiagnosticsRecord> history, int window = 10);

struct CurlReport {
  double linf_curl_u = 0.0;
  double linf_curl_F = 0.0;  // summed over columns
};

CurlReport curl_report(const State& state);

/// Returns a message describing the first certificate the last record of
/// `history` breaks (energy identity when unforced, column-wise L^p bound at
/// p = 4 and inf).
std::optional<std::string> record_violation(std::span<const DiagnosticsRecord> history, bool forced,
                                            double energy_tolerance);

/// The full certificate set evaluated on a finished history.
std::vector<CertificateReport> evaluate_certificates(std::span<const DiagnosticsRecord> history,
                                                     bool forced, double energy_tolerance);

}  // namespace vspc

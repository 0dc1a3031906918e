#include "vspc/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "vspc/errors.hpp"
#include "vspc/spectral_ops.hpp"
#include "vspc/transform.hpp"

namespace vspc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int p_slot(double p) {
  if (p == 2.0) return 0;
  if (p == 4.0) return 1;
  if (p == 6.0) return 2;
  if (std::isinf(p) && p > 0) return 3;
  throw UsageError("L^p norms are tracked for p in {2, 4, 6, inf} only");
}

constexpr double kTrackedP[] = {2.0, 4.0, 6.0, kInf};

// Grid quadrature of a non-negative pointwise magnitude.
double lp_quadrature(const RealGrid& magnitude, double p, double cell) {
  if (std::isinf(p)) return magnitude.maxCoeff();
  return std::pow(cell * magnitude.pow(p).sum(), 1.0 / p);
}

// Largest singular value of [[a, b], [c, d]].
double operator_norm(double a, double b, double c, double d) {
  const double s = a * a + b * b + c * c + d * d;
  const double det = a * d - b * c;
  return std::sqrt(0.5 * (s + std::sqrt(std::max(0.0, s * s - 4.0 * det * det))));
}

double trapezoid(double prior_value, double value, double dt) { return 0.5 * dt * (prior_value + value); }

void set_lp(DiagnosticsRecord& r, int column, int slot, double value) {
  double* table[3][4] = {{&r.lp_F_2, &r.lp_F_4, &r.lp_F_6, &r.lp_F_inf},
                         {&r.lp_F1_2, &r.lp_F1_4, &r.lp_F1_6, &r.lp_F1_inf},
                         {&r.lp_F2_2, &r.lp_F2_4, &r.lp_F2_6, &r.lp_F2_inf}};
  *table[column][slot] = value;
}

void accumulate(DiagnosticsRecord& r, const DiagnosticsRecord* prior, double nu) {
  if (prior == nullptr) {
    r.energy0 = r.energy;
    r.energy_residual = 0.0;
    return;
  }
  r.dt = r.t - prior->t;
  r.bkm = prior->bkm + trapezoid(prior->linf_gradu, r.linf_gradu, r.dt);
  r.visc = prior->visc + 2.0 * nu * trapezoid(prior->grad_u_sq, r.grad_u_sq, r.dt);
  r.curl_int = prior->curl_int + trapezoid(prior->linf_curl_u + prior->linf_curl_F,
                                           r.linf_curl_u + r.linf_curl_F, r.dt);
  r.hs2_gradu_int = prior->hs2_gradu_int + trapezoid(prior->hs2_gradu, r.hs2_gradu, r.dt);
  r.energy0 = prior->energy0;
  const double lhs = r.energy + r.visc;
  r.energy_residual = r.energy0 > 0.0 ? std::abs(lhs - r.energy0) / r.energy0 : std::abs(lhs);
}

double column_log_margin(const DiagnosticsRecord& rec, const DiagnosticsRecord& first, int k, double p) {
  const double initial = first.lp_column(k, p);
  const double observed = rec.lp_column(k, p);
  if (observed == 0.0) return kInf;
  if (initial == 0.0) return -kInf;
  return std::log(initial) + (rec.bkm - first.bkm) - std::log(observed);
}

// Cumulative a-posteriori error estimate of the trapezoid rule for bkm: each
// interval contributes dt^3 / 12 |f''|, with f'' the larger adjacent second
// difference of ||grad u||_inf.
std::vector<double> bkm_error_budget(std::span<const DiagnosticsRecord> h) {
  const std::size_t n = h.size();
  std::vector<double> curvature(n, 0.0), budget(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double d0 = h[i].t - h[i - 1].t, d1 = h[i + 1].t - h[i].t;
    const double s0 = (h[i].linf_gradu - h[i - 1].linf_gradu) / d0;
    const double s1 = (h[i + 1].linf_gradu - h[i].linf_gradu) / d1;
    curvature[i] = std::abs(2.0 * (s1 - s0) / (d0 + d1));
  }
  for (std::size_t i = 1; i < n; ++i) {
    const double dt = h[i].t - h[i - 1].t;
    const double c = std::max(curvature[i - 1], curvature[i]);
    budget[i] = budget[i - 1] + dt * dt * dt / 12.0 * (std::isfinite(c) ? c : 0.0);
  }
  return budget;
}

std::string format_p(double p) {
  if (std::isinf(p)) return "inf";
  std::ostringstream s;
  s << p;
  return s.str();
}

}  // namespace

double DiagnosticsRecord::lp_F(double p) const {
  const double v[] = {lp_F_2, lp_F_4, lp_F_6, lp_F_inf};
  return v[p_slot(p)];
}

double DiagnosticsRecord::lp_column(int k, double p) const {
  if (k != 0 && k != 1) throw UsageError("column index must be 0 or 1");
  const double c0[] = {lp_F1_2, lp_F1_4, lp_F1_6, lp_F1_inf};
  const double c1[] = {lp_F2_2, lp_F2_4, lp_F2_6, lp_F2_inf};
  return (k == 0 ? c0 : c1)[p_slot(p)];
}

DiagnosticsRecord record(const State& state, double nu, const DiagnosticsRecord* prior,
                         const State* prior_state, double projection_F) {
  const GridSpec& grid = state.grid();
  const double cell = grid.cell_area();
  DiagnosticsRecord r;
  r.t = state.t;
  r.projection_F = projection_F;

  const VectorField us = as_spectral(state.u);
  const TensorField Fs = as_spectral(state.F);
  const VectorField up = as_physical(us);
  const TensorField Fp = as_physical(Fs);

  r.l2_u = l2_norm(us);
  r.l2_F = l2_norm(Fs);
  r.energy = r.l2_u * r.l2_u + r.l2_F * r.l2_F;

  auto sobolev_sum = [](std::initializer_list<const ScalarField*> fields, double s) {
    double sum = 0.0;
    for (const auto* f : fields) sum += std::pow(sobolev_norm(*f, s), 2);
    return std::sqrt(sum);
  };
  const std::initializer_list<const ScalarField*> u_entries = {&us[0], &us[1]};
  const std::initializer_list<const ScalarField*> F_entries = {&Fs.entry(0, 0), &Fs.entry(1, 0),
                                                               &Fs.entry(0, 1), &Fs.entry(1, 1)};
  r.h1_u = sobolev_sum(u_entries, 1.0);
  r.h2_u = sobolev_sum(u_entries, 2.0);
  r.h1_F = sobolev_sum(F_entries, 1.0);
  r.h2_F = sobolev_sum(F_entries, 2.0);
  r.lap_u = l2_norm(laplacian(us));
  r.lap_F = std::sqrt(std::pow(l2_norm(laplacian(Fs.column(0))), 2) +
                      std::pow(l2_norm(laplacian(Fs.column(1))), 2));

  // Velocity gradient entries d_m u_j, spectral and physical.
  std::array<std::array<ScalarField, 2>, 2> du_s{{{partial(us[0], 0), partial(us[0], 1)},
                                                  {partial(us[1], 0), partial(us[1], 1)}}};
  RealGrid opnorm = grid.zeros_real();
  {
    std::array<std::array<RealGrid, 2>, 2> du;
    for (int j = 0; j < 2; ++j)
      for (int m = 0; m < 2; ++m) du[j][m] = to_physical(du_s[j][m]).values();
    for (int j1 = 0; j1 < grid.n(); ++j1)
      for (int j2 = 0; j2 < grid.n(); ++j2)
        opnorm(j1, j2) = operator_norm(du[0][0](j1, j2), du[0][1](j1, j2), du[1][0](j1, j2), du[1][1](j1, j2));
  }
  r.linf_gradu = opnorm.maxCoeff();
  r.grad_u_sq = 0.0;
  r.hs2_gradu = 0.0;
  for (const auto& row : du_s)
    for (const auto& d : row) {
      r.grad_u_sq += std::pow(l2_norm(d), 2);
      r.hs2_gradu += std::pow(sobolev_norm(d, 2.0), 2);
    }

  RealGrid gradF_sq = grid.zeros_real();
  double grad_F_sq = 0.0;
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int m = 0; m < 2; ++m) {
        const ScalarField d = partial(Fs.entry(i, k), m);
        grad_F_sq += std::pow(l2_norm(d), 2);
        gradF_sq += to_physical(d).values().square();
      }
  r.grad_energy = r.grad_u_sq + grad_F_sq;
  r.l6_gradF = lp_quadrature(gradF_sq.sqrt(), 6.0, cell);

  const RealGrid col0 = (Fp.entry(0, 0).values().square() + Fp.entry(1, 0).values().square()).sqrt();
  const RealGrid col1 = (Fp.entry(0, 1).values().square() + Fp.entry(1, 1).values().square()).sqrt();
  const RealGrid frob = (col0.square() + col1.square()).sqrt();
  for (int slot = 0; slot < 4; ++slot) {
    const double p = kTrackedP[slot];
    set_lp(r, 0, slot, lp_quadrature(frob, p, cell));
    set_lp(r, 1, slot, lp_quadrature(col0, p, cell));
    set_lp(r, 2, slot, lp_quadrature(col1, p, cell));
  }

  r.linf_u = (up[0].values().square() + up[1].values().square()).sqrt().maxCoeff();
  const CurlReport curls = curl_report(State{state.t, us, Fs});
  r.linf_curl_u = curls.linf_curl_u;
  r.linf_curl_F = curls.linf_curl_F;

  r.div_drift_u = max_abs(to_physical(divergence(us)));
  r.div_drift_F = std::max(max_abs(to_physical(divergence(Fs.column(0)))),
                           max_abs(to_physical(divergence(Fs.column(1)))));

  if (prior_state != nullptr && state.t > prior_state->t) {
    VectorField diff = us - as_spectral(prior_state->u);
    r.l2_ut = l2_norm(diff) / (state.t - prior_state->t);
  }
  accumulate(r, prior, nu);
  return r;
}

DiagnosticsRecord linear_profile_record(double t, const Eigen::Matrix2d& gradu, const Eigen::Matrix2d& F,
                                        const DiagnosticsRecord* prior) {
  DiagnosticsRecord r;
  r.t = t;
  r.linf_gradu = operator_norm(gradu(0, 0), gradu(0, 1), gradu(1, 0), gradu(1, 1));
  const double measure = GridSpec::length() * GridSpec::length();
  const double cols[2] = {F.col(0).norm(), F.col(1).norm()};
  const double frob = F.norm();
  for (int slot = 0; slot < 4; ++slot) {
    const double p = kTrackedP[slot];
    const double scale = std::isinf(p) ? 1.0 : std::pow(measure, 1.0 / p);
    set_lp(r, 0, slot, frob * scale);
    set_lp(r, 1, slot, cols[0] * scale);
    set_lp(r, 2, slot, cols[1] * scale);
  }
  accumulate(r, prior, 0.0);
  return r;
}

std::vector<DiagnosticsRecord> gradient_history(std::span<const double> times,
                                                std::span<const double> linf_gradu) {
  if (times.size() != linf_gradu.size()) throw UsageError("times and samples differ in length");
  std::vector<DiagnosticsRecord> history;
  history.reserve(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    DiagnosticsRecord r;
    r.t = times[i];
    r.linf_gradu = linf_gradu[i];
    accumulate(r, history.empty() ? nullptr : &history.back(), 0.0);
    history.push_back(r);
  }
  return history;
}

CertificateReport energy_certificate(std::span<const DiagnosticsRecord> history, bool forced,
                                     double tolerance) {
  CertificateReport rep{.name = "energy_identity"};
  if (forced) {
    rep.applicable = false;
    return rep;
  }
  if (history.empty()) throw UsageError("energy_certificate needs at least one record");
  const auto& first = history.front();
  const double e0 = first.l2_u * first.l2_u + first.l2_F * first.l2_F;
  double worst = -1.0;
  for (const auto& r : history) {
    const double lhs = r.l2_u * r.l2_u + r.l2_F * r.l2_F + (r.visc - first.visc);
    const double residual = e0 > 0.0 ? std::abs(lhs - e0) / e0 : std::abs(lhs);
    if (residual > worst) {
      worst = residual;
      rep.worst_t = r.t;
    }
  }
  rep.value = worst;
  rep.margin = tolerance - worst;
  rep.satisfied = worst <= tolerance;
  return rep;
}

CertificateReport lp_growth_certificate(std::span<const DiagnosticsRecord> history, double p) {
  p_slot(p);
  CertificateReport rep{.name = "lp_growth_p" + format_p(p)};
  if (history.empty()) throw UsageError("lp_growth_certificate needs at least one record");
  const auto& first = history.front();
  const auto budget = bkm_error_budget(history);
  // The bound is an equality at the first record, so it only enters alone.
  const std::size_t start = history.size() > 1 ? 1 : 0;
  double margin = kInf;
  bool within = true;
  for (std::size_t i = start; i < history.size(); ++i)
    for (int k = 0; k < 2; ++k) {
      const double m = column_log_margin(history[i], first, k, p);
      within = within && m >= -(kLpSlack + budget[i]);
      if (m < margin) {
        margin = m;
        rep.worst_t = history[i].t;
      }
    }
  rep.margin = std::isinf(margin) && margin > 0 ? 0.0 : margin;
  rep.value = rep.margin;
  rep.satisfied = within;
  return rep;
}

CertificateReport h1_growth_certificate(std::span<const DiagnosticsRecord> history) {
  CertificateReport rep{.name = "h1_gronwall"};
  if (history.empty()) throw UsageError("h1_growth_certificate needs at least one record");
  const auto& first = history.front();
  const double e0 = first.grad_energy;
  double c_obs = 0.0;
  for (const auto& r : history) {
    if (r.grad_energy <= e0 * (1.0 + 1e-12)) continue;
    const double elapsed = r.bkm - first.bkm;
    const double c = (e0 == 0.0 || elapsed <= 0.0) ? kInf : std::log(r.grad_energy / e0) / elapsed;
    if (c > c_obs) {
      c_obs = c;
      rep.worst_t = r.t;
    }
  }
  rep.value = c_obs;
  rep.satisfied = std::isfinite(c_obs);
  rep.margin = 0.0;
  return rep;
}

CertificateReport divergence_certificate(std::span<const DiagnosticsRecord> history, double tolerance) {
  CertificateReport rep{.name = "divergence_drift"};
  double worst = 0.0;
  for (const auto& r : history) {
    const double d = std::max(r.div_drift_u, r.div_drift_F);
    if (d > worst) {
      worst = d;
      rep.worst_t = r.t;
    }
  }
  rep.value = worst;
  rep.margin = tolerance - worst;
  rep.satisfied = worst <= tolerance;
  return rep;
}

BkmReport bkm_report(std::span<const DiagnosticsRecord> history, int window) {
  if (history.size() < 3) throw UsageError("bkm_report needs at least 3 records");
  BkmReport rep;
  rep.integral = history.back().bkm - history.front().bkm;

  const std::size_t w = std::min<std::size_t>(std::max(window, 3), history.size());
  const auto tail = history.last(w);
  for (std::size_t i = 1; i < tail.size(); ++i)
    if (!(tail[i].linf_gradu > tail[i - 1].linf_gradu)) return rep;
  if (tail.front().linf_gradu <= 0.0) return rep;

  double mt = 0.0, my = 0.0;
  for (const auto& r : tail) {
    mt += r.t;
    my += 1.0 / r.linf_gradu;
  }
  mt /= tail.size();
  my /= tail.size();
  double stt = 0.0, sty = 0.0;
  for (const auto& r : tail) {
    stt += (r.t - mt) * (r.t - mt);
    sty += (r.t - mt) * (1.0 / r.linf_gradu - my);
  }
  if (stt == 0.0) return rep;
  const double slope = sty / stt;
  if (!(slope < 0.0)) return rep;
  const double intercept = my - slope * mt;
  rep.extrapolated_t_star = -intercept / slope;
  return rep;
}

CurlReport curl_report(const State& state) {
  CurlReport rep;
  rep.linf_curl_u = max_abs(as_physical(curl(as_spectral(state.u))));
  for (int k = 0; k < 2; ++k) rep.linf_curl_F += max_abs(as_physical(curl(as_spectral(state.F.column(k)))));
  return rep;
}

std::optional<std::string> record_violation(std::span<const DiagnosticsRecord> history, bool forced,
                                            double energy_tolerance) {
  if (history.empty()) throw UsageError("record_violation needs at least one record");
  const auto& rec = history.back();
  const auto& first = history.front();
  if (!forced && rec.energy_residual > energy_tolerance) {
    std::ostringstream msg;
    msg << "energy identity residual " << rec.energy_residual << " exceeds " << energy_tolerance
        << " at t = " << rec.t;
    return msg.str();
  }
  const double budget = bkm_error_budget(history).back();
  for (double p : {4.0, kInf})
    for (int k = 0; k < 2; ++k)
      if (history.size() > 1 && column_log_margin(rec, first, k, p) < -(kLpSlack + budget)) {
        std::ostringstream msg;
        msg << "L^" << format_p(p) << " growth bound violated by column " << k + 1 << " at t = " << rec.t;
        return msg.str();
      }
  return std::nullopt;
}

std::vector<CertificateReport> evaluate_certificates(std::span<const DiagnosticsRecord> history, bool forced,
                                                     double energy_tolerance) {
  std::vector<CertificateReport> out;
  out.push_back(energy_certificate(history, forced, energy_tolerance));
  for (double p : kTrackedP) out.push_back(lp_growth_certificate(history, p));
  out.push_back(h1_growth_certificate(history));
  out.push_back(divergence_certificate(history));
  return out;
}

}  // namespace vspc

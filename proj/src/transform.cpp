#include "vspc/transform.hpp"

#include <cstdio>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <string>

#include <fftw3.h>

#include "vspc/errors.hpp"

namespace vspc {

namespace {

constexpr double kSymmetryTolerance = 1e-10;
constexpr double kImaginaryTolerance = 1e-12;

std::string fmt_sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

// Plans are created once per grid size. Execution through the new-array
// interface is thread-safe; planning is not, hence the lock.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  PlanPair get(int n) {
    std::lock_guard lock(mutex_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    ComplexGrid in(n, n), out(n, n);
    auto* pin = reinterpret_cast<fftw_complex*>(in.data());
    auto* pout = reinterpret_cast<fftw_complex*>(out.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    PlanPair p{fftw_plan_dft_2d(n, n, pin, pout, FFTW_FORWARD, flags),
               fftw_plan_dft_2d(n, n, pin, pout, FFTW_BACKWARD, flags)};
    plans_.emplace(n, p);
    return p;
  }

  ~PlanCache() {
    for (auto& [n, p] : plans_) {
      fftw_destroy_plan(p.forward);
      fftw_destroy_plan(p.backward);
    }
  }

 private:
  std::mutex mutex_;
  std::map<int, PlanPair> plans_;
};

void execute(fftw_plan plan, ComplexGrid& in, ComplexGrid& out) {
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace

ScalarField to_spectral(const ScalarField& f) {
  if (!f.is_physical()) throw UsageError("to_spectral expects a physical field");
  const int n = f.grid().n();
  ComplexGrid in = f.values().cast<std::complex<double>>();
  ComplexGrid out(n, n);
  execute(PlanCache::instance().get(n).forward, in, out);
  out /= static_cast<double>(n) * n;
  return ScalarField::spectral(f.grid(), std::move(out));
}

namespace {

// Index of -k: the mirror of row/column i on an n-periodic axis.
inline int mirror(int i, int n) { return i == 0 ? 0 : n - i; }

// Largest |c(k) - conj c(-k)| relative to max(1, max |c|); when `sym` is
// given it receives the conjugate-symmetric part (c(k) + conj c(-k)) / 2.
double symmetry_pass(const ComplexGrid& c, ComplexGrid* sym) {
  const int n = static_cast<int>(c.rows());
  double defect2 = 0.0;
  if (sym) sym->resize(n, n);
  for (int i1 = 0; i1 < n; ++i1) {
    const int m1 = mirror(i1, n);
    for (int i2 = 0; i2 < n; ++i2) {
      const std::complex<double> a = c(i1, i2), b = std::conj(c(m1, mirror(i2, n)));
      defect2 = std::max(defect2, std::norm(a - b));
      if (sym) (*sym)(i1, i2) = 0.5 * (a + b);
    }
  }
  return std::sqrt(defect2) / std::max(1.0, std::sqrt(c.abs2().maxCoeff()));
}

}  // namespace

double conjugate_symmetry_defect(const ScalarField& f) { return symmetry_pass(f.coefficients(), nullptr); }

ScalarField to_physical(const ScalarField& f) {
  if (!f.is_spectral()) throw UsageError("to_physical expects a spectral field");
  // Tolerated asymmetry is roundoff amplified by high-order multipliers; it is
  // dropped so only the transform's own roundoff can reach the imaginary part.
  ComplexGrid in;
  const double defect = symmetry_pass(f.coefficients(), &in);
  if (defect > kSymmetryTolerance)
    throw DataCorruptionError("spectrum is not conjugate-symmetric (defect " + fmt_sci(defect) + ")");
  const int n = f.grid().n();
  ComplexGrid out(n, n);
  execute(PlanCache::instance().get(n).backward, in, out);
  const double scale = std::max(1.0, out.real().abs().maxCoeff());
  const double residue = out.imag().abs().maxCoeff() / scale;
  if (residue > kImaginaryTolerance)
    throw DataCorruptionError("inverse transform left an imaginary residue (" + fmt_sci(residue) + ")");
  return ScalarField::physical(f.grid(), out.real());
}

ScalarField as_spectral(const ScalarField& f) { return f.is_spectral() ? f : to_spectral(f); }
ScalarField as_physical(const ScalarField& f) { return f.is_physical() ? f : to_physical(f); }
VectorField as_spectral(const VectorField& v) { return {as_spectral(v[0]), as_spectral(v[1])}; }
VectorField as_physical(const VectorField& v) { return {as_physical(v[0]), as_physical(v[1])}; }
TensorField as_spectral(const TensorField& F) {
  return {as_spectral(F.column(0)), as_spectral(F.column(1))};
}
TensorField as_physical(const TensorField& F) {
  return {as_physical(F.column(0)), as_physical(F.column(1))};
}

void dealias_in_place(ComplexGrid& c, const GridSpec& grid) {
  const int n = grid.n();
  for (int i1 = 0; i1 < n; ++i1)
    for (int i2 = 0; i2 < n; ++i2)
      if (grid.is_dealiased_mode(i1, i2)) c(i1, i2) = 0.0;
}

ScalarField dealias(const ScalarField& f) {
  if (!f.is_spectral()) throw UsageError("dealias expects a spectral field");
  ComplexGrid c = f.coefficients();
  dealias_in_place(c, f.grid());
  return ScalarField::spectral(f.grid(), std::move(c));
}

VectorField dealias(const VectorField& v) { return {dealias(v[0]), dealias(v[1])}; }
TensorField dealias(const TensorField& F) { return {dealias(F.column(0)), dealias(F.column(1))}; }

ScalarField pointwise_product(const ScalarField& f, const ScalarField& g) {
  if (!(f.grid() == g.grid())) throw UsageError("pointwise_product: grid mismatch");
  if (!f.is_physical() || !g.is_physical())
    throw UsageError("pointwise_product expects physical fields");
  return ScalarField::physical(f.grid(), f.values() * g.values());
}

double max_abs(const ScalarField& f) { return f.values().abs().maxCoeff(); }

double inner(const ScalarField& f, const ScalarField& g) {
  if (!(f.grid() == g.grid())) throw UsageError("inner: grid mismatch");
  const ScalarField fs = as_spectral(f);
  const ScalarField gs = as_spectral(g);
  const double sum = (fs.coefficients() * gs.coefficients().conjugate()).real().sum();
  return GridSpec::length() * GridSpec::length() * sum;
}

double inner(const VectorField& v, const VectorField& w) {
  return inner(v[0], w[0]) + inner(v[1], w[1]);
}

double l2_norm(const ScalarField& f) { return std::sqrt(std::max(0.0, inner(f, f))); }
double l2_norm(const VectorField& v) { return std::sqrt(std::max(0.0, inner(v, v))); }
double l2_norm(const TensorField& F) {
  return std::sqrt(std::max(0.0, inner(F.column(0), F.column(0)) + inner(F.column(1), F.column(1))));
}

}  // namespace vspc

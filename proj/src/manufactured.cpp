#include "vspc/manufactured.hpp"

#include <cmath>
#include <memory>

#include "vspc/initial_conditions.hpp"
#include "vspc/spectral_ops.hpp"
#include "vspc/transform.hpp"

namespace vspc {

namespace {

constexpr double kRho = 0.4;

double poisson_kernel(double theta) {
  return (1.0 - kRho * kRho) / (1.0 - 2.0 * kRho * std::cos(theta) + kRho * kRho);
}

struct TimeProfile {
  std::function<double(double)> a, da, b, db;
};

struct StreamFunctions {
  std::function<double(double, double)> u, g1, g2;
};

// Subsamples a physical fine-grid field onto the coarse grid.
ScalarField restrict_to(const ScalarField& fine, const GridSpec& coarse) {
  const ScalarField p = as_physical(fine);
  const int stride = fine.grid().n() / coarse.n();
  RealGrid v(coarse.n(), coarse.n());
  for (int j1 = 0; j1 < coarse.n(); ++j1)
    for (int j2 = 0; j2 < coarse.n(); ++j2) v(j1, j2) = p.values()(j1 * stride, j2 * stride);
  return ScalarField::physical(coarse, std::move(v));
}

VectorField restrict_to(const VectorField& fine, const GridSpec& coarse) {
  return {restrict_to(fine[0], coarse), restrict_to(fine[1], coarse)};
}

VectorField spectral_restrict(const VectorField& fine, const GridSpec& coarse) {
  return as_spectral(restrict_to(fine, coarse));
}

// Spatial building blocks on the solver grid.
struct Pieces {
  VectorField U, lapU, PUU, PD, PQ;  // spectral
  std::array<VectorField, 2> G, B, dU;
  VectorField U_phys;
  std::array<VectorField, 2> G_phys;
};

Pieces build_pieces(const StreamFunctions& sf, const GridSpec& grid) {
  const GridSpec fine(std::max(256, 2 * grid.n()));
  auto stream = [&](const std::function<double(double, double)>& psi) {
    return perpendicular_gradient(as_spectral(ScalarField::sample(fine, psi)));
  };
  const VectorField U = stream(sf.u);
  const std::array<VectorField, 2> G{stream(sf.g1), stream(sf.g2)};

  const VectorField UU = advective_derivative(U, U);
  // sum_i d_i G_.i and sum_i G_.i . grad G_.i
  VectorField D = VectorField(partial(G[0][0], 0), partial(G[0][1], 0));
  D += VectorField(partial(G[1][0], 1), partial(G[1][1], 1));
  VectorField Q = advective_derivative(G[0], G[0]);
  Q += advective_derivative(G[1], G[1]);

  Pieces p{spectral_restrict(U, grid),
           spectral_restrict(laplacian(U), grid),
           spectral_restrict(leray_project(UU), grid),
           spectral_restrict(leray_project(D), grid),
           spectral_restrict(leray_project(Q), grid),
           {spectral_restrict(G[0], grid), spectral_restrict(G[1], grid)},
           {spectral_restrict(advective_derivative(U, G[0]) - advective_derivative(G[0], U), grid),
            spectral_restrict(advective_derivative(U, G[1]) - advective_derivative(G[1], U), grid)},
           {spectral_restrict(VectorField(partial(U[0], 0), partial(U[1], 0)), grid),
            spectral_restrict(VectorField(partial(U[0], 1), partial(U[1], 1)), grid)},
           restrict_to(U, grid),
           {restrict_to(G[0], grid), restrict_to(G[1], grid)}};
  return p;
}

ManufacturedProblem assemble(const StreamFunctions& sf, const TimeProfile& tp, const GridSpec& grid, double nu) {
  auto pieces = std::make_shared<const Pieces>(build_pieces(sf, grid));

  auto analytic = [pieces, tp, grid](double t) {
    TensorField F = TensorField::identity(grid);
    F += tp.b(t) * TensorField(pieces->G_phys[0], pieces->G_phys[1]);
    return State{t, tp.a(t) * pieces->U_phys, std::move(F)};
  };
  ForcingSpec forcing;
  forcing.g_u = [pieces, tp, nu](double t) {
    const double a = tp.a(t), b = tp.b(t);
    VectorField g = tp.da(t) * pieces->U;
    g += (-nu * a) * pieces->lapU;
    g += (a * a) * pieces->PUU;
    g += (-b) * pieces->PD;
    g += (-b * b) * pieces->PQ;
    return g;
  };
  forcing.g_F = [pieces, tp](double t) {
    const double a = tp.a(t), b = tp.b(t), db = tp.db(t);
    std::array<VectorField, 2> cols{db * pieces->G[0], db * pieces->G[1]};
    for (int k = 0; k < 2; ++k) {
      cols[k] += (a * b) * pieces->B[k];
      cols[k] += (-a) * pieces->dU[k];
    }
    return TensorField(cols[0], cols[1]);
  };
  return ManufacturedProblem{analytic(0.0), std::move(forcing), std::move(analytic)};
}

}  // namespace

ManufacturedProblem manufactured(ManufacturedKind kind, const GridSpec& grid, double nu) {
  auto zero = [](double) { return 0.0; };
  auto zero2 = [](double, double) { return 0.0; };
  switch (kind) {
    case ManufacturedKind::steady:
      return assemble({zero2, zero2, zero2}, {zero, zero, zero, zero}, grid, nu);
    case ManufacturedKind::taylor_green:
      // psi = sin x1 sin x2 gives (sin x1 cos x2, -cos x1 sin x2) after grad^perp.
      return assemble({[](double x1, double x2) { return std::sin(x1) * std::sin(x2); }, zero2, zero2},
                      {[nu](double t) { return std::exp(-2.0 * nu * t); },
                       [nu](double t) { return -2.0 * nu * std::exp(-2.0 * nu * t); }, zero, zero},
                      grid, nu);
    case ManufacturedKind::banded:
      return assemble(
          {[](double x1, double x2) { return 0.5 * std::sin(x1) * std::sin(x2) + 0.25 * std::cos(x1 + 2.0 * x2); },
           [](double x1, double x2) { return 0.2 * std::cos(x1 + 2.0 * x2); },
           [](double x1, double x2) { return 0.2 * std::sin(2.0 * x1 - x2); }},
          {[](double t) { return std::cos(t); }, [](double t) { return -std::sin(t); },
           [](double t) { return 0.5 + 0.5 * std::sin(t); }, [](double t) { return 0.5 * std::cos(t); }},
          grid, nu);
    case ManufacturedKind::smooth:
      return assemble(
          {[](double x1, double x2) {
             return 0.3 * (poisson_kernel(x1) * std::sin(x2) + std::cos(x1) * poisson_kernel(x2 + 0.5));
           },
           [](double x1, double x2) { return 0.15 * poisson_kernel(x1 + x2); },
           [](double x1, double x2) { return 0.15 * poisson_kernel(x1 - x2 + 1.0); }},
          {[](double t) { return std::cos(t); }, [](double t) { return -std::sin(t); },
           [](double t) { return 0.5 + 0.5 * std::sin(t); }, [](double t) { return 0.5 * std::cos(t); }},
          grid, nu);
  }
  return assemble({zero2, zero2, zero2}, {zero, zero, zero, zero}, grid, nu);
}

}  // namespace vspc

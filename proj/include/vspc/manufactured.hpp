#pragma once

#include <functional>

#include "vspc/solver.hpp"

namespace vspc {

/// Analytic pairs of the form u = a(t) U(x), F = I + b(t) G(x), with U and the
/// columns of G perpendicular gradients (hence divergence-free).
enum class ManufacturedKind {
  steady,        // u = 0, F = I
  taylor_green,  // U Taylor-Green, a = exp(-2 nu t), G = 0
  banded,        // trigonometric polynomials on |k| <= 2; no spatial truncation error
  smooth         // Poisson-kernel stream functions: Fourier coefficients decay like 0.4^|k|
};

struct ManufacturedProblem {
  State initial;
  /// g_u = d_t u + u.grad u + grad p - nu Delta u - F_.i.grad F_.i and
  /// g_F,k = d_t F_.k + u.grad F_.k - F_.k.grad u for the analytic pair; since
  /// grad p is the gradient part, g_u is divergence-free.
  ForcingSpec forcing;
  /// The analytic pair sampled on the grid at time t.
  std::function<State(double)> analytic;
};

/// Builds the problem on `grid`. Spatial pieces of the forcing are evaluated
/// spectrally on a fine auxiliary grid (>= 256 points, a multiple of n) and
/// carried over to `grid` by sampling, so the forcing itself carries no
/// truncation error at the solver resolution.
ManufacturedProblem manufactured(ManufacturedKind kind, const GridSpec& grid, double nu);

}  // namespace vspc

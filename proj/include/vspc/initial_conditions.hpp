#pragma once

#include "vspc/state.hpp"

namespace vspc {

/// Perpendicular gradient (d2 psi, -d1 psi); divergence-free by construction.
VectorField perpendicular_gradient(const ScalarField& psi);

/// u = amplitude (sin x1 cos x2, -cos x1 sin x2).
VectorField taylor_green(const GridSpec& grid, double amplitude = 1.0);

/// F = I + eps * [grad^perp psi_1 | grad^perp psi_2] with
/// psi_1 = cos(x1 + 2 x2), psi_2 = sin(2 x1 - x2). Columns are divergence-free
/// and supported on |k| <= 2.
TensorField perturbed_identity(const GridSpec& grid, double eps = 0.1);

State taylor_green_state(const GridSpec& grid, double amplitude = 1.0);
State steady_identity_state(const GridSpec& grid);
/// Taylor-Green velocity with a perturbed-identity deformation tensor.
State perturbed_identity_state(const GridSpec& grid, double amplitude = 1.0, double eps = 0.1);

}  // namespace vspc

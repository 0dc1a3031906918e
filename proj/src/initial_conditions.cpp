#include "vspc/initial_conditions.hpp"

#include <cmath>

#include "vspc/spectral_ops.hpp"
#include "vspc/transform.hpp"

namespace vspc {

VectorField perpendicular_gradient(const ScalarField& psi) {
  ScalarField minus_d1 = partial(psi, 0);
  minus_d1 *= -1.0;
  return {partial(psi, 1), minus_d1};
}

VectorField taylor_green(const GridSpec& grid, double amplitude) {
  return {ScalarField::sample(grid, [&](double x1, double x2) { return amplitude * std::sin(x1) * std::cos(x2); }),
          ScalarField::sample(grid, [&](double x1, double x2) { return -amplitude * std::cos(x1) * std::sin(x2); })};
}

TensorField perturbed_identity(const GridSpec& grid, double eps) {
  const auto psi1 = ScalarField::sample(grid, [](double x1, double x2) { return std::cos(x1 + 2.0 * x2); });
  const auto psi2 = ScalarField::sample(grid, [](double x1, double x2) { return std::sin(2.0 * x1 - x2); });
  TensorField perturbation(perpendicular_gradient(psi1), perpendicular_gradient(psi2));
  return TensorField::identity(grid) + eps * perturbation;
}

State taylor_green_state(const GridSpec& grid, double amplitude) {
  return State{0.0, taylor_green(grid, amplitude), TensorField::identity(grid)};
}

State steady_identity_state(const GridSpec& grid) {
  return State{0.0, VectorField::zeros(grid, Representation::physical), TensorField::identity(grid)};
}

State perturbed_identity_state(const GridSpec& grid, double amplitude, double eps) {
  return State{0.0, taylor_green(grid, amplitude), perturbed_identity(grid, eps)};
}

}  // namespace vspc

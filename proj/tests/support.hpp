#pragma once

#include <cmath>
#include <complex>
#include <random>

#include "vspc/field.hpp"
#include "vspc/initial_conditions.hpp"
#include "vspc/transform.hpp"

namespace vspc::testing {

/// Real field with random coefficients on |k_i| <= band, seeded.
inline ScalarField random_band_limited(const GridSpec& grid, int band, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  RealGrid v = RealGrid::Zero(grid.n(), grid.n());
  for (int k1 = -band; k1 <= band; ++k1)
    for (int k2 = -band; k2 <= band; ++k2) {
      const double a = normal(rng), b = normal(rng);
      for (int j1 = 0; j1 < grid.n(); ++j1)
        for (int j2 = 0; j2 < grid.n(); ++j2) {
          const double phase = k1 * grid.coordinate(j1) + k2 * grid.coordinate(j2);
          v(j1, j2) += a * std::cos(phase) + b * std::sin(phase);
        }
    }
  return ScalarField::physical(grid, std::move(v));
}

inline VectorField random_solenoidal(const GridSpec& grid, int band, std::uint64_t seed) {
  return as_physical(perpendicular_gradient(as_spectral(random_band_limited(grid, band, seed))));
}

inline double max_diff(const ScalarField& a, const ScalarField& b) {
  return max_abs(as_physical(a) - as_physical(b));
}

inline double max_diff(const VectorField& a, const VectorField& b) {
  return std::max(max_diff(a[0], b[0]), max_diff(a[1], b[1]));
}

inline double max_diff(const TensorField& a, const TensorField& b) {
  return std::max(max_diff(a.column(0), b.column(0)), max_diff(a.column(1), b.column(1)));
}

inline double max_coefficient(const ScalarField& f) { return as_spectral(f).coefficients().abs().maxCoeff(); }

}  // namespace vspc::testing

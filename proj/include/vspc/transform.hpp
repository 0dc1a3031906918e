#pragma once

#include "vspc/field.hpp"

namespace vspc {

/// Forward DFT, fhat(k) = (1/n^2) sum_j f(x_j) exp(-i k.x_j).
/// Throws UsageError unless f is physical.
ScalarField to_spectral(const ScalarField& f);

/// Inverse of to_spectral. Throws UsageError unless f is spectral, and
/// DataCorruptionError when the coefficients are not conjugate-symmetric
/// to within 1e-10 (relative to the largest coefficient).
ScalarField to_physical(const ScalarField& f);

/// Representation-agnostic conversions: return the field unchanged when it is
/// already in the requested representation.
ScalarField as_spectral(const ScalarField& f);
ScalarField as_physical(const ScalarField& f);
VectorField as_spectral(const VectorField& v);
VectorField as_physical(const VectorField& v);
TensorField as_spectral(const TensorField& F);
TensorField as_physical(const TensorField& F);

/// 2/3 rule: zero every mode with max(|k1|,|k2|) > n/3. Idempotent.
ScalarField dealias(const ScalarField& f);
VectorField dealias(const VectorField& v);
TensorField dealias(const TensorField& F);
void dealias_in_place(ComplexGrid& c, const GridSpec& grid);

/// Sample-wise product of two physical fields on a shared grid.
ScalarField pointwise_product(const ScalarField& f, const ScalarField& g);

/// Largest |f(x_j)| over the grid points.
double max_abs(const ScalarField& f);

/// L2(torus) inner product and norm, evaluated spectrally through Parseval:
/// (f, g) = (2 pi)^2 sum_k Re(fhat(k) conj(ghat(k))).
double inner(const ScalarField& f, const ScalarField& g);
double inner(const VectorField& v, const VectorField& w);
double l2_norm(const ScalarField& f);
double l2_norm(const VectorField& v);
double l2_norm(const TensorField& F);

/// Largest |c(k) - conj(c(-k))| relative to max(1, max |c|).
double conjugate_symmetry_defect(const ScalarField& f);

}  // namespace vspc

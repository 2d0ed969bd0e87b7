#pragma once

#include <functional>

#include "multipoly/polynomial.hpp"

namespace multipoly {

// Sample grid for coefficient recovery. Per block, one point per weak
// composition gamma of n_i into d_i parts, with coordinates
//   x[j] = p_j^(gamma_j / (2 n_i)),   p_j = j-th prime.
// Distinct prime roots keep the per-block system nonsingular (it is a
// principal submatrix of a product of positive-definite 1-D kernels) and the
// entries small enough to be well conditioned at desk scale
// (d_i <= 8, n_i <= 5).
std::vector<std::vector<std::vector<double>>> interpolation_points(
    const MultiDegree& multidegree, const std::vector<std::uint32_t>& dims);

struct RecoveryResult {
  bool ok = false;
  double max_residual = 0.0;
  std::string message;
  MultiPolynomial poly;  // zero polynomial unless ok
};

// Recovers the coefficients of a block-homogeneous polynomial from black-box
// values on the interpolation grid. One dense solve per block (the grid is a
// product, so the system factors mode by mode); a residual above
// 1e-8 * (1 + max |value|) marks the recovery as failed.
RecoveryResult coeffs_from_values(
    const std::function<Scalar(const std::vector<std::vector<Scalar>>&)>& f, Field field,
    const MultiDegree& multidegree, const std::vector<std::uint32_t>& dims);

}  // namespace multipoly

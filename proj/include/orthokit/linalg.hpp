#pragma once

#include <optional>
#include <vector>

#include "orthokit/vector.hpp"

namespace orthokit::linalg {

/// Lower-triangular L with A = L Lᵀ, or nullopt when A is not positive definite.
std::optional<Matrix> cholesky(const Matrix& a);

/// Inverse of a nonsingular lower-triangular matrix.
Matrix invert_lower(const Matrix& l);

/// True when |aᵢⱼ − aⱼᵢ| ≤ rel · max|a|.
bool is_symmetric(const Matrix& a, double rel = 1e-12);

struct EigenSystem {
  std::vector<double> values;   // ascending
  Matrix vectors;               // column k pairs with values[k]
  int sweeps = 0;
};

/// Cyclic Jacobi rotations for a symmetric matrix. Stops once the
/// off-diagonal Frobenius norm falls below threshold · ‖A‖_F, or after
/// max_sweeps sweeps.
EigenSystem jacobi_eigen(const Matrix& a, double threshold = 1e-14, int max_sweeps = 50);

}  // namespace orthokit::linalg

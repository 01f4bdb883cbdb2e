#pragma once

#include <algorithm>
#include <cmath>

namespace orthokit {

/// Comparison tolerance. A quantity compared against zero at magnitude
/// `scale` may deviate by max(abs_tol, rel_tol * |scale|).
struct Tolerance {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;

  double slack(double scale) const { return std::max(abs_tol, rel_tol * std::abs(scale)); }

  bool valid() const {
    return std::isfinite(abs_tol) && std::isfinite(rel_tol) && abs_tol >= 0.0 && rel_tol >= 0.0 &&
           (abs_tol > 0.0 || rel_tol > 0.0);
  }
};

/// Throws InvalidArgument unless the tolerance invariants hold.
void require_valid(const Tolerance& tol);

}  // namespace orthokit

#pragma once

#include <functional>
#include <utility>

#include "orthokit/norm.hpp"
#include "orthokit/tolerance.hpp"
#include "orthokit/vector.hpp"

namespace orthokit {

struct GoldenResult {
  double argmin = 0.0;
  double value = 0.0;
  int iterations = 0;
};

/// Golden-section search for the minimum of a unimodal function on [lo, hi].
/// Stops after max_iter iterations or once the bracket is narrower than
/// rel_width · (hi − lo). The endpoints are compared against the interior
/// estimate, so minima on the boundary are reported exactly.
GoldenResult golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                                     int max_iter = 200, double rel_width = 1e-14);

struct LineMinimum {
  double t_star = 0.0;
  double value = 0.0;
};

/// min over t of ‖x + t y‖. The function is convex, and outside
/// [−2‖x‖/‖y‖, 2‖x‖/‖y‖] it exceeds ‖x‖, so that bracket suffices.
/// Throws InvalidArgument when y = 0.
LineMinimum minimize_norm_on_line(const NormSpec& spec, const Vector& x, const Vector& y);
LineMinimum minimize_norm_on_line(const Norm& norm, std::span<const double> x, std::span<const double> y);

struct RootResult {
  double location = 0.0;
  double residual = 0.0;
  int iterations = 0;
  std::pair<double, double> bracket{0.0, 0.0};
};

/// Finds s with x ⊥_HH (y + s x), i.e. a root of
///   F(s) = I₊(x, y + s x) − I₋(x, y + s x),
/// to |F(s)| ≤ tol.slack(I₊ + I₋). F grows like (2/3)s‖x‖², so a sign change
/// is found by doubling the bracket; bisection then refines it. When F has
/// several roots the first bracketed one is returned.
/// Throws InvalidArgument when x = 0, ConvergenceError if no bracket is found.
RootResult hh_orthogonal_in_pencil(const NormSpec& spec, const Vector& x, const Vector& y, const Tolerance& tol = {});

struct BetaMinimum {
  double beta_star = 1.0;
  double value = 0.0;
  bool attained = true;
};

/// inf over β ≠ 0 of ‖x/β‖² + ‖βy‖², which equals 2‖x‖‖y‖ in every norm.
/// With y = 0 and x ≠ 0 the infimum 0 is approached as β → ∞ and not attained.
BetaMinimum beta_functional_min(const NormSpec& spec, const Vector& x, const Vector& y);

/// The same infimum by golden-section search over log β with an expanding
/// bracket, evaluating the norms of the scaled vectors directly.
BetaMinimum beta_functional_min_numeric(const NormSpec& spec, const Vector& x, const Vector& y);

}  // namespace orthokit

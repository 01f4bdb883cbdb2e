#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "orthokit/errors.hpp"
#include "orthokit/tolerance.hpp"

namespace orthokit {

/// 16-point Gauss–Legendre rule on [-1, 1].
struct GaussLegendre16 {
  std::array<double, 16> nodes;
  std::array<double, 16> weights;
};

const GaussLegendre16& gauss_legendre16();

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;  // sum of |two-panel − one-panel| over accepted panels
  int panels = 0;
  int max_depth = 0;
};

namespace detail {

template <class F>
double gl16_panel(const F& f, double a, double b) {
  const auto& rule = gauss_legendre16();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return s * half;
}

template <class F>
void adapt(const F& f, double a, double b, double whole, int depth, double width_total, const Tolerance& tol,
           int max_depth, QuadratureResult& acc) {
  const double m = 0.5 * (a + b);
  const double left = gl16_panel(f, a, m);
  const double right = gl16_panel(f, m, b);
  const double refined = left + right;
  const double diff = std::abs(refined - whole);
  const double allowed = std::max(tol.abs_tol * (b - a) / width_total, tol.rel_tol * std::abs(refined));
  if (diff <= allowed || !(m > a && m < b)) {
    acc.value += refined;
    acc.abs_error += diff;
    acc.panels += 2;
    acc.max_depth = std::max(acc.max_depth, depth);
    return;
  }
  if (depth >= max_depth) {
    throw ConvergenceError("adaptive quadrature did not converge within depth " + std::to_string(max_depth));
  }
  adapt(f, a, m, left, depth + 1, width_total, tol, max_depth, acc);
  adapt(f, m, b, right, depth + 1, width_total, tol, max_depth, acc);
}

}  // namespace detail

/// Composite adaptive Gauss–Legendre integration of f over [a, b].
/// `breakpoints` (any order, values outside (a, b) ignored) become initial
/// panel boundaries. Each panel is bisected until the two-half estimate
/// matches the whole-panel estimate within tol.
template <class F>
QuadratureResult integrate_adaptive(const F& f, double a, double b, std::span<const double> breakpoints,
                                    const Tolerance& tol = {}, int max_depth = 30) {
  std::vector<double> edges{a};
  for (double t : breakpoints)
    if (t > a && t < b) edges.push_back(t);
  edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  QuadratureResult acc;
  const double width = b - a;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double lo = edges[i];
    const double hi = edges[i + 1];
    detail::adapt(f, lo, hi, detail::gl16_panel(f, lo, hi), 0, width, tol, max_depth, acc);
  }
  return acc;
}

}  // namespace orthokit

#include "orthokit/hh_integrals.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "orthokit/errors.hpp"
#include "orthokit/quadrature.hpp"

namespace orthokit {

std::string_view to_string(HHMethod m) { return m == HHMethod::closed_form ? "closed-form" : "quadrature"; }

namespace {

HHValues assemble(double i_plus, double i_minus, HHMethod method, double err) {
  HHValues v;
  v.i_plus = std::max(0.0, i_plus);
  v.i_minus = std::max(0.0, i_minus);
  v.gap = v.i_plus - v.i_minus;
  v.total = v.i_plus + v.i_minus;
  v.method = method;
  v.est_abs_error = err;
  return v;
}

HHValues closed_form(double xx, double yy, double xy) {
  return assemble((xx + yy + xy) / 3.0, (xx + yy - xy) / 3.0, HHMethod::closed_form, 0.0);
}

// Points in (0, 1) where t ↦ ‖x + t d‖ may fail to be smooth: zero crossings
// of a coordinate, and for sup-norms the crossings |wᵢcᵢ| = |wⱼcⱼ|.
std::vector<double> kinks(const Norm& norm, std::span<const double> x, std::span<const double> d) {
  std::vector<double> out;
  if (!norm.coordinatewise()) return out;
  auto push_root = [&](double c0, double c1) {
    if (c1 == 0.0) return;
    const double t = -c0 / c1;
    if (t > 0.0 && t < 1.0) out.push_back(t);
  };
  for (std::size_t i = 0; i < x.size(); ++i) push_root(x[i], d[i]);
  if (std::isinf(norm.exponent())) {
    const auto w = norm.weights();
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = i + 1; j < x.size(); ++j) {
        push_root(w[i] * x[i] - w[j] * x[j], w[i] * d[i] - w[j] * d[j]);
        push_root(w[i] * x[i] + w[j] * x[j], w[i] * d[i] + w[j] * d[j]);
      }
  }
  return out;
}

// ∫₀¹ ‖(1−t)x + sign·t·y‖² dt
QuadratureResult side_quadrature(const Norm& norm, std::span<const double> x, std::span<const double> y,
                                 double sign, const Tolerance& tol) {
  const std::size_t n = x.size();
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = sign * y[i] - x[i];
  const auto breaks = kinks(norm, x, d);
  std::vector<double> buf(n);
  auto integrand = [&](double t) {
    const double s = 1.0 - t;
    for (std::size_t i = 0; i < n; ++i) buf[i] = s * x[i] + sign * t * y[i];
    return norm.squared(buf);
  };
  // The absolute floor is capped by the integrand's scale so that the panel
  // test scales like the integral under x, y → λx, λy.
  Tolerance panel_tol = tol;
  if (tol.rel_tol > 0.0) panel_tol.abs_tol = std::min(tol.abs_tol, tol.rel_tol * (norm.squared(x) + norm.squared(y)));
  return integrate_adaptive(integrand, 0.0, 1.0, breaks, panel_tol);
}

void require_same_dim(std::size_t a, std::size_t b, std::size_t dim) {
  if (a != dim || b != dim) throw DimensionMismatch("vectors do not match the norm dimension");
}

}  // namespace

HHValues hh_values(const Norm& norm, std::span<const double> x, std::span<const double> y, const Tolerance& tol,
                   bool force_quadrature) {
  require_same_dim(x.size(), y.size(), norm.dim());
  require_valid(tol);
  if (norm.inner_product() && !force_quadrature) {
    return closed_form(norm.squared(x), norm.squared(y), norm.inner(x, y));
  }
  const auto plus = side_quadrature(norm, x, y, 1.0, tol);
  const auto minus = side_quadrature(norm, x, y, -1.0, tol);
  return assemble(plus.value, minus.value, HHMethod::quadrature, plus.abs_error + minus.abs_error);
}

HHValues hh_values(const NormSpec& spec, const Vector& x, const Vector& y, const Tolerance& tol) {
  if (x.dim() != y.dim()) throw DimensionMismatch("x and y have different dimensions");
  return hh_values(Norm(spec, x.dim()), x.span(), y.span(), tol);
}

HHValues hh_values_quadrature(const NormSpec& spec, const Vector& x, const Vector& y, const Tolerance& tol) {
  if (x.dim() != y.dim()) throw DimensionMismatch("x and y have different dimensions");
  return hh_values(Norm(spec, x.dim()), x.span(), y.span(), tol, true);
}

double hh_plus(const NormSpec& spec, const Vector& x, const Vector& y, const Tolerance& tol) {
  if (x.dim() != y.dim()) throw DimensionMismatch("x and y have different dimensions");
  require_valid(tol);
  const Norm norm(spec, x.dim());
  if (norm.inner_product()) return hh_values(norm, x.span(), y.span(), tol).i_plus;
  return side_quadrature(norm, x.span(), y.span(), 1.0, tol).value;
}

double hh_minus(const NormSpec& spec, const Vector& x, const Vector& y, const Tolerance& tol) {
  if (x.dim() != y.dim()) throw DimensionMismatch("x and y have different dimensions");
  require_valid(tol);
  const Norm norm(spec, x.dim());
  if (norm.inner_product()) return hh_values(norm, x.span(), y.span(), tol).i_minus;
  return side_quadrature(norm, x.span(), y.span(), -1.0, tol).value;
}

HHValues hh_closed_form_ip(const Matrix& gram, const Vector& x, const Vector& y) {
  return closed_form(inner(gram, x, x), inner(gram, y, y), inner(gram, x, y));
}

}  // namespace orthokit

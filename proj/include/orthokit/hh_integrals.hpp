#pragma once

#include <string_view>

#include "orthokit/norm.hpp"
#include "orthokit/tolerance.hpp"
#include "orthokit/vector.hpp"

namespace orthokit {

enum class HHMethod { closed_form, quadrature };

std::string_view to_string(HHMethod m);

/// The two integral functionals
///   I₊(x, y) = ∫₀¹ ‖(1−t)x + ty‖² dt,   I₋(x, y) = ∫₀¹ ‖(1−t)x − ty‖² dt
/// together with their difference and sum.
struct HHValues {
  double i_plus = 0.0;
  double i_minus = 0.0;
  double gap = 0.0;    // i_plus − i_minus
  double total = 0.0;  // i_plus + i_minus
  HHMethod method = HHMethod::closed_form;
  double est_abs_error = 0.0;

  friend bool operator==(const HHValues&, const HHValues&) = default;
};

/// I₊ (closed form for inner-product norms, adaptive quadrature otherwise).
double hh_plus(const NormSpec& spec, const Vector& x, const Vector& y, const Tolerance& tol = {});
/// I₋, i.e. I₊ with y negated.
double hh_minus(const NormSpec& spec, const Vector& x, const Vector& y, const Tolerance& tol = {});

/// Closed form in an inner-product space:
///   I± = (‖x‖² + ‖y‖² ± ⟨x, y⟩) / 3.
HHValues hh_closed_form_ip(const Matrix& gram, const Vector& x, const Vector& y);

/// Both functionals, dispatching on the norm kind.
HHValues hh_values(const NormSpec& spec, const Vector& x, const Vector& y, const Tolerance& tol = {});

/// Both functionals by quadrature regardless of the norm kind.
HHValues hh_values_quadrature(const NormSpec& spec, const Vector& x, const Vector& y, const Tolerance& tol = {});

/// Variant of hh_values over an already-validated norm.
HHValues hh_values(const Norm& norm, std::span<const double> x, std::span<const double> y,
                   const Tolerance& tol = {}, bool force_quadrature = false);

}  // namespace orthokit

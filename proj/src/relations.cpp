#include "orthokit/relations.hpp"

#include <array>
#include <cmath>

#include "orthokit/errors.hpp"
#include "orthokit/solvers.hpp"

namespace orthokit {

namespace {

struct NamedRelation {
  RelationId id;
  std::string_view name;
  bool eps;
  bool ip_only;
};

constexpr std::array<NamedRelation, 11> kRelations{{
    {RelationId::classic, "classic", false, true},
    {RelationId::birkhoff, "birkhoff", false, false},
    {RelationId::isosceles, "isosceles", false, false},
    {RelationId::eps_inner, "eps_inner", true, true},
    {RelationId::dragomir_birkhoff, "dragomir_birkhoff", true, false},
    {RelationId::chmielinski_birkhoff, "chmielinski_birkhoff", true, false},
    {RelationId::iso_additive, "iso_additive", true, false},
    {RelationId::iso_multiplicative, "iso_multiplicative", true, false},
    {RelationId::hh_exact, "hh_exact", false, false},
    {RelationId::hh_relative, "hh_relative", true, false},
    {RelationId::hh_absolute, "hh_absolute", true, false},
}};

const NamedRelation& lookup(RelationId id) {
  for (const auto& r : kRelations)
    if (r.id == id) return r;
  throw InvalidArgument("unknown relation id");
}

void require_unit_eps(double eps) {
  if (!std::isfinite(eps) || eps < 0.0 || eps > 1.0) {
    throw InvalidArgument("epsilon must lie in [0, 1]");
  }
}

void require_same_dim(const Vector& x, const Vector& y) {
  if (x.dim() != y.dim()) throw DimensionMismatch("x and y have different dimensions");
}

OrthoVerdict decide(RelationId id, double margin, double scale, const Tolerance& tol, std::optional<double> eps) {
  OrthoVerdict v;
  v.relation = id;
  v.epsilon = eps;
  v.margin = margin;
  const double slack = tol.slack(scale);
  v.holds = margin >= -slack;
  v.details["slack"] = slack;
  return v;
}

OrthoVerdict trivially_holds(RelationId id, std::optional<double> eps) {
  OrthoVerdict v;
  v.relation = id;
  v.epsilon = eps;
  v.holds = true;
  v.margin = 0.0;
  v.degenerate = true;
  return v;
}

std::vector<double> combine(const Vector& x, const Vector& y, double s) {
  std::vector<double> out(x.dim());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = x[i] + s * y[i];
  return out;
}

Norm inner_product_norm(const NormSpec& spec, std::size_t dim, RelationId id) {
  Norm n(spec, dim);
  if (!n.inner_product()) {
    throw InvalidSpec(std::string(to_string(id)) + " is only defined for inner-product norms");
  }
  return n;
}

}  // namespace

std::string_view to_string(RelationId id) { return lookup(id).name; }

std::optional<RelationId> relation_from_string(std::string_view name) {
  for (const auto& r : kRelations)
    if (r.name == name) return r.id;
  return std::nullopt;
}

const std::vector<RelationId>& all_relations() {
  static const std::vector<RelationId> ids = [] {
    std::vector<RelationId> v;
    for (const auto& r : kRelations) v.push_back(r.id);
    return v;
  }();
  return ids;
}

bool takes_epsilon(RelationId id) { return lookup(id).eps; }
bool needs_inner_product(RelationId id) { return lookup(id).ip_only; }

OrthoVerdict classic(const NormSpec& spec, const Vector& x, const Vector& y, const Tolerance& tol) {
  require_same_dim(x, y);
  const Norm n = inner_product_norm(spec, x.dim(), RelationId::classic);
  const double nx = n(x);
  const double ny = n(y);
  const double ip = n.inner(x.span(), y.span());
  if (nx == 0.0 || ny == 0.0) return trivially_holds(RelationId::classic, std::nullopt);
  auto v = decide(RelationId::classic, -std::abs(ip) / (nx * ny), 1.0, tol, std::nullopt);
  v.details["inner"] = ip;
  return v;
}

OrthoVerdict birkhoff(const NormSpec& spec, const Vector& x, const Vector& y, const Tolerance& tol) {
  require_same_dim(x, y);
  const Norm n(spec, x.dim());
  const double nx = n(x);
  if (nx == 0.0 || y.is_zero()) return trivially_holds(RelationId::birkhoff, std::nullopt);
  const auto line = minimize_norm_on_line(n, x.span(), y.span());
  auto v = decide(RelationId::birkhoff, line.value - nx, nx, tol, std::nullopt);
  v.details["alpha_star"] = line.t_star;
  v.details["min_value"] = line.value;
  return v;
}

OrthoVerdict isosceles(const NormSpec& spec, const Vector& x, const Vector& y, const Tolerance& tol) {
  require_same_dim(x, y);
  const Norm n(spec, x.dim());
  if (x.is_zero() || y.is_zero()) return trivially_holds(RelationId::isosceles, std::nullopt);
  const double plus = n(combine(x, y, 1.0));
  const double minus = n(combine(x, y, -1.0));
  auto v = decide(RelationId::isosceles, -std::abs(plus - minus), std::max(plus, minus), tol, std::nullopt);
  v.details["norm_sum"] = plus;
  v.details["norm_difference"] = minus;
  return v;
}

OrthoVerdict eps_inner(const NormSpec& spec, const Vector& x, const Vector& y, double eps, const Tolerance& tol) {
  require_same_dim(x, y);
  if (!std::isfinite(eps) || eps < 0.0) throw InvalidArgument("epsilon must be finite and nonnegative");
  const Norm n = inner_product_norm(spec, x.dim(), RelationId::eps_inner);
  const double nx = n(x);
  const double ny = n(y);
  if (nx == 0.0 || ny == 0.0) return trivially_holds(RelationId::eps_inner, eps);
  const double ip = n.inner(x.span(), y.span());
  auto v = decide(RelationId::eps_inner, eps * nx * ny - std::abs(ip), nx * ny, tol, eps);
  v.details["inner"] = ip;
  return v;
}

OrthoVerdict dragomir_birkhoff(const NormSpec& spec, const Vector& x, const Vector& y, double eps,
                               const Tolerance& tol) {
  require_same_dim(x, y);
  require_unit_eps(eps);
  const Norm n(spec, x.dim());
  const double nx = n(x);
  if (nx == 0.0 || y.is_zero()) return trivially_holds(RelationId::dragomir_birkhoff, eps);
  const auto line = minimize_norm_on_line(n, x.span(), y.span());
  auto v = decide(RelationId::dragomir_birkhoff, line.value - (1.0 - eps) * nx, nx, tol, eps);
  v.details["t_star"] = line.t_star;
  v.details["min_value"] = line.value;
  return v;
}

OrthoVerdict chmielinski_birkhoff(const NormSpec& spec, const Vector& x, const Vector& y, double eps,
                                  const Tolerance& tol) {
  require_same_dim(x, y);
  require_unit_eps(eps);
  const Norm n(spec, x.dim());
  const double nx = n(x);
  const double ny = n(y);
  if (nx == 0.0 || ny == 0.0) return trivially_holds(RelationId::chmielinski_birkhoff, eps);

  std::vector<double> buf(x.dim());
  auto phi = [&](double t) {
    for (std::size_t i = 0; i < buf.size(); ++i) buf[i] = x[i] + t * y[i];
    const double v = n(buf);
    return v * v + 2.0 * eps * nx * ny * std::abs(t);
  };
  // convex on each half-line; beyond |t| = 2‖x‖/‖y‖ it exceeds ‖x‖²
  const double bound = 2.0 * nx / ny;
  const auto left = golden_section_minimize(phi, -bound, 0.0);
  const auto right = golden_section_minimize(phi, 0.0, bound);
  const auto& best = left.value < right.value ? left : right;
  auto v = decide(RelationId::chmielinski_birkhoff, best.value - nx * nx, nx * nx, tol, eps);
  v.details["t_star"] = best.argmin;
  v.details["min_value"] = best.value;
  return v;
}

OrthoVerdict iso_additive(const NormSpec& spec, const Vector& x, const Vector& y, double eps, const Tolerance& tol) {
  require_same_dim(x, y);
  require_unit_eps(eps);
  const Norm n(spec, x.dim());
  const double nx = n(x);
  const double ny = n(y);
  if (nx == 0.0 || ny == 0.0) return trivially_holds(RelationId::iso_additive, eps);
  const double a = n.squared(combine(x, y, 1.0));
  const double b = n.squared(combine(x, y, -1.0));
  auto v = decide(RelationId::iso_additive, 4.0 * eps * nx * ny - std::abs(a - b), std::max(a, b), tol, eps);
  v.details["sq_norm_sum"] = a;
  v.details["sq_norm_difference"] = b;
  return v;
}

OrthoVerdict iso_multiplicative(const NormSpec& spec, const Vector& x, const Vector& y, double eps,
                                const Tolerance& tol) {
  require_same_dim(x, y);
  require_unit_eps(eps);
  const Norm n(spec, x.dim());
  if (x.is_zero() || y.is_zero()) return trivially_holds(RelationId::iso_multiplicative, eps);
  const double plus = n(combine(x, y, 1.0));
  const double minus = n(combine(x, y, -1.0));
  const double lhs = std::abs(plus - minus);
  auto v = decide(RelationId::iso_multiplicative, eps * plus * minus - lhs, std::max(plus, minus), tol, eps);
  if (plus == 0.0 || minus == 0.0) {
    // the right-hand side vanishes; only an exactly vanishing left side could satisfy it
    v.degenerate = true;
    v.holds = lhs == 0.0;
  }
  v.details["norm_sum"] = plus;
  v.details["norm_difference"] = minus;
  return v;
}

OrthoVerdict hh_exact_from(const HHValues& hv, double norm_x, double norm_y, const Tolerance& tol) {
  if (norm_x == 0.0 || norm_y == 0.0) return trivially_holds(RelationId::hh_exact, std::nullopt);
  auto v = decide(RelationId::hh_exact, -std::abs(hv.gap), std::max(hv.total, norm_x * norm_x + norm_y * norm_y),
                  tol, std::nullopt);
  v.details["i_plus"] = hv.i_plus;
  v.details["i_minus"] = hv.i_minus;
  return v;
}

OrthoVerdict hh_relative_from(const HHValues& hv, double norm_x, double norm_y, double eps, const Tolerance& tol) {
  require_unit_eps(eps);
  if (norm_x == 0.0 || norm_y == 0.0) return trivially_holds(RelationId::hh_relative, eps);
  auto v = decide(RelationId::hh_relative, eps * hv.total - std::abs(hv.gap), hv.total, tol, eps);
  v.details["i_plus"] = hv.i_plus;
  v.details["i_minus"] = hv.i_minus;
  v.details["ratio"] = hv.i_minus > 0.0 ? hv.i_plus / hv.i_minus : kInfinity;
  v.details["lower_bound"] = (1.0 - eps) / (1.0 + eps);
  v.details["upper_bound"] = eps < 1.0 ? (1.0 + eps) / (1.0 - eps) : kInfinity;
  return v;
}

OrthoVerdict hh_absolute_from(const HHValues& hv, double norm_x, double norm_y, double eps, const Tolerance& tol) {
  require_unit_eps(eps);
  if (norm_x == 0.0 || norm_y == 0.0) return trivially_holds(RelationId::hh_absolute, eps);
  // Closed-form values carry only the rounding of ⟨x,y⟩, so they share eps_inner's scale.
  const double scale = hv.method == HHMethod::closed_form ? (2.0 / 3.0) * norm_x * norm_y : hv.total;
  auto v = decide(RelationId::hh_absolute, (2.0 / 3.0) * eps * norm_x * norm_y - std::abs(hv.gap), scale, tol, eps);
  v.details["i_plus"] = hv.i_plus;
  v.details["i_minus"] = hv.i_minus;
  return v;
}

namespace {

template <class Decide>
OrthoVerdict with_values(const NormSpec& spec, const Vector& x, const Vector& y, const Tolerance& tol,
                         Decide&& decide_fn) {
  require_same_dim(x, y);
  const Norm n(spec, x.dim());
  const auto hv = hh_values(n, x.span(), y.span(), tol);
  return decide_fn(hv, n(x), n(y));
}

}  // namespace

OrthoVerdict hh_exact(const NormSpec& spec, const Vector& x, const Vector& y, const Tolerance& tol) {
  return with_values(spec, x, y, tol,
                     [&](const HHValues& hv, double nx, double ny) { return hh_exact_from(hv, nx, ny, tol); });
}

OrthoVerdict hh_relative(const NormSpec& spec, const Vector& x, const Vector& y, double eps, const Tolerance& tol) {
  require_unit_eps(eps);
  return with_values(spec, x, y, tol, [&](const HHValues& hv, double nx, double ny) {
    return hh_relative_from(hv, nx, ny, eps, tol);
  });
}

OrthoVerdict hh_absolute(const NormSpec& spec, const Vector& x, const Vector& y, double eps, const Tolerance& tol) {
  require_unit_eps(eps);
  return with_values(spec, x, y, tol, [&](const HHValues& hv, double nx, double ny) {
    return hh_absolute_from(hv, nx, ny, eps, tol);
  });
}

OrthoVerdict evaluate(RelationId id, const NormSpec& spec, const Vector& x, const Vector& y,
                      std::optional<double> eps, const Tolerance& tol) {
  require_valid(tol);
  if (takes_epsilon(id) && !eps) {
    throw InvalidArgument(std::string(to_string(id)) + " requires an epsilon");
  }
  const double e = eps.value_or(0.0);
  switch (id) {
    case RelationId::classic: return classic(spec, x, y, tol);
    case RelationId::birkhoff: return birkhoff(spec, x, y, tol);
    case RelationId::isosceles: return isosceles(spec, x, y, tol);
    case RelationId::eps_inner: return eps_inner(spec, x, y, e, tol);
    case RelationId::dragomir_birkhoff: return dragomir_birkhoff(spec, x, y, e, tol);
    case RelationId::chmielinski_birkhoff: return chmielinski_birkhoff(spec, x, y, e, tol);
    case RelationId::iso_additive: return iso_additive(spec, x, y, e, tol);
    case RelationId::iso_multiplicative: return iso_multiplicative(spec, x, y, e, tol);
    case RelationId::hh_exact: return hh_exact(spec, x, y, tol);
    case RelationId::hh_relative: return hh_relative(spec, x, y, e, tol);
    case RelationId::hh_absolute: return hh_absolute(spec, x, y, e, tol);
  }
  throw InvalidArgument("unknown relation id");
}

}  // namespace orthokit

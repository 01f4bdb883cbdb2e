#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "orthokit/hh_integrals.hpp"
#include "orthokit/norm.hpp"
#include "orthokit/tolerance.hpp"
#include "orthokit/vector.hpp"

namespace orthokit {

enum class RelationId {
  classic,
  birkhoff,
  isosceles,
  eps_inner,
  dragomir_birkhoff,
  chmielinski_birkhoff,
  iso_additive,
  iso_multiplicative,
  hh_exact,
  hh_relative,
  hh_absolute,
};

std::string_view to_string(RelationId id);
std::optional<RelationId> relation_from_string(std::string_view name);
const std::vector<RelationId>& all_relations();
/// True for the relations parametrized by ε.
bool takes_epsilon(RelationId id);
/// True for the relations that are only defined in inner-product spaces.
bool needs_inner_product(RelationId id);

/// Result of deciding one relation.
///
/// margin is RHS − LHS of the defining inequality (for the exact relations the
/// RHS is 0). The relation holds when margin ≥ −slack, where slack comes from
/// the Tolerance at the natural scale of the compared quantities and is
/// recorded in details["slack"].
struct OrthoVerdict {
  RelationId relation = RelationId::classic;
  bool holds = false;
  double margin = 0.0;
  std::optional<double> epsilon;
  bool degenerate = false;
  std::map<std::string, double> details;

  friend bool operator==(const OrthoVerdict&, const OrthoVerdict&) = default;
};

// ⟨x, y⟩ = 0, inner-product norms only. LHS is the cosine |⟨x,y⟩|/(‖x‖‖y‖).
OrthoVerdict classic(const NormSpec& spec, const Vector& x, const Vector& y, const Tolerance& tol = {});

// ‖x + αy‖ ≥ ‖x‖ for all α. details: alpha_star, min_value.
OrthoVerdict birkhoff(const NormSpec& spec, const Vector& x, const Vector& y, const Tolerance& tol = {});

// ‖x + y‖ = ‖x − y‖
OrthoVerdict isosceles(const NormSpec& spec, const Vector& x, const Vector& y, const Tolerance& tol = {});

// |⟨x, y⟩| ≤ ε‖x‖‖y‖. Any ε ≥ 0 is accepted.
OrthoVerdict eps_inner(const NormSpec& spec, const Vector& x, const Vector& y, double eps, const Tolerance& tol = {});

// min_t ‖x + ty‖ ≥ (1 − ε)‖x‖
OrthoVerdict dragomir_birkhoff(const NormSpec& spec, const Vector& x, const Vector& y, double eps,
                               const Tolerance& tol = {});

// inf_t ‖x + ty‖² + 2ε‖x‖‖y‖|t| ≥ ‖x‖²
OrthoVerdict chmielinski_birkhoff(const NormSpec& spec, const Vector& x, const Vector& y, double eps,
                                  const Tolerance& tol = {});

// |‖x+y‖² − ‖x−y‖²| ≤ 4ε‖x‖‖y‖
OrthoVerdict iso_additive(const NormSpec& spec, const Vector& x, const Vector& y, double eps,
                          const Tolerance& tol = {});

// |‖x+y‖ − ‖x−y‖| ≤ ε‖x+y‖‖x−y‖, decided non-strictly up to slack
OrthoVerdict iso_multiplicative(const NormSpec& spec, const Vector& x, const Vector& y, double eps,
                                const Tolerance& tol = {});

// I₊ = I₋
OrthoVerdict hh_exact(const NormSpec& spec, const Vector& x, const Vector& y, const Tolerance& tol = {});

// |I₊ − I₋| ≤ ε(I₊ + I₋). details: ratio, lower_bound, upper_bound.
OrthoVerdict hh_relative(const NormSpec& spec, const Vector& x, const Vector& y, double eps,
                         const Tolerance& tol = {});

// |I₊ − I₋| ≤ (2/3)ε‖x‖‖y‖
OrthoVerdict hh_absolute(const NormSpec& spec, const Vector& x, const Vector& y, double eps,
                         const Tolerance& tol = {});

/// The three integral relations from already computed functionals and norms.
OrthoVerdict hh_exact_from(const HHValues& hv, double norm_x, double norm_y, const Tolerance& tol = {});
OrthoVerdict hh_relative_from(const HHValues& hv, double norm_x, double norm_y, double eps,
                              const Tolerance& tol = {});
OrthoVerdict hh_absolute_from(const HHValues& hv, double norm_x, double norm_y, double eps,
                              const Tolerance& tol = {});

/// Dispatch by identifier. eps is required exactly when takes_epsilon(id).
OrthoVerdict evaluate(RelationId id, const NormSpec& spec, const Vector& x, const Vector& y,
                      std::optional<double> eps, const Tolerance& tol = {});

}  // namespace orthokit

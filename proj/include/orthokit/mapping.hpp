#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "orthokit/norm.hpp"
#include "orthokit/tolerance.hpp"
#include "orthokit/vector.hpp"

namespace orthokit {

/// A linear map g: (ℝⁿ, domain) → (ℝᵐ, codomain) given by an m×n matrix.
struct LinearMap {
  Matrix matrix;
  NormSpec domain = LpNorm{2.0};
  NormSpec codomain = LpNorm{2.0};
};

/// Throws DimensionMismatch / InvalidSpec / InvalidArgument on a malformed map.
void validate(const LinearMap& map);

enum class ProfileMethod { exact_ip, estimated };
std::string_view to_string(ProfileMethod m);

/// Operator norm ‖g‖ = sup ‖gx‖ and co-norm [g] = inf ‖gx‖ over the unit
/// sphere, with the unit vectors attaining them.
struct MapProfile {
  double op_norm = 0.0;
  double co_norm = 0.0;
  double kappa = 1.0;     // op_norm / co_norm, infinite when co_norm = 0
  double eps_star = 0.0;  // least ε with ‖g‖² ≤ (1+ε)/(1−ε)·[g]²
  std::vector<double> cert_max;
  std::vector<double> cert_min;
  ProfileMethod method = ProfileMethod::exact_ip;
  bool unbounded = false;  // co_norm = 0, so no ε < 1 works

  friend bool operator==(const MapProfile&, const MapProfile&) = default;
};

struct ProfileOptions {
  int starts = 64;
  std::uint64_t seed = 0;
};

/// Exact when both norms come from inner products: the spectrum of the
/// whitened Gram operator by Jacobi rotations. Otherwise multi-start
/// compass search on the unit sphere; op_norm is then an attained value
/// (a lower bound) and co_norm likewise an upper bound.
MapProfile profile(const LinearMap& map, const ProfileOptions& options = {});

/// Random unit vectors drawn from a seeded stream.
struct Sampler {
  std::size_t samples = 4096;
  std::uint64_t seed = 0;
};

/// Two-sided bound  (1−ε)/(1+ε)·‖g‖²‖x‖² ≤ ‖gx‖² ≤ (1+ε)/(1−ε)·[g]²‖x‖².
struct BoundsReport {
  double eps = 0.0;
  bool passes = false;
  double lower_bound = 0.0;  // on ‖gx‖²/‖x‖²
  double upper_bound = 0.0;
  double min_ratio = 0.0;    // sampled extremes of ‖gx‖²/‖x‖²
  double max_ratio = 0.0;
  double margin = 0.0;       // min(min_ratio − lower_bound, upper_bound − max_ratio)
  std::vector<double> witness_low;
  std::vector<double> witness_high;
  std::size_t samples = 0;

  friend bool operator==(const BoundsReport&, const BoundsReport&) = default;
};

BoundsReport check_bounds_12(const LinearMap& map, double eps, const Sampler& sampler = {},
                             const Tolerance& tol = {});
BoundsReport check_bounds_12(const LinearMap& map, const MapProfile& prof, double eps, const Sampler& sampler = {},
                             const Tolerance& tol = {});

/// The same test with both bounds written through one η ∈ [[g], ‖g‖]:
/// (1−ε)/(1+ε)·η²‖x‖² ≤ ‖gx‖² ≤ (1+ε)/(1−ε)·η²‖x‖².
BoundsReport check_bounds_13(const LinearMap& map, const MapProfile& prof, double eps, double eta,
                             const Sampler& sampler = {}, const Tolerance& tol = {});

/// sup over ‖x‖ = ‖y‖ of |‖gx‖² − ‖gy‖²| / (‖gx‖² + ‖gy‖²).
double min_eps_condition_14(const LinearMap& map, const Sampler& sampler = {});
double min_eps_condition_14(const LinearMap& map, const MapProfile& prof, const Sampler& sampler = {});

/// sup over HH-orthogonal pairs (u, w) of |I₊ − I₋| / (I₊ + I₋) at (gu, gw):
/// the least ε for which g sends ⊥_HH into the relative ε-relation.
struct Condition11Result {
  double eps_min = 0.0;
  std::vector<double> u;
  std::vector<double> w;
  bool approximate = false;
  bool stabilized = true;
  std::size_t evaluations = 0;

  friend bool operator==(const Condition11Result&, const Condition11Result&) = default;
};

/// 2-dimensional inner-product domain and codomain: angle sweep with the
/// optimal scale ratio in closed form, refined by golden section.
/// Otherwise: random HH-orthogonal pairs from the pencil solver followed by
/// local refinement (approximate = true).
Condition11Result min_eps_condition_11(const LinearMap& map, std::size_t budget = 4000, std::uint64_t seed = 0);

/// ‖gx‖²‖y‖² ≤ (1+ε)/(1−ε)·‖gy‖²‖x‖² on sampled pairs.
struct Condition17Report {
  double eps = 0.0;
  bool passes = false;
  double worst_ratio = 0.0;  // max sampled ‖gx‖²‖y‖² / (‖gy‖²‖x‖²)
  double bound = 0.0;        // (1+ε)/(1−ε)
  double kappa_sq = 0.0;     // from the profile
  bool consistent_with_16 = false;  // worst_ratio agrees with kappa_sq
  std::vector<double> witness_x;
  std::vector<double> witness_y;
  std::size_t pairs = 0;

  friend bool operator==(const Condition17Report&, const Condition17Report&) = default;
};

Condition17Report check_condition_17(const LinearMap& map, double eps, const Sampler& sampler = {},
                                     const Tolerance& tol = {});
Condition17Report check_condition_17(const LinearMap& map, const MapProfile& prof, double eps,
                                     const Sampler& sampler = {}, const Tolerance& tol = {});

/// ‖g‖² ≤ (1+ε)/(1−ε)·[g]², returned as RHS − LHS.
double condition_16_margin(const MapProfile& prof, double eps);

/// Tightest m, M with m‖x‖₁ ≤ ‖x‖₂ ≤ M‖x‖₁.
struct Embedding {
  double m = 1.0;
  double big_m = 1.0;
  bool analytic = true;
};

Embedding two_norm_embedding(const NormSpec& norm1, const NormSpec& norm2, std::size_t dim);

/// Least ε in [0, 1] accepted by a predicate that is monotone in ε, by bisection.
/// Returns 0 when ε = 0 is accepted and 1 when no ε < 1 is.
double minimal_passing_eps(const std::function<bool(double)>& passes, double abs_tol = 1e-12);

}  // namespace orthokit

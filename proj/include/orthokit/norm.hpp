#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "orthokit/vector.hpp"

namespace orthokit {

/// The exponent value standing for the sup-norm.
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// ‖v‖_p = (Σ|vᵢ|^p)^(1/p); p == kInfinity gives max |vᵢ|.
struct LpNorm {
  double p = 2.0;
  friend bool operator==(const LpNorm&, const LpNorm&) = default;
};

/// (Σ wᵢ|vᵢ|^p)^(1/p). At p == kInfinity the weights apply linearly: max wᵢ|vᵢ|.
struct WeightedLpNorm {
  double p = 2.0;
  std::vector<double> weights;
  friend bool operator==(const WeightedLpNorm&, const WeightedLpNorm&) = default;
};

/// ‖v‖ = sqrt(vᵀ G v) for a symmetric positive definite gram matrix G.
struct InnerProductNorm {
  Matrix gram;
  friend bool operator==(const InnerProductNorm&, const InnerProductNorm&) = default;
};

using NormSpec = std::variant<LpNorm, WeightedLpNorm, InnerProductNorm>;

/// Returns the first violated invariant of `spec` at dimension `dim`, or nullopt.
std::optional<std::string> validate_spec(const NormSpec& spec, std::size_t dim);

/// True when the norm comes from an inner product (ip, lp:2, wlp:2).
bool is_inner_product_norm(const NormSpec& spec);

/// Gram matrix of an inner-product norm at `dim`; nullopt for other norms.
std::optional<Matrix> gram_matrix(const NormSpec& spec, std::size_t dim);

/// Short human-readable description, e.g. "lp:2", "wlp:1:[1,2]", "ip:2x2".
std::string describe(const NormSpec& spec);

/// A norm validated once for a fixed dimension; cheap to evaluate repeatedly.
class Norm {
 public:
  Norm(const NormSpec& spec, std::size_t dim);

  std::size_t dim() const { return dim_; }
  bool inner_product() const { return kind_ == Kind::inner_product || kind_ == Kind::euclidean || kind_ == Kind::weighted_euclidean; }

  double operator()(std::span<const double> v) const;
  double operator()(const Vector& v) const { return (*this)(v.span()); }
  double squared(std::span<const double> v) const;

  /// ⟨a, b⟩ for inner-product norms. Undefined for other kinds (throws).
  double inner(std::span<const double> a, std::span<const double> b) const;

  /// Finite exponent, or kInfinity. 2 for inner-product norms.
  double exponent() const { return p_; }
  /// Per-coordinate weights (all ones for unweighted and gram norms).
  std::span<const double> weights() const { return weights_; }
  bool coordinatewise() const { return kind_ != Kind::inner_product; }

 private:
  enum class Kind { euclidean, weighted_euclidean, lp, weighted_lp, inner_product };

  void check_dim(std::size_t n) const;

  Kind kind_;
  std::size_t dim_;
  double p_ = 2.0;
  std::vector<double> weights_;
  Matrix gram_;
};

/// ‖v‖ under `spec`. Throws DimensionMismatch or InvalidSpec.
double norm(const NormSpec& spec, const Vector& v);

/// xᵀ G y. Throws DimensionMismatch.
double inner(const Matrix& gram, const Vector& x, const Vector& y);

}  // namespace orthokit

#include "orthokit/norm.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "orthokit/errors.hpp"
#include "orthokit/linalg.hpp"

namespace orthokit {

namespace {

std::optional<std::string> check_exponent(double p) {
  if (std::isnan(p)) return "p is NaN";
  if (p < 1.0) return "p < 1";
  return std::nullopt;
}

std::string format_p(double p) {
  if (std::isinf(p)) return "inf";
  std::ostringstream os;
  os << p;
  return os.str();
}

}  // namespace

std::optional<std::string> validate_spec(const NormSpec& spec, std::size_t dim) {
  if (dim == 0) return "dimension must be at least 1";
  if (const auto* lp = std::get_if<LpNorm>(&spec)) return check_exponent(lp->p);
  if (const auto* w = std::get_if<WeightedLpNorm>(&spec)) {
    if (auto e = check_exponent(w->p)) return e;
    for (double wi : w->weights)
      if (!(wi > 0.0) || !std::isfinite(wi)) return "weights must be finite and strictly positive";
    if (w->weights.size() != dim) {
      return "weights length " + std::to_string(w->weights.size()) + " does not match dimension " +
             std::to_string(dim);
    }
    return std::nullopt;
  }
  const auto& g = std::get<InnerProductNorm>(spec).gram;
  if (!g.square() || g.rows() == 0) return "gram is not square";
  if (g.rows() != dim) {
    return "gram size " + std::to_string(g.rows()) + " does not match dimension " + std::to_string(dim);
  }
  if (!g.all_finite()) return "gram has non-finite entries";
  if (!linalg::is_symmetric(g, 1e-12)) return "gram is not symmetric";
  if (!linalg::cholesky(g)) return "not positive definite";
  return std::nullopt;
}

bool is_inner_product_norm(const NormSpec& spec) {
  if (const auto* lp = std::get_if<LpNorm>(&spec)) return lp->p == 2.0;
  if (const auto* w = std::get_if<WeightedLpNorm>(&spec)) return w->p == 2.0;
  return true;
}

std::optional<Matrix> gram_matrix(const NormSpec& spec, std::size_t dim) {
  if (const auto* lp = std::get_if<LpNorm>(&spec)) {
    if (lp->p != 2.0) return std::nullopt;
    return Matrix::identity(dim);
  }
  if (const auto* w = std::get_if<WeightedLpNorm>(&spec)) {
    if (w->p != 2.0) return std::nullopt;
    if (w->weights.size() != dim) throw DimensionMismatch("weights length does not match dimension");
    return Matrix::diagonal(w->weights);
  }
  const auto& g = std::get<InnerProductNorm>(spec).gram;
  if (g.rows() != dim) throw DimensionMismatch("gram size does not match dimension");
  return g;
}

std::string describe(const NormSpec& spec) {
  if (const auto* lp = std::get_if<LpNorm>(&spec)) return "lp:" + format_p(lp->p);
  if (const auto* w = std::get_if<WeightedLpNorm>(&spec)) {
    std::ostringstream os;
    os << "wlp:" << format_p(w->p) << ":[";
    for (std::size_t i = 0; i < w->weights.size(); ++i) os << (i ? "," : "") << w->weights[i];
    os << "]";
    return os.str();
  }
  const auto& g = std::get<InnerProductNorm>(spec).gram;
  return "ip:" + std::to_string(g.rows()) + "x" + std::to_string(g.cols());
}

Norm::Norm(const NormSpec& spec, std::size_t dim) : dim_(dim) {
  if (auto err = validate_spec(spec, dim)) {
    const bool dim_issue = err->find("match dimension") != std::string::npos;
    if (dim_issue) throw DimensionMismatch(*err);
    throw InvalidSpec(*err);
  }
  weights_.assign(dim, 1.0);
  if (const auto* lp = std::get_if<LpNorm>(&spec)) {
    p_ = lp->p;
    kind_ = p_ == 2.0 ? Kind::euclidean : Kind::lp;
  } else if (const auto* w = std::get_if<WeightedLpNorm>(&spec)) {
    p_ = w->p;
    weights_ = w->weights;
    kind_ = p_ == 2.0 ? Kind::weighted_euclidean : Kind::weighted_lp;
  } else {
    gram_ = std::get<InnerProductNorm>(spec).gram;
    kind_ = Kind::inner_product;
  }
}

void Norm::check_dim(std::size_t n) const {
  if (n != dim_) {
    throw DimensionMismatch("norm defined on dimension " + std::to_string(dim_) + " applied to dimension " +
                            std::to_string(n));
  }
}

double Norm::squared(std::span<const double> v) const {
  check_dim(v.size());
  switch (kind_) {
    case Kind::euclidean:
    case Kind::weighted_euclidean: {
      double s = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i) s += weights_[i] * v[i] * v[i];
      return s;
    }
    case Kind::inner_product:
      return std::max(0.0, inner(v, v));
    default: {
      const double n = (*this)(v);
      return n * n;
    }
  }
}

double Norm::operator()(std::span<const double> v) const {
  check_dim(v.size());
  if (kind_ == Kind::inner_product) return std::sqrt(squared(v));

  const bool weighted = kind_ == Kind::weighted_lp || kind_ == Kind::weighted_euclidean;
  if (std::isinf(p_)) {
    double m = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) m = std::max(m, weights_[i] * std::abs(v[i]));
    return m;
  }
  if (p_ == 1.0) {
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) s += weights_[i] * std::abs(v[i]);
    return s;
  }
  // scale by the largest magnitude to keep |v|^p in range
  double m = 0.0;
  for (double c : v) m = std::max(m, std::abs(c));
  if (m == 0.0) return 0.0;
  double s = 0.0;
  if (p_ == 2.0) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double r = v[i] / m;
      s += weights_[i] * r * r;
    }
    return m * std::sqrt(s);
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double r = std::abs(v[i]) / m;
    if (r > 0.0) s += (weighted ? weights_[i] : 1.0) * std::pow(r, p_);
  }
  return m * std::pow(s, 1.0 / p_);
}

double Norm::inner(std::span<const double> a, std::span<const double> b) const {
  check_dim(a.size());
  check_dim(b.size());
  switch (kind_) {
    case Kind::euclidean:
    case Kind::weighted_euclidean: {
      double s = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) s += weights_[i] * a[i] * b[i];
      return s;
    }
    case Kind::inner_product: {
      double s = 0.0;
      for (std::size_t i = 0; i < dim_; ++i) s += a[i] * dot(gram_.row(i), b);
      return s;
    }
    default:
      throw InvalidSpec("norm is not induced by an inner product");
  }
}

double norm(const NormSpec& spec, const Vector& v) { return Norm(spec, v.dim())(v); }

double inner(const Matrix& gram, const Vector& x, const Vector& y) {
  if (!gram.square() || gram.rows() != x.dim() || x.dim() != y.dim()) {
    throw DimensionMismatch("gram and vectors have incompatible dimensions");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < x.dim(); ++i) s += x[i] * dot(gram.row(i), y.span());
  return s;
}

}  // namespace orthokit

#include "orthokit/vector.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "orthokit/errors.hpp"
#include "orthokit/tolerance.hpp"

namespace orthokit {

void require_valid(const Tolerance& tol) {
  if (!tol.valid()) {
    throw InvalidArgument("tolerance must be finite, nonnegative and not both zero");
  }
}

namespace {

void require_finite(std::span<const double> values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) throw InvalidArgument(std::string(what) + " has a non-finite component");
  }
}

void require_same_dim(const Vector& a, const Vector& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("vector dimensions differ: " + std::to_string(a.dim()) + " vs " +
                            std::to_string(b.dim()));
  }
}

}  // namespace

Vector::Vector(std::vector<double> components) : data_(std::move(components)) {
  if (data_.empty()) throw InvalidArgument("vector dimension must be at least 1");
  require_finite(data_, "vector");
}

Vector::Vector(std::initializer_list<double> components)
    : Vector(std::vector<double>(components)) {}

Vector Vector::zeros(std::size_t dim) { return Vector(std::vector<double>(dim, 0.0)); }

Vector Vector::basis(std::size_t dim, std::size_t index) {
  std::vector<double> v(dim, 0.0);
  if (index >= dim) throw InvalidArgument("basis index out of range");
  v[index] = 1.0;
  return Vector(std::move(v));
}

bool Vector::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return v == 0.0; });
}

Vector operator+(const Vector& a, const Vector& b) {
  require_same_dim(a, b);
  std::vector<double> out(a.dim());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.data_[i] + b.data_[i];
  return Vector(std::move(out));
}

Vector operator-(const Vector& a, const Vector& b) {
  require_same_dim(a, b);
  std::vector<double> out(a.dim());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.data_[i] - b.data_[i];
  return Vector(std::move(out));
}

Vector operator-(const Vector& a) { return -1.0 * a; }

Vector operator*(double s, const Vector& a) {
  std::vector<double> out(a.dim());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = s * a.data_[i];
  return Vector(std::move(out));
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty()) throw InvalidArgument("matrix must be non-empty");
  rows_ = rows.size();
  cols_ = rows.front().size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InvalidArgument("matrix rows have unequal lengths");
    data_.insert(data_.end(), r.begin(), r.end());
  }
  require_finite(data_, "matrix");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : Matrix([&] {
        std::vector<std::vector<double>> v;
        for (const auto& r : rows) v.emplace_back(r);
        return v;
      }()) {}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> diag) {
  Matrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

std::vector<std::vector<double>> Matrix::to_rows() const {
  std::vector<std::vector<double>> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r].assign(row(r).begin(), row(r).end());
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

std::vector<double> Matrix::apply(std::span<const double> v) const {
  if (v.size() != cols_) {
    throw DimensionMismatch("matrix has " + std::to_string(cols_) + " columns but vector has dimension " +
                            std::to_string(v.size()));
  }
  std::vector<double> out(rows_, 0.0);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = dot(row(r), v);
  return out;
}

Vector Matrix::operator*(const Vector& v) const { return Vector(apply(v.span())); }

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product dimensions do not agree");
  Matrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

Matrix operator*(double s, const Matrix& a) {
  Matrix out = a;
  for (double& v : out.data_) v *= s;
  return out;
}

bool Matrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace orthokit

#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace orthokit {

/// Finite-dimensional real vector. Non-empty, every component finite.
/// Immutable after construction.
class Vector {
 public:
  explicit Vector(std::vector<double> components);
  Vector(std::initializer_list<double> components);

  static Vector zeros(std::size_t dim);
  static Vector basis(std::size_t dim, std::size_t index);

  std::size_t dim() const { return data_.size(); }
  double operator[](std::size_t i) const { return data_[i]; }
  std::span<const double> span() const { return data_; }
  const std::vector<double>& components() const { return data_; }

  bool is_zero() const;

  friend Vector operator+(const Vector& a, const Vector& b);
  friend Vector operator-(const Vector& a, const Vector& b);
  friend Vector operator-(const Vector& a);
  friend Vector operator*(double s, const Vector& a);
  friend bool operator==(const Vector& a, const Vector& b) = default;

 private:
  std::vector<double> data_;
};

/// Euclidean dot product of two equal-length spans.
double dot(std::span<const double> a, std::span<const double> b);

/// Dense row-major real matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  explicit Matrix(const std::vector<std::vector<double>>& rows);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> diag);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::vector<std::vector<double>> to_rows() const;

  Matrix transpose() const;
  std::vector<double> apply(std::span<const double> v) const;
  Vector operator*(const Vector& v) const;
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator*(double s, const Matrix& a);
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

  bool all_finite() const;
  double max_abs() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

}  // namespace orthokit

#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "hvalab/rational.hpp"

namespace hvalab {

/// Row vector of exact rationals. Registers of every machine are row vectors
/// and are updated by right multiplication.
class RowVector {
 public:
  RowVector() = default;
  explicit RowVector(std::size_t dim, const Rational& fill = Rational(0)) : entries_(dim, fill) {}
  explicit RowVector(std::vector<Rational> entries) : entries_(std::move(entries)) {}
  RowVector(std::initializer_list<Rational> entries) : entries_(entries) {}

  std::size_t dim() const { return entries_.size(); }
  const Rational& operator[](std::size_t i) const { return entries_[i]; }
  Rational& operator[](std::size_t i) { return entries_[i]; }
  std::span<const Rational> entries() const { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  bool is_zero() const;
  bool is_integer() const;

  friend bool operator==(const RowVector&, const RowVector&) = default;
  friend auto operator<=>(const RowVector&, const RowVector&) = default;

  std::size_t hash() const;
  std::string to_string() const;

 private:
  std::vector<Rational> entries_;
};

/// Dense row-major rational matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const Rational& fill = Rational(0));
  Matrix(std::initializer_list<std::initializer_list<Rational>> rows);
  Matrix(std::size_t rows, std::size_t cols, std::vector<Rational> row_major);

  static Matrix identity(std::size_t n);
  static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
  /// Single-entry matrix (s), the 1x1 register multipliers.
  static Matrix scalar(const Rational& s) { return Matrix(1, 1, s); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::span<const Rational> entries() const { return data_; }
  RowVector row(std::size_t r) const;

  bool is_zero() const;
  bool is_integer() const;
  bool is_identity() const;

  Matrix scaled(const Rational& s) const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// a * b; throws ShapeError unless a.cols() == b.rows().
Matrix mat_mul(const Matrix& a, const Matrix& b);
/// v * a; throws ShapeError unless v.dim() == a.rows().
RowVector vec_mat_mul(const RowVector& v, const Matrix& a);

inline Matrix operator*(const Matrix& a, const Matrix& b) { return mat_mul(a, b); }
inline RowVector operator*(const RowVector& v, const Matrix& a) { return vec_mat_mul(v, a); }

/// Kronecker product: block (i,j) of the result is a(i,j) * b.
Matrix tensor(const Matrix& a, const Matrix& b);
/// Entry (i*v.dim()+j) of the result is u[i]*v[j] (0-based).
RowVector tensor_vec(const RowVector& u, const RowVector& v);

/// Exact inverse by Gauss-Jordan elimination over Q.
Matrix inverse(const Matrix& a);

/// Least positive c such that c*M is integral for every M in ms.
BigInt common_denominator_scalar(std::span<const Matrix> ms);

/// Block diagonal diag(a, b).
Matrix direct_sum(const Matrix& a, const Matrix& b);

/// u * (column vector f), i.e. the dot product of two equal-length vectors.
Rational dot(const RowVector& u, const RowVector& f);

RowVector concat(const RowVector& a, const RowVector& b);

bool commute(const Matrix& a, const Matrix& b);

std::ostream& operator<<(std::ostream& os, const RowVector& v);
std::ostream& operator<<(std::ostream& os, const Matrix& m);

}  // namespace hvalab

template <>
struct std::hash<hvalab::RowVector> {
  std::size_t operator()(const hvalab::RowVector& v) const noexcept { return v.hash(); }
};

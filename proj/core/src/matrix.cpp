#include "hvalab/matrix.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "hvalab/error.hpp"

namespace hvalab {

bool RowVector::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Rational& r) { return r.is_zero(); });
}

bool RowVector::is_integer() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Rational& r) { return r.is_integer(); });
}

std::size_t RowVector::hash() const {
  std::size_t h = entries_.size();
  for (const auto& e : entries_) h ^= e.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::string RowVector::to_string() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

Matrix::Matrix(std::size_t rows, std::size_t cols, const Rational& fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<Rational>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw ShapeError("ragged matrix literal");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Rational> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
  if (data_.size() != rows_ * cols_) throw ShapeError("entry count does not match rows*cols");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RowVector Matrix::row(std::size_t r) const {
  return RowVector(std::vector<Rational>(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                                         data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)));
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& r) { return r.is_zero(); });
}

bool Matrix::is_integer() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& r) { return r.is_integer(); });
}

bool Matrix::is_identity() const { return is_square() && *this == identity(rows_); }

Matrix Matrix::scaled(const Rational& s) const {
  Matrix m = *this;
  for (auto& e : m.data_) e *= s;
  return m;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw ShapeError("mat_mul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " times " +
                     std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const Rational& ail = a(i, l);
      if (ail.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (!b(l, j).is_zero()) c(i, j) += ail * b(l, j);
      }
    }
  }
  return c;
}

RowVector vec_mat_mul(const RowVector& v, const Matrix& a) {
  if (v.dim() != a.rows()) {
    throw ShapeError("vec_mat_mul: vector of dim " + std::to_string(v.dim()) + " times " +
                     std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
  RowVector out(a.cols());
  for (std::size_t i = 0; i < v.dim(); ++i) {
    if (v[i].is_zero()) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (!a(i, j).is_zero()) out[j] += v[i] * a(i, j);
    }
  }
  return out;
}

Matrix tensor(const Matrix& a, const Matrix& b) {
  Matrix t(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c) t(i * b.rows() + r, j * b.cols() + c) = a(i, j) * b(r, c);
    }
  return t;
}

RowVector tensor_vec(const RowVector& u, const RowVector& v) {
  RowVector out(u.dim() * v.dim());
  for (std::size_t i = 0; i < u.dim(); ++i)
    for (std::size_t j = 0; j < v.dim(); ++j) out[i * v.dim() + j] = u[i] * v[j];
  return out;
}

Matrix inverse(const Matrix& a) {
  if (!a.is_square()) throw ShapeError("inverse of a non-square matrix");
  const std::size_t n = a.rows();
  Matrix work = a;
  Matrix inv = Matrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && work(pivot, col).is_zero()) ++pivot;
    if (pivot == n) throw SingularMatrixError("matrix is singular");
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(work(pivot, j), work(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    }
    const Rational p = work(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      work(col, j) /= p;
      inv(col, j) /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || work(r, col).is_zero()) continue;
      const Rational f = work(r, col);
      for (std::size_t j = 0; j < n; ++j) {
        work(r, j) -= f * work(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

BigInt common_denominator_scalar(std::span<const Matrix> ms) {
  BigInt c = 1;
  for (const auto& m : ms)
    for (const auto& e : m.entries()) c = lcm(c, e.denominator());
  return c;
}

Matrix direct_sum(const Matrix& a, const Matrix& b) {
  Matrix m(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

Rational dot(const RowVector& u, const RowVector& f) {
  if (u.dim() != f.dim()) throw ShapeError("dot: dimension mismatch");
  Rational s;
  for (std::size_t i = 0; i < u.dim(); ++i) s += u[i] * f[i];
  return s;
}

RowVector concat(const RowVector& a, const RowVector& b) {
  std::vector<Rational> e(a.begin(), a.end());
  e.insert(e.end(), b.begin(), b.end());
  return RowVector(std::move(e));
}

bool commute(const Matrix& a, const Matrix& b) {
  if (!a.is_square() || a.rows() != b.rows() || !b.is_square()) throw ShapeError("commute: shapes differ");
  return mat_mul(a, b) == mat_mul(b, a);
}

std::ostream& operator<<(std::ostream& os, const RowVector& v) {
  os << '(';
  for (std::size_t i = 0; i < v.dim(); ++i) os << (i ? " " : "") << v[i];
  return os << ')';
}

std::ostream& operator<<(std::ostream& os, const Matrix& m) {
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j);
    os << ']';
  }
  return os << ']';
}

}  // namespace hvalab

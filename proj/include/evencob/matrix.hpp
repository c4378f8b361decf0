#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "evencob/errors.hpp"
#include "evencob/rational.hpp"

namespace evencob {

/// Dense row-major matrix over an exact field.
template <typename T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_)
      throw DimensionMismatch("matrix data length " + std::to_string(data_.size()) + " != " +
                              std::to_string(rows_) + "x" + std::to_string(cols_));
  }
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw DimensionMismatch("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  /// Rows given as vectors; every row must have `cols` entries.
  static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols)
        throw DimensionMismatch("row " + std::to_string(i) + " has length " +
                                std::to_string(rows[i].size()) + ", expected " + std::to_string(cols));
      std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + i * cols);
    }
    return m;
  }

  static Matrix column(const std::vector<T>& v) { return Matrix(v.size(), 1, v); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::vector<T> row_vector(std::size_t r) const { return {data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_}; }
  std::vector<T> col_vector(std::size_t c) const {
    std::vector<T> v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }
  const std::vector<T>& data() const { return data_; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const T& x) { return x == 0; });
  }
  bool is_square() const { return rows_ == cols_; }
  bool is_symmetric() const { return is_square() && *this == transpose(); }
  bool is_skew_symmetric() const { return is_square() && *this == -transpose(); }

  Matrix operator-() const {
    Matrix m = *this;
    for (auto& x : m.data_) x = -x;
    return m;
  }
  Matrix& operator+=(const Matrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const T& s, Matrix m) {
    for (auto& x : m.data_) x *= s;
    return m;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_)
      throw DimensionMismatch("cannot multiply " + a.shape() + " by " + b.shape());
    Matrix p(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) p(i, j) += aik * b(k, j);
      }
    return p;
  }

  friend std::vector<T> operator*(const Matrix& a, const std::vector<T>& v) {
    if (a.cols_ != v.size())
      throw DimensionMismatch("cannot apply " + a.shape() + " to vector of length " + std::to_string(v.size()));
    std::vector<T> out(a.rows_, T(0));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) out[i] += a(i, k) * v[k];
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

  /// Rows [first, first+count).
  Matrix row_block(std::size_t first, std::size_t count) const {
    Matrix m(count, cols_);
    std::copy(data_.begin() + first * cols_, data_.begin() + (first + count) * cols_, m.data_.begin());
    return m;
  }

 private:
  void require_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw DimensionMismatch("shape mismatch " + shape() + " vs " + o.shape());
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RationalMatrix = Matrix<Rational>;
using RationalVector = std::vector<Rational>;

/// [a; b]
template <typename T>
Matrix<T> vstack(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.cols()) throw DimensionMismatch("vstack of " + a.shape() + " and " + b.shape());
  std::vector<T> d = a.data();
  d.insert(d.end(), b.data().begin(), b.data().end());
  return Matrix<T>(a.rows() + b.rows(), a.cols(), std::move(d));
}

/// [a | b]
template <typename T>
Matrix<T> hstack(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows()) throw DimensionMismatch("hstack of " + a.shape() + " and " + b.shape());
  Matrix<T> m(a.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) m(r, c) = a(r, c);
    for (std::size_t c = 0; c < b.cols(); ++c) m(r, a.cols() + c) = b(r, c);
  }
  return m;
}

template <typename T>
Matrix<T> block_diag(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> m(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) m(r, c) = a(r, c);
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) m(a.rows() + r, a.cols() + c) = b(r, c);
  return m;
}

template <typename T>
T dot(std::span<const T> x, std::span<const T> y) {
  if (x.size() != y.size()) throw DimensionMismatch("dot product of unequal lengths");
  T s(0);
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

}  // namespace evencob

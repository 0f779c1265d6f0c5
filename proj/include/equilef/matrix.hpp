#pragma once

// Dense matrices over the library's ring and field types, with Gaussian
// elimination for the field cases. Element types provide is_zero().

#include "equilef/core.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace equilef {

template <class T>
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& zero)
      : rows_(rows), cols_(cols), data_(rows * cols, zero), zero_(zero) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const T& zero() const { return zero_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  /// a·b, skipping zero entries of a.
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_)
      throw StructuralError("matrix shapes " + a.shape() + " and " + b.shape() + " do not compose");
    Matrix out(a.rows_, b.cols_, a.zero_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t l = 0; l < a.cols_; ++l) {
        const T& x = a(i, l);
        if (x.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const T& y = b(l, j);
          if (!y.is_zero()) out(i, j) += x * y;
        }
      }
    return out;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw StructuralError("matrix shapes differ");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!x.is_zero()) return false;
    return true;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

  template <class Fn>
  auto map(Fn&& fn) const -> Matrix<decltype(fn(std::declval<T>()))> {
    using Out = decltype(fn(std::declval<T>()));
    Matrix<Out> out(rows_, cols_, fn(zero_));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(i, j) = fn((*this)(i, j));
    return out;
  }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
  T zero_{};
};

/// Column echelon form of the span of the columns of m over a field:
/// returns basis columns and, for each, its pivot row. Each basis column is
/// a combination of input columns sharing that pivot row's support.
template <class T>
struct ColumnEchelon {
  std::vector<std::vector<T>> basis;
  std::vector<std::size_t> pivots;
};

template <class T>
ColumnEchelon<T> column_echelon(const Matrix<T>& m) {
  ColumnEchelon<T> out;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    std::vector<T> v(m.rows(), m.zero());
    for (std::size_t i = 0; i < m.rows(); ++i) v[i] = m(i, j);
    // Reduce against the existing basis; basis vectors are normalized to 1
    // at their pivot and zero at every other pivot.
    for (std::size_t b = 0; b < out.basis.size(); ++b) {
      const T c = v[out.pivots[b]];
      if (c.is_zero()) continue;
      for (std::size_t i = 0; i < v.size(); ++i)
        if (!out.basis[b][i].is_zero()) v[i] -= c * out.basis[b][i];
    }
    std::optional<std::size_t> pivot;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!v[i].is_zero()) {
        pivot = i;
        break;
      }
    if (!pivot) continue;
    const T inv = v[*pivot].inverse();
    for (auto& x : v)
      if (!x.is_zero()) x = (x * inv).normalized();
    for (std::size_t b = 0; b < out.basis.size(); ++b) {
      const T c = out.basis[b][*pivot];
      if (c.is_zero()) continue;
      for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) out.basis[b][i] = (out.basis[b][i] - c * v[i]).normalized();
    }
    out.basis.push_back(std::move(v));
    out.pivots.push_back(*pivot);
  }
  return out;
}

template <class T>
std::size_t rank(const Matrix<T>& m) {
  return column_echelon(m).basis.size();
}

} // namespace equilef

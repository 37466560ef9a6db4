#pragma once

// Dense matrices over a finite field: RREF, rank, null space, determinant.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "galproj/field.hpp"

namespace galproj {

class Matrix {
 public:
  Matrix() = default;
  Matrix(Field f, std::size_t rows, std::size_t cols) : f_(f), r_(rows), c_(cols), a_(rows * cols, f.zero()) {}

  static Matrix identity(Field f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
    return m;
  }

  Field field() const { return f_; }
  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  Fe& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const Fe& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  std::vector<Fe> row(std::size_t i) const { return {a_.begin() + i * c_, a_.begin() + (i + 1) * c_}; }

  Matrix operator*(const Matrix& o) const {
    if (c_ != o.r_) throw std::invalid_argument("matrix shape mismatch");
    Matrix m(f_, r_, o.c_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t l = 0; l < c_; ++l) {
        const Fe x = (*this)(i, l);
        if (x.is_zero()) continue;
        for (std::size_t j = 0; j < o.c_; ++j) m(i, j) += x * o(l, j);
      }
    return m;
  }

  /// In-place reduced row echelon form; returns the pivot columns.
  std::vector<std::size_t> rref() {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < c_ && row < r_; ++col) {
      std::size_t sel = row;
      while (sel < r_ && (*this)(sel, col).is_zero()) ++sel;
      if (sel == r_) continue;
      if (sel != row)
        for (std::size_t j = 0; j < c_; ++j) std::swap((*this)(sel, j), (*this)(row, j));
      const Fe inv = (*this)(row, col).inv();
      for (std::size_t j = col; j < c_; ++j) (*this)(row, j) *= inv;
      for (std::size_t i = 0; i < r_; ++i) {
        if (i == row) continue;
        const Fe fac = (*this)(i, col);
        if (fac.is_zero()) continue;
        for (std::size_t j = col; j < c_; ++j) (*this)(i, j) -= fac * (*this)(row, j);
      }
      pivots.push_back(col);
      ++row;
    }
    return pivots;
  }

  std::size_t rank() const {
    Matrix m = *this;
    return m.rref().size();
  }

  /// Basis of {v : M v = 0}, one vector per free column.
  std::vector<std::vector<Fe>> nullspace() const {
    Matrix m = *this;
    const auto piv = m.rref();
    std::vector<bool> is_piv(c_, false);
    for (auto p : piv) is_piv[p] = true;
    std::vector<std::vector<Fe>> basis;
    for (std::size_t free = 0; free < c_; ++free) {
      if (is_piv[free]) continue;
      std::vector<Fe> v(c_, f_.zero());
      v[free] = f_.one();
      for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -m(i, free);
      basis.push_back(std::move(v));
    }
    return basis;
  }

  Fe determinant() const {
    if (r_ != c_) throw std::invalid_argument("determinant of a non-square matrix");
    Matrix m = *this;
    Fe det = f_.one();
    for (std::size_t col = 0; col < c_; ++col) {
      std::size_t sel = col;
      while (sel < r_ && m(sel, col).is_zero()) ++sel;
      if (sel == r_) return f_.zero();
      if (sel != col) {
        for (std::size_t j = 0; j < c_; ++j) std::swap(m(sel, j), m(col, j));
        det = -det;
      }
      det *= m(col, col);
      const Fe inv = m(col, col).inv();
      for (std::size_t i = col + 1; i < r_; ++i) {
        const Fe fac = m(i, col) * inv;
        if (fac.is_zero()) continue;
        for (std::size_t j = col; j < c_; ++j) m(i, j) -= fac * m(col, j);
      }
    }
    return det;
  }

 private:
  Field f_;
  std::size_t r_ = 0, c_ = 0;
  std::vector<Fe> a_;
};

}  // namespace galproj

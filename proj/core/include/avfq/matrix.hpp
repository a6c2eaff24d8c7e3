#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "avfq/integer.hpp"

namespace avfq {

// Dense row-major matrix over an exact scalar type.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    if (rows.empty()) return Matrix();
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(a_.begin() + static_cast<long>(i * cols_),
                          a_.begin() + static_cast<long>((i + 1) * cols_));
  }
  void set_row(std::size_t i, const std::vector<T>& v) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
  }
  void append_row(const std::vector<T>& v) {
    if (rows_ == 0) cols_ = v.size();
    a_.insert(a_.end(), v.begin(), v.end());
    ++rows_;
  }
  void swap_rows(std::size_t i, std::size_t k) {
    if (i == k) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(i, j), (*this)(k, j));
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& x = a(i, k);
        if (x == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
      }
    return c;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

  const std::vector<T>& data() const { return a_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> a_;
};

using IntMat = Matrix<Int>;
using RatMat = Matrix<Rat>;

RatMat to_rat(const IntMat& m);

// Multiplies a row vector by a matrix: v * M.
std::vector<Rat> row_times(const std::vector<Rat>& v, const RatMat& m);
// M * v for a column vector v.
std::vector<Rat> times_col(const RatMat& m, const std::vector<Rat>& v);

Rat determinant(RatMat m);
Int determinant(const IntMat& m);

// Inverse over Q; empty when singular.
std::optional<RatMat> inverse(const RatMat& m);

// Solves M x = b over Q; empty when M is singular.
std::optional<std::vector<Rat>> solve(const RatMat& m, const std::vector<Rat>& b);

Rat trace(const RatMat& m);

// Characteristic polynomial det(X I - M), coefficients lowest degree first.
std::vector<Rat> charpoly_coeffs(const RatMat& m);

// Hermite normal form, row convention.
//
// Rows are generators. The result H = U * M has its nonzero rows first;
// they are in echelon form with strictly increasing pivot columns, every
// pivot is positive, and every entry above a pivot lies in [0, pivot).
// Two matrices have the same H exactly when their rows span the same
// Z-module, so lattice equality reduces to matrix equality.
struct HnfResult {
  IntMat h;
  IntMat u;  // unimodular, u * m == h
  std::size_t rank = 0;
};
HnfResult hermite_normal_form(const IntMat& m);

// Nonzero rows of the Hermite normal form only (no transform tracking).
IntMat hnf_basis(const IntMat& m);

// Same as hnf_basis for a full-rank lattice of dimension n that is known to
// contain modulus * Z^n. Intermediate entries are reduced modulo `modulus`.
IntMat hnf_basis_mod(const IntMat& m, const Int& modulus);

// Smith normal form invariant factors d_1 | d_2 | ... (all nonzero, positive).
struct SnfResult {
  std::vector<Int> invariants;
  std::size_t rank = 0;
};
SnfResult smith_normal_form(const IntMat& m);

std::string to_string(const IntMat& m);

}  // namespace avfq

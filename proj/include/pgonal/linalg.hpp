#pragma once

#include <vector>

#include "pgonal/errors.hpp"
#include "pgonal/numeric.hpp"

namespace pgonal {

/// Dense square matrix with exact integer entries, row major.
struct Matrix {
  int n = 0;
  std::vector<BigInt> a;

  Matrix() = default;
  explicit Matrix(int dim) : n(dim), a(static_cast<size_t>(dim) * dim) {}

  BigInt& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
  const BigInt& at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }

  static Matrix identity(int dim);
  Matrix transposed() const;
  Matrix operator*(const Matrix& rhs) const;
};

/// Exact determinant (fraction-free Bareiss elimination).
BigInt determinant(const Matrix& m);

/// Exact solve of m x = rhs over the rationals. Throws DomainError if singular.
std::vector<BigRat> solve_rational(const Matrix& m, const std::vector<BigInt>& rhs);

}  // namespace pgonal

#include "pgonal/linalg.hpp"

namespace pgonal {

Matrix Matrix::identity(int dim) {
  Matrix m(dim);
  for (int i = 0; i < dim; ++i) m.at(i, i) = 1;
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t.at(j, i) = at(i, j);
  return t;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  Matrix r(n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const BigInt& f = at(i, k);
      if (f == 0) continue;
      for (int j = 0; j < n; ++j) r.at(i, j) += f * rhs.at(k, j);
    }
  }
  return r;
}

BigInt determinant(const Matrix& m) {
  const int n = m.n;
  if (n == 0) return 1;
  Matrix w = m;
  BigInt prev = 1;
  int sign = 1;
  for (int col = 0; col < n - 1; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r) {
      if (w.at(r, col) != 0) {
        piv = r;
        break;
      }
    }
    if (piv < 0) return 0;
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(w.at(piv, j), w.at(col, j));
      sign = -sign;
    }
    for (int r = col + 1; r < n; ++r) {
      for (int j = col + 1; j < n; ++j) {
        w.at(r, j) = (w.at(col, col) * w.at(r, j) - w.at(r, col) * w.at(col, j)) / prev;
      }
      w.at(r, col) = 0;
    }
    prev = w.at(col, col);
  }
  return sign > 0 ? w.at(n - 1, n - 1) : -w.at(n - 1, n - 1);
}

std::vector<BigRat> solve_rational(const Matrix& m, const std::vector<BigInt>& rhs) {
  const int n = m.n;
  std::vector<std::vector<BigRat>> a(n, std::vector<BigRat>(n + 1));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[i][j] = BigRat(m.at(i, j));
    a[i][n] = BigRat(rhs[i]);
  }
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r) {
      if (a[r][col] != 0) {
        piv = r;
        break;
      }
    }
    if (piv < 0) throw DomainError("solve_rational: singular matrix");
    std::swap(a[piv], a[col]);
    BigRat inv = a[col][col];
    for (int j = col; j <= n; ++j) a[col][j] /= inv;
    for (int r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      BigRat f = a[r][col];
      for (int j = col; j <= n; ++j) a[r][j] -= f * a[col][j];
    }
  }
  std::vector<BigRat> x(n);
  for (int i = 0; i < n; ++i) x[i] = a[i][n];
  return x;
}

}  // namespace pgonal

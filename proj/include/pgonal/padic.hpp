#pragma once

#include <array>
#include <climits>
#include <vector>

#include "pgonal/errors.hpp"
#include "pgonal/linalg.hpp"
#include "pgonal/numeric.hpp"

namespace pgonal {

/// Sentinel valuation of 0.
inline constexpr int kOrdInfinity = INT_MAX;

/// Finite-precision Z_p arithmetic context: residues mod p^e plus exact
/// valuation bookkeeping.
struct PAdicContext {
  long long p = 2;
  int e = 1;

  PAdicContext(long long prime, int precision);
  BigInt modulus() const;
};

/// Symmetric integer Gram matrix.
class GramMatrix {
 public:
  explicit GramMatrix(int dim);
  static GramMatrix from_rows(const std::vector<std::vector<long long>>& rows);
  static GramMatrix from_matrix(const Matrix& m);

  int dim() const { return mat_.n; }
  const BigInt& at(int i, int j) const { return mat_.at(i, j); }
  void set(int i, int j, const BigInt& v);  // keeps symmetry
  const Matrix& matrix() const { return mat_; }
  BigInt det() const { return determinant(mat_); }

 private:
  Matrix mat_;
};

/// p^scale times a unimodular block of dimension 1 or 2.
struct JordanBlock {
  int scale = 0;
  int dim = 1;
  std::array<BigInt, 4> unit;  // row major; dim==1 uses unit[0]

  BigInt det() const { return dim == 1 ? unit[0] : unit[0] * unit[3] - unit[1] * unit[2]; }
};

struct JordanDecomposition {
  Matrix transform;                 // unimodular mod p^e
  std::vector<JordanBlock> blocks;  // nondecreasing scales
};

struct SquareClass {
  long long p = 2;
  long long representative = 1;  // unit class mod p (odd p: 1 or least nonresidue); mod 8 at p=2
  int valuation_parity = 0;

  friend bool operator==(const SquareClass&, const SquareClass&) = default;
};

int ord(long long p, const BigInt& x);
int ord(long long p, const BigRat& x);
int ord(long long p, long long x);

/// Square class of a p-adic unit. DomainError when ord_p(u) != 0.
SquareClass square_class(long long p, const BigInt& u);

/// Square class of any nonzero value: valuation parity plus unit-part class.
SquareClass square_class_of(long long p, const BigInt& x);

/// Jordan splitting of G over Z_p at precision ctx.e:
/// transform^T G transform = blockdiag(p^v_i U_i) mod p^e.
JordanDecomposition jordan_decompose(const GramMatrix& g, const PAdicContext& ctx);

/// Decides sum b_i y_i^2 = c over Z_p. Odd p: exact scale-stratified
/// recursion. p = 2: lifting search on the diagonal equation.
bool diag_represents(long long p, const std::vector<BigInt>& coeffs, const BigInt& c);

/// Integer quadratic polynomial in num_vars variables:
/// sum_{i<=j} quad[pack(i,j)] x_i x_j + sum linear[i] x_i + constant.
struct QuadraticPoly {
  int num_vars = 0;
  std::vector<BigInt> quad;  // packed upper triangle, size t(t+1)/2
  std::vector<BigInt> linear;
  BigInt constant = 0;

  explicit QuadraticPoly(int t);
  static QuadraticPoly diagonal(const std::vector<BigInt>& coeffs, const BigInt& c);

  int pack(int i, int j) const;  // requires i <= j
  BigInt& quad_at(int i, int j);
  const BigInt& quad_at(int i, int j) const;

  BigInt eval(const std::vector<BigInt>& y) const;
  std::vector<BigInt> gradient(const std::vector<BigInt>& y) const;
};

/// Decides Q(y) = 0 over Z_p by breadth-first lifting with the Hensel
/// certificate 2 ord_p(grad) < j. Raises PrecisionError past cap.
bool poly_equation_solvable(long long p, const QuadraticPoly& q, int cap);

/// Default lifting cap for a decider on Q = 0 over Z_p.
int default_lifting_cap(long long p, const QuadraticPoly& q);

}  // namespace pgonal

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "pgonal/padic.hpp"

using namespace pgonal;

namespace {

GramMatrix random_gram(std::mt19937_64& rng, int dim) {
  for (;;) {
    GramMatrix g(dim);
    for (int i = 0; i < dim; ++i)
      for (int j = i; j < dim; ++j)
        g.set(i, j, static_cast<long long>(rng() % 101) - 50);
    if (g.det() != 0) return g;
  }
}

void check_jordan(const GramMatrix& g, long long p) {
  const BigInt det = g.det();
  const PAdicContext ctx(p, 2 * ord(p, det) + 6);
  const JordanDecomposition jd = jordan_decompose(g, ctx);
  const BigInt pe = ctx.modulus();

  // transform is unimodular
  CHECK(determinant(jd.transform) % p != 0);

  // congruence with the block diagonal
  const int n = g.dim();
  Matrix d(n);
  int pos = 0;
  int prev_scale = 0;
  BigInt block_det = 1;
  for (const JordanBlock& b : jd.blocks) {
    CHECK(b.scale >= prev_scale);
    prev_scale = b.scale;
    if (p != 2) CHECK(b.dim == 1);
    BigInt pv = 1;
    for (int i = 0; i < b.scale; ++i) pv *= p;
    for (int i = 0; i < b.dim; ++i)
      for (int j = 0; j < b.dim; ++j) d.at(pos + i, pos + j) = pv * b.unit[i * b.dim + j];
    CHECK(ord(p, b.det()) == 0);
    block_det *= b.det() * pv * (b.dim == 2 ? pv : 1);
    pos += b.dim;
  }
  CHECK(pos == n);
  const Matrix lhs = jd.transform.transposed() * g.matrix() * jd.transform;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) CHECK((lhs.at(i, j) - d.at(i, j)) % pe == 0);

  // determinant preserved up to a unit square
  CHECK(ord(p, det) == ord(p, block_det));
  CHECK(square_class_of(p, det) == square_class_of(p, block_det));
}

}  // namespace

TEST_CASE("valuations") {
  CHECK(ord(2, BigInt(288)) == 5);
  CHECK(ord(3, BigRat(1, 9)) == -2);
  CHECK(ord(5, BigInt(7)) == 0);
  CHECK(ord(7, BigInt(0)) == kOrdInfinity);
  CHECK(ord(3, BigRat(6, 7)) == 1);
  CHECK_THROWS_AS(ord(6, BigInt(12)), DomainError);
}

TEST_CASE("square classes") {
  CHECK(square_class(2, BigInt(17)).representative == 1);
  CHECK(square_class(2, BigInt(7)).representative == 7);
  // squares mod 7 are {1, 2, 4}: 2 is a residue
  CHECK(square_class(7, BigInt(2)) == square_class(7, BigInt(1)));
  CHECK(square_class(7, BigInt(3)) != square_class(7, BigInt(1)));
  CHECK_THROWS_AS(square_class(5, BigInt(10)), DomainError);

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const long long p = std::vector<long long>{2, 3, 5, 7, 11}[rng() % 5];
    BigInt u = static_cast<long long>(rng() % 1000) + 1;
    while (u % p == 0) ++u;
    BigInt w = static_cast<long long>(rng() % 50) + 1;
    while (w % p == 0) ++w;
    CHECK(square_class(p, u * w * w) == square_class(p, u));
  }
}

TEST_CASE("context validation") {
  CHECK_THROWS_AS(PAdicContext(4, 3), DomainError);
  CHECK_THROWS_AS(PAdicContext(5, 0), DomainError);
}

TEST_CASE("jordan examples") {
  // diag(1, 3, 9) at p = 3 is already split
  GramMatrix g = GramMatrix::from_rows({{1, 0, 0}, {0, 3, 0}, {0, 0, 9}});
  JordanDecomposition jd = jordan_decompose(g, PAdicContext(3, 11));
  REQUIRE(jd.blocks.size() == 3);
  CHECK(jd.blocks[0].scale == 0);
  CHECK(jd.blocks[1].scale == 1);
  CHECK(jd.blocks[2].scale == 2);

  // hyperbolic-type plane stays a dimension-2 block at p = 2
  g = GramMatrix::from_rows({{0, 1}, {1, 0}});
  jd = jordan_decompose(g, PAdicContext(2, 8));
  REQUIRE(jd.blocks.size() == 1);
  CHECK(jd.blocks[0].dim == 2);
  CHECK(jd.blocks[0].scale == 0);

  // I + J (diag 2, off-diag 1) at p = 5: single unimodular group, det class 6
  GramMatrix ij(5);
  for (int i = 0; i < 5; ++i)
    for (int j = i; j < 5; ++j) ij.set(i, j, i == j ? 2 : 1);
  CHECK(ij.det() == 6);
  jd = jordan_decompose(ij, PAdicContext(5, 8));
  BigInt bd = 1;
  for (const JordanBlock& b : jd.blocks) {
    CHECK(b.scale == 0);
    bd *= b.det();
  }
  CHECK(square_class_of(5, bd) == square_class_of(5, BigInt(6)));

  CHECK_THROWS_AS(jordan_decompose(ij, PAdicContext(5, 3)), PrecisionError);
  GramMatrix sing = GramMatrix::from_rows({{1, 1}, {1, 1}});
  CHECK_THROWS_AS(jordan_decompose(sing, PAdicContext(3, 9)), DomainError);
}

TEST_CASE("jordan on random matrices") {
  std::mt19937_64 rng(11);
  const long long primes[] = {2, 3, 5, 7};
  for (int trial = 0; trial < 80; ++trial) {
    const int dim = 1 + static_cast<int>(rng() % 6);
    check_jordan(random_gram(rng, dim), primes[trial % 4]);
  }
}

TEST_CASE("diag_represents examples") {
  CHECK_FALSE(diag_represents(3, {BigInt(1), BigInt(1)}, BigInt(3)));
  CHECK(diag_represents(2, {BigInt(1), BigInt(1), BigInt(1), BigInt(1)}, BigInt(7)));
  CHECK(diag_represents(5, {BigInt(2), BigInt(10)}, BigInt(0)));
  CHECK_THROWS_AS(diag_represents(3, {BigInt(0)}, BigInt(1)), DomainError);
  CHECK_THROWS_AS(diag_represents(3, {}, BigInt(1)), DomainError);
}

TEST_CASE("diag_represents scaling invariance") {
  std::mt19937_64 rng(13);
  const long long primes[] = {2, 3, 5};
  for (int trial = 0; trial < 150; ++trial) {
    const long long p = primes[trial % 3];
    const int t = 1 + static_cast<int>(rng() % 3);
    std::vector<BigInt> bs(t);
    for (auto& b : bs) b = static_cast<long long>(rng() % 40) + 1;
    BigInt c = static_cast<long long>(rng() % 300) - 50;
    BigInt w = static_cast<long long>(rng() % 9) + 1;
    while (w % p == 0) ++w;
    std::vector<BigInt> scaled = bs;
    for (auto& b : scaled) b *= w * w;
    CHECK(diag_represents(p, bs, c) == diag_represents(p, scaled, c * w * w));
  }
}

TEST_CASE("odd p: enough units make the form universal") {
  std::mt19937_64 rng(17);
  const long long primes[] = {3, 5, 7};
  for (int trial = 0; trial < 120; ++trial) {
    const long long p = primes[trial % 3];
    const int t = 4 + static_cast<int>(rng() % 3);
    std::vector<BigInt> bs(t);
    for (auto& b : bs) {
      b = static_cast<long long>(rng() % 60) + 1;
      while (b % p == 0) ++b;
    }
    const BigInt c = static_cast<long long>(rng() % 4000) - 1000;
    CHECK(diag_represents(p, bs, c));
  }
}

TEST_CASE("diag_represents agrees with the naive lifting oracle") {
  std::mt19937_64 rng(19);
  const long long primes[] = {2, 3, 5};
  int decided = 0;
  while (decided < 240) {
    const long long p = primes[decided % 3];
    const int t = 1 + static_cast<int>(rng() % 3);
    std::vector<BigInt> bs(t);
    for (auto& b : bs) {
      int scale = static_cast<int>(rng() % 3);
      b = static_cast<long long>(rng() % 8) + 1;
      for (int i = 0; i < scale; ++i) b *= p;
    }
    const BigInt c = static_cast<long long>(rng() % 500) - 100;
    auto oracle = testing::naive_poly_solvable(p, QuadraticPoly::diagonal(bs, c), 5);
    if (!oracle) continue;
    CHECK(diag_represents(p, bs, c) == *oracle);
    ++decided;
  }
}

TEST_CASE("poly_equation_solvable examples") {
  QuadraticPoly q(1);
  q.quad_at(0, 0) = 1;
  q.constant = -6;
  CHECK(poly_equation_solvable(5, q, 6));

  q.constant = -3;
  CHECK_FALSE(poly_equation_solvable(3, q, 6));

  q.constant = -17;
  CHECK(poly_equation_solvable(2, q, 8));

  // deep power: cap too small is an error, a proper cap decides
  q.constant = -(BigInt(1) << 20);
  CHECK_THROWS_AS(poly_equation_solvable(2, q, 5), PrecisionError);
  CHECK(poly_equation_solvable(2, q, default_lifting_cap(2, q)));

  q.constant = -3 * (BigInt(1) << 20);
  CHECK_FALSE(poly_equation_solvable(2, q, default_lifting_cap(2, q)));
}

TEST_CASE("singular vertex solutions are found") {
  // 5(x - 3)^2 + 5(y - 4)^2 = 0 has only the singular solution (3, 4)
  QuadraticPoly q(2);
  q.quad_at(0, 0) = 5;
  q.quad_at(1, 1) = 5;
  q.linear[0] = -30;
  q.linear[1] = -40;
  q.constant = 125;
  CHECK(poly_equation_solvable(5, q, 10));
  // shifting the target off the vertex breaks solvability over Z_5
  q.constant = 125 + 5;
  CHECK_FALSE(poly_equation_solvable(5, q, 12));
}

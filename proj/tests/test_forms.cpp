#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "pgonal/forms.hpp"

using namespace pgonal;

TEST_CASE("polygonal numbers") {
  CHECK(polygonal_number(4, -7) == 49);
  CHECK(polygonal_number(9, 0) == 0);
  CHECK(polygonal_number(9, 1) == 1);
  CHECK(polygonal_number(6, 4) == 28);
  CHECK(polygonal_number(12, -1) == 9);
  CHECK_THROWS_AS(polygonal_number(2, 5), DomainError);
}

TEST_CASE("polygonal numbers are nonnegative, squares at m=4") {
  for (int m = 3; m <= 40; ++m) {
    for (long long x = -200; x <= 200; ++x) {
      const long long v = polygonal_number(m, x);
      CHECK(v >= 0);
      if (m == 4) CHECK(v == x * x);
    }
  }
}

TEST_CASE("form validation") {
  CHECK_THROWS_AS(MgonalForm(2, {1, 1}), DomainError);
  CHECK_THROWS_AS(MgonalForm(5, {2, 4}), DomainError);   // not primitive
  CHECK_THROWS_AS(MgonalForm(5, {1, 0}), DomainError);   // nonpositive weight
  CHECK_THROWS_AS(MgonalForm(5, {}), DomainError);
  CHECK(MgonalForm(5, {2, 3}).coeff_sum() == 5);
}

TEST_CASE("evaluate") {
  const MgonalForm f12(12, {1, 1, 1, 1, 1, 1});
  CHECK(evaluate(f12, {3, 2, 0, 0, 0, 0}) == 45);
  CHECK(evaluate(f12, {0, 0, 0, 0, 0, 0}) == 0);
  CHECK(evaluate(MgonalForm(5, {2, 3}), {1, 1}) == 5);
  CHECK_THROWS_AS(evaluate(f12, {1, 2}), DomainError);
}

TEST_CASE("congruence and transform identities on random tuples") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 2000; ++trial) {
    const int m = 3 + static_cast<int>(rng() % 38);
    const int n = 1 + static_cast<int>(rng() % 8);
    std::vector<long long> coeffs(n);
    std::vector<long long> xs(n);
    coeffs[0] = 1;  // primitivity
    for (int i = 1; i < n; ++i) coeffs[i] = 1 + static_cast<long long>(rng() % 9);
    for (int i = 0; i < n; ++i) xs[i] = static_cast<long long>(rng() % 201) - 100;
    const MgonalForm form(m, coeffs);
    const long long f = evaluate(form, xs);

    __int128 lin = 0, s = 0, rhs = 0;
    for (int i = 0; i < n; ++i) {
      lin += static_cast<__int128>(coeffs[i]) * xs[i];
      s += coeffs[i];
      const __int128 t = static_cast<__int128>(2) * (m - 2) * xs[i] - (m - 4);
      rhs += static_cast<__int128>(coeffs[i]) * t * t;
    }
    CHECK(((f - lin) % (m - 2)) == 0);
    CHECK(static_cast<__int128>(8) * (m - 2) * f + s * (m - 4) * (m - 4) == rhs);
  }
}

TEST_CASE("decompose") {
  auto t = decompose(7, 23);
  CHECK(t.a == 4);
  CHECK(t.b == 3);
  t = decompose(3, 17);
  CHECK(t.a == 17);
  CHECK(t.b == 0);
  t = decompose(12, 45);
  CHECK(t.a == 4);
  CHECK(t.b == 5);
  CHECK_THROWS_AS(decompose(12, -1), DomainError);
  for (int m = 3; m <= 20; ++m) {
    for (long long n = 0; n <= 200; ++n) {
      t = decompose(m, n);
      CHECK(t.a * (m - 2) + t.b == n);
      CHECK(t.b >= 0);
      CHECK(t.b <= m - 3);
    }
  }
}

TEST_CASE("represents") {
  const MgonalForm f12(12, {1, 1, 1, 1, 1, 1});
  auto w = represents(f12, 45);
  REQUIRE(w.has_value());
  CHECK(evaluate(f12, w->xs) == 45);

  w = represents(f12, 0);
  REQUIRE(w.has_value());
  CHECK(w->xs == std::vector<long long>(6, 0));

  const MgonalForm squares(4, {1, 1, 1, 1});
  w = represents(squares, 7);
  REQUIRE(w.has_value());
  CHECK(w->xs == std::vector<long long>{2, 1, 1, 1});

  CHECK_FALSE(represents(f12, -3).has_value());
  CHECK_FALSE(represents(MgonalForm(30, {1, 1, 1, 1, 1, 1}), 14).has_value());
}

TEST_CASE("witnesses evaluate back on random instances") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 60; ++trial) {
    const int m = 3 + static_cast<int>(rng() % 14);
    const int n = 1 + static_cast<int>(rng() % 6);
    std::vector<long long> coeffs(n, 1);
    for (int i = 1; i < n; ++i) coeffs[i] = 1 + static_cast<long long>(rng() % 5);
    const MgonalForm form(m, coeffs);
    const long long target = static_cast<long long>(rng() % 500);
    auto w = represents(form, target);
    if (w) CHECK(evaluate(form, w->xs) == target);
  }
}

TEST_CASE("cs_admissible") {
  const MgonalForm f12(12, {1, 1, 1, 1, 1, 1});
  CHECK(cs_admissible(f12, 45));
  CHECK(cs_admissible(f12, 0));
  const MgonalForm f30(30, {1, 1, 1, 1, 1, 1});
  CHECK_FALSE(cs_admissible(f30, 14));
  CHECK_FALSE(represents(f30, 14).has_value());
  CHECK_FALSE(cs_admissible(f12, -5));
}

TEST_CASE("represented implies admissible") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 25; ++trial) {
    const int m = 5 + static_cast<int>(rng() % 12);
    std::vector<long long> coeffs(6, 1);
    for (int i = 1; i < 6; ++i) coeffs[i] = 1 + static_cast<long long>(rng() % 4);
    const MgonalForm form(m, coeffs);
    const RepresentableSet rset(form, 400);
    for (long long n = 0; n <= 400; ++n) {
      if (rset.contains(n)) CHECK(cs_admissible(form, n));
    }
  }
}

TEST_CASE("representable set matches per-call represents") {
  const MgonalForm form(7, {1, 2, 3});
  const RepresentableSet rset(form, 300);
  for (long long n = 0; n <= 300; ++n) {
    auto w = represents(form, n);
    CHECK(rset.contains(n) == w.has_value());
    if (w) CHECK(evaluate(form, w->xs) == n);
    auto via_set = rset.witness(n);
    if (via_set) CHECK(evaluate(form, via_set->xs) == n);
    CHECK(via_set.has_value() == w.has_value());
  }
}

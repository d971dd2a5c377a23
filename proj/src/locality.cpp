#include "pgonal/locality.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace pgonal {

namespace {

BigInt pow_big(long long p, int e) {
  BigInt r = 1;
  for (int i = 0; i < e; ++i) r *= p;
  return r;
}

int units_count(const MgonalForm& form, long long p) {
  int c = 0;
  for (long long a : form.coeffs)
    if (a % p != 0) ++c;
  return c;
}

std::vector<long long> coefficient_primes(const MgonalForm& form) {
  std::set<long long> ps;
  for (long long a : form.coeffs)
    for (auto& [p, e] : factorize(a)) ps.insert(p);
  return {ps.begin(), ps.end()};
}

BigInt reduced_det_closed_form(long long pivot, const std::vector<long long>& rest,
                               const BigInt& coeff_sum) {
  BigInt d = 1;
  for (size_t i = 0; i + 1 < rest.size(); ++i) d *= pivot;  // pivot^(n-2)
  for (long long a : rest) d *= a;
  return d * coeff_sum;
}

GramMatrix sub_gram(long long pivot, const std::vector<long long>& rest) {
  const int t = static_cast<int>(rest.size());
  GramMatrix g(t);
  for (int i = 0; i < t; ++i)
    for (int j = i; j < t; ++j) {
      BigInt v = BigInt(rest[i]) * rest[j];
      if (i == j) v += BigInt(pivot) * rest[i];
      g.set(i, j, v);
    }
  return g;
}

// inverse of a unimodular matrix mod p^e
Matrix invert_mod(const Matrix& m, long long p, const BigInt& pe) {
  const int n = m.n;
  Matrix a = m;
  Matrix inv = Matrix::identity(n);
  auto red = [&](const BigInt& x) {
    BigInt r = x % pe;
    if (r < 0) r += pe;
    return r;
  };
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r) {
      if (a.at(r, col) % p != 0) {
        piv = r;
        break;
      }
    }
    if (piv < 0) throw DomainError("invert_mod: matrix not unimodular");
    for (int j = 0; j < n; ++j) {
      std::swap(a.at(piv, j), a.at(col, j));
      std::swap(inv.at(piv, j), inv.at(col, j));
    }
    // scale row to make pivot 1
    BigInt u = a.at(col, col) % pe;
    if (u < 0) u += pe;
    BigInt r0 = pe, r1 = u, s0 = 0, s1 = 1;
    while (r1 != 0) {
      BigInt q = r0 / r1;
      r0 -= q * r1;
      std::swap(r0, r1);
      s0 -= q * s1;
      std::swap(s0, s1);
    }
    BigInt ui = red(s0);
    for (int j = 0; j < n; ++j) {
      a.at(col, j) = red(a.at(col, j) * ui);
      inv.at(col, j) = red(inv.at(col, j) * ui);
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      BigInt f = a.at(r, col);
      if (f == 0) continue;
      for (int j = 0; j < n; ++j) {
        a.at(r, j) = red(a.at(r, j) - f * a.at(col, j));
        inv.at(r, j) = red(inv.at(r, j) - f * inv.at(col, j));
      }
    }
  }
  return inv;
}

// Z_p solvability of the system for fixed k, odd p: Jordan-diagonalize the
// pivot reduction, then the shifted-coset analysis. Coordinates with
// non-integral shift contribute full subgroups p^w Z_p; the rest reduce to
// plain diagonal representation.
bool system_solvable_odd(const MgonalForm& form, long long pivot,
                         const std::vector<long long>& rest, const BigInt& beta,
                         const BigInt& s2, long long p) {
  const BigInt s = form.coeff_sum();
  const BigRat cprime = BigRat(BigInt(pivot) * (s2 * s - beta * beta), s);
  const int t = static_cast<int>(rest.size());

  const BigInt dred = reduced_det_closed_form(pivot, rest, s);
  const int e = 2 * ord(p, dred) + 8;
  const BigInt pe = pow_big(p, e);

  JordanDecomposition jd = jordan_decompose(sub_gram(pivot, rest), PAdicContext(p, e));
  Matrix tinv = invert_mod(jd.transform, p, pe);

  // shift s_i = beta * (T^-1 r)_i with r = (1/s,...,1/s)
  const int vbeta = (beta == 0) ? kOrdInfinity : ord(p, beta);
  const int vs = ord(p, s);
  std::vector<BigInt> integral_part;  // diagonal entries with integral shift
  BigRat shifted_sum = 0;
  int w = kOrdInfinity;
  bool has_nonintegral = false;
  for (int i = 0; i < t; ++i) {
    BigInt num = 0;
    for (int j = 0; j < t; ++j) num += tinv.at(i, j);
    num %= pe;
    if (num < 0) num += pe;
    const BigInt di = jd.blocks[i].unit[0] * pow_big(p, jd.blocks[i].scale);
    const int vnum = (num == 0) ? e : ord(p, num);
    const int vsi = (vbeta == kOrdInfinity) ? kOrdInfinity : vbeta + vnum - vs;
    if (vsi < 0) {
      has_nonintegral = true;
      BigRat si = BigRat(beta * num, s);
      shifted_sum += BigRat(di) * si * si;
      w = std::min(w, ord(p, di) + vsi);
    } else {
      integral_part.push_back(di);
    }
  }
  const BigRat remainder = cprime - shifted_sum;
  if (remainder == 0) return true;
  if (has_nonintegral) {
    const int vr = ord(p, remainder);
    if (vr >= w) return true;
  }
  if (integral_part.empty()) return false;
  const BigInt cint = numerator(remainder) * denominator(remainder);
  return diag_represents(p, integral_part, cint);
}

QuadraticPoly system_poly(long long pivot, const std::vector<long long>& rest,
                          const BigInt& beta, const BigInt& s2) {
  const int t = static_cast<int>(rest.size());
  QuadraticPoly q(t);
  for (int i = 0; i < t; ++i) {
    q.quad_at(i, i) = BigInt(rest[i]) * rest[i] + BigInt(pivot) * rest[i];
    q.linear[i] = -2 * beta * rest[i];
    for (int j = i + 1; j < t; ++j) q.quad_at(i, j) = 2 * BigInt(rest[i]) * rest[j];
  }
  q.constant = beta * beta - BigInt(pivot) * s2;
  return q;
}

}  // namespace

const char* to_string(LocalReason reason) {
  switch (reason) {
    case LocalReason::kUniversalByM:
      return "universal-by-m";
    case LocalReason::kDiagonalTest:
      return "diagonal-test";
    case LocalReason::kUnitCountShortcut:
      return "unit-count-shortcut";
  }
  return "unknown";
}

ReducedQuadraticData reduced_data(const MgonalForm& form) {
  const int n = form.rank();
  if (n < 2) throw DomainError("reduced_data: rank must be >= 2");
  const long long pivot = form.coeffs[0];
  const std::vector<long long> rest(form.coeffs.begin() + 1, form.coeffs.end());
  const BigInt s = form.coeff_sum();

  ReducedQuadraticData out{sub_gram(pivot, rest), 0, {}, 0};
  out.det = determinant(out.gram.matrix());
  std::vector<BigInt> rhs(rest.begin(), rest.end());
  out.shift = solve_rational(out.gram.matrix(), rhs);
  BigRat weighted = 0;
  for (size_t i = 0; i < rest.size(); ++i) weighted += BigRat(rest[i]) * out.shift[i];
  out.scalar = BigRat(1) - weighted;

  // closed forms are exact; a mismatch means a broken solver
  if (out.det != reduced_det_closed_form(pivot, rest, s))
    throw std::logic_error("reduced_data: determinant closed form mismatch");
  for (const BigRat& r : out.shift)
    if (r != BigRat(1, s)) throw std::logic_error("reduced_data: shift closed form mismatch");
  if (out.scalar != BigRat(pivot, s))
    throw std::logic_error("reduced_data: scalar closed form mismatch");
  return out;
}

LocalVerdict local_represents_at(const MgonalForm& form, long long n, long long p) {
  if (!is_prime(p)) throw DomainError("local_represents_at: p must be prime");
  LocalVerdict v;
  v.p = p;
  const int m = form.m;
  if (p != 2 && (m - 2) % p == 0) {
    v.representable = true;
    v.reason = LocalReason::kUniversalByM;
    return v;
  }
  if (p == 2 && m % 4 != 0) {
    v.representable = true;
    v.reason = LocalReason::kUniversalByM;
    return v;
  }
  if (p != 2) {
    if (units_count(form, p) >= 4) {
      v.representable = true;
      v.reason = LocalReason::kUnitCountShortcut;
      return v;
    }
    std::vector<BigInt> coeffs(form.coeffs.begin(), form.coeffs.end());
    const BigInt c = 8 * BigInt(m - 2) * n + BigInt(form.coeff_sum()) * (m - 4) * (m - 4);
    v.representable = diag_represents(p, coeffs, c);
    v.reason = LocalReason::kDiagonalTest;
    return v;
  }
  // p = 2, m = 0 mod 4
  std::vector<BigInt> coeffs(form.coeffs.begin(), form.coeffs.end());
  const long long half = (m - 4) / 2;
  const BigInt c = 2 * BigInt(m - 2) * n + BigInt(form.coeff_sum()) * half * half;
  v.representable = diag_represents(2, coeffs, c);
  v.reason = LocalReason::kDiagonalTest;
  return v;
}

bool locally_represented(const MgonalForm& form, long long n) {
  if (n < 0) return false;
  if (!local_represents_at(form, n, 2).representable) return false;
  for (long long p : coefficient_primes(form)) {
    if (p == 2) continue;
    if ((form.m - 2) % p == 0) continue;
    if (units_count(form, p) >= 4) continue;
    if (!local_represents_at(form, n, p).representable) return false;
  }
  return true;
}

bool system_locally_solvable(const MgonalForm& form, long long a, long long b,
                             const BigInt& k, long long p) {
  if (form.rank() < 2) throw DomainError("system_locally_solvable: rank must be >= 2");
  if (!is_prime(p)) throw DomainError("system_locally_solvable: p must be prime");
  if (b < 0 || b > form.m - 3)
    throw DomainError("system_locally_solvable: (A, B) is not a valid decomposition");

  // pivot on a coefficient that is a unit at p; the single-equation reduction
  // is equivalent to the system only for a unit pivot
  int pivot_idx = -1;
  for (int i = 0; i < form.rank(); ++i) {
    if (form.coeffs[i] % p != 0) {
      pivot_idx = i;
      break;
    }
  }
  if (pivot_idx < 0) throw std::logic_error("system_locally_solvable: no unit pivot");
  const long long pivot = form.coeffs[pivot_idx];
  std::vector<long long> rest;
  rest.reserve(form.coeffs.size() - 1);
  for (int i = 0; i < form.rank(); ++i)
    if (i != pivot_idx) rest.push_back(form.coeffs[i]);

  const BigInt beta = BigInt(b) + k * (form.m - 2);
  const BigInt s2 = BigInt(2) * a + b + k * (form.m - 4);

  if (p != 2) return system_solvable_odd(form, pivot, rest, beta, s2, p);

  QuadraticPoly q = system_poly(pivot, rest, beta, s2);
  if (q.constant == 0) return true;
  return poly_equation_solvable(2, q, default_lifting_cap(2, q));
}

bool guaranteed_any_k(const MgonalForm& form, long long p) {
  if (p == 2 || !is_prime(p)) throw DomainError("guaranteed_any_k: p must be an odd prime");
  return units_count(form, p) >= 5;
}

KBudget k_budget(const MgonalForm& form) {
  if (form.rank() < 6) throw DomainError("k_budget: rank must be >= 6");
  const BigInt d = reduced_data(form).det;
  KBudget out;
  for (long long p : coefficient_primes(form)) {
    if (p == 2) continue;
    if (units_count(form, p) < 5) out.odd_primes.push_back(p);
  }
  std::vector<long long> ps = {2};
  ps.insert(ps.end(), out.odd_primes.begin(), out.odd_primes.end());
  out.budget = 1;
  const BigInt dd8 = 8 * d * d;
  for (long long p : ps) {
    int e = ord(p, dd8);
    for (long long a : form.coeffs) e = std::max(e, ord(p, BigInt(2) * a));
    out.exponents[p] = e;
    out.budget *= pow_big(p, e);
  }
  return out;
}

std::optional<BigInt> find_k(const MgonalForm& form, long long a, long long b) {
  const KBudget kb = k_budget(form);
  const __int128 n_wide = static_cast<__int128>(a) * (form.m - 2) + b;
  if (n_wide > INT64_MAX || n_wide < INT64_MIN)
    throw DomainError("find_k: N out of range");
  const long long n = static_cast<long long>(n_wide);
  if (!locally_represented(form, n))
    throw DomainError("find_k: N is not locally represented by the form");

  std::vector<long long> ps = {2};
  ps.insert(ps.end(), kb.odd_primes.begin(), kb.odd_primes.end());
  for (BigInt k = 0; k < kb.budget; ++k) {
    bool ok = true;
    for (long long p : ps) {
      if (!system_locally_solvable(form, a, b, k, p)) {
        ok = false;
        break;
      }
    }
    if (ok) return k;
  }
  return std::nullopt;
}

BigInt k_period_modulus(const MgonalForm& form, long long p) {
  if (!is_prime(p)) throw DomainError("k_period_modulus: p must be prime");
  auto max_coeff_ord = [&]() {
    int e = 0;
    for (long long a : form.coeffs) e = std::max(e, ord(p, BigInt(a)));
    return e;
  };
  if (p != 2) {
    if ((form.m - 2) % p == 0) return pow_big(p, max_coeff_ord());
    const BigInt d = reduced_data(form).det;
    return pow_big(p, 2 * ord(p, d));
  }
  if (form.m % 4 == 0) {
    const BigInt d = reduced_data(form).det;
    return 8 * pow_big(2, 2 * ord(2, d));
  }
  return 2 * pow_big(2, max_coeff_ord());
}

bool k_period_check(const MgonalForm& form, long long a, long long b, long long p,
                    const BigInt& k, int trials) {
  if (!system_locally_solvable(form, a, b, k, p))
    throw DomainError("k_period_check: system must be solvable at the base k");
  const BigInt m = k_period_modulus(form, p);
  for (int t = 1; t <= trials; ++t) {
    if (!system_locally_solvable(form, a, b, k + t * m, p)) return false;
  }
  return true;
}

}  // namespace pgonal

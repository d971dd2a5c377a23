#pragma once

// Test-side oracles, kept independent of the production decision paths:
// plain full-residue lifting with no state truncation and no vertex analysis.

#include <optional>
#include <set>
#include <vector>

#include "pgonal/forms.hpp"
#include "pgonal/padic.hpp"

namespace pgonal::testing {

// Exhaustive congruence search mod p^j with the 2v < j certificate.
// nullopt = indeterminate (depth or state budget exhausted).
inline std::optional<bool> naive_poly_solvable(long long p, const QuadraticPoly& q,
                                               int jmax, size_t max_states = 300000) {
  const int t = q.num_vars;
  if (q.constant == 0) return true;
  std::set<std::vector<long long>> states;
  states.insert(std::vector<long long>(t, 0));
  BigInt pj = 1;
  for (int j = 0; j < jmax; ++j) {
    const BigInt pj1 = pj * p;
    std::set<std::vector<long long>> next;
    long long fan = 1;
    for (int i = 0; i < t; ++i) fan *= p;
    for (const auto& y : states) {
      for (long long d = 0; d < fan; ++d) {
        std::vector<BigInt> yy(t);
        std::vector<long long> key(t);
        long long dd = d;
        for (int i = 0; i < t; ++i) {
          key[i] = y[i] + static_cast<long long>(pj) * (dd % p);
          yy[i] = key[i];
          dd /= p;
        }
        if (q.eval(yy) % pj1 != 0) continue;
        int v = 1000;
        for (const BigInt& g : q.gradient(yy)) {
          if (g != 0) v = std::min(v, ord(p, g));
        }
        if (2 * v < j + 1) return true;
        next.insert(std::move(key));
        if (next.size() > max_states) return std::nullopt;
      }
    }
    if (next.empty()) return false;
    states = std::move(next);
    pj = pj1;
  }
  return std::nullopt;
}

// 2 F_m(x) - 2N as an integer quadratic polynomial; same Z_p solutions as
// F_m(x) = N.
inline QuadraticPoly doubled_form_poly(const MgonalForm& form, long long n) {
  QuadraticPoly q(form.rank());
  for (int i = 0; i < form.rank(); ++i) {
    q.quad_at(i, i) = BigInt(form.coeffs[i]) * (form.m - 2);
    q.linear[i] = -BigInt(form.coeffs[i]) * (form.m - 4);
  }
  q.constant = -2 * BigInt(n);
  return q;
}

}  // namespace pgonal::testing

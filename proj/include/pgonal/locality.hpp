#pragma once

#include <map>
#include <optional>
#include <vector>

#include "pgonal/forms.hpp"
#include "pgonal/padic.hpp"

namespace pgonal {

/// The rank n-1 sub-quadratic form obtained by eliminating the pivot
/// coordinate: gram[i][j] = a_1 a_i delta_ij + a_i a_j, its determinant,
/// the rational shift solving gram r = (a_2..a_n)^T, and s = 1 - sum a_i r_i.
struct ReducedQuadraticData {
  GramMatrix gram;
  BigInt det;
  std::vector<BigRat> shift;
  BigRat scalar;
};

/// K = prod_{p in {2} u T} p^max{ord_p(8 d^2), ord_p(2 a_1), ..., ord_p(2 a_n)}
/// with T the odd primes at which fewer than five coefficients are units.
struct KBudget {
  BigInt budget;
  std::vector<long long> odd_primes;
  std::map<long long, int> exponents;
};

enum class LocalReason { kUniversalByM, kDiagonalTest, kUnitCountShortcut };

struct LocalVerdict {
  long long p = 2;
  bool representable = false;
  LocalReason reason = LocalReason::kDiagonalTest;
};

const char* to_string(LocalReason reason);

ReducedQuadraticData reduced_data(const MgonalForm& form);

/// Representability of n by the form over Z_p, per the four-way case split
/// on p | m-2 and m mod 4.
LocalVerdict local_represents_at(const MgonalForm& form, long long n, long long p);

/// n >= 0 and representable over every Z_p (only finitely many primes can
/// obstruct; the rest are covered by unit counts or p | m-2).
bool locally_represented(const MgonalForm& form, long long n);

/// Z_p solvability of the pair {sum a_i x_i^2 = 2A+B+k(m-4),
/// sum a_i x_i = B+k(m-2)} for a fixed integer k.
bool system_locally_solvable(const MgonalForm& form, long long a, long long b,
                             const BigInt& k, long long p);

/// At least five coefficients are units at odd p; the system is then solvable
/// for every (A, B, k).
bool guaranteed_any_k(const MgonalForm& form, long long p);

KBudget k_budget(const MgonalForm& form);

/// Smallest k in [0, K-1] making the system solvable at every p in {2} u T.
/// Empty means a violation of the budget lemma and must be surfaced loudly.
std::optional<BigInt> find_k(const MgonalForm& form, long long a, long long b);

/// Residue modulus for k-periodicity of system solvability at p.
BigInt k_period_modulus(const MgonalForm& form, long long p);

/// Checks that solvability persists along k + t*M for t = 1..trials.
bool k_period_check(const MgonalForm& form, long long a, long long b, long long p,
                    const BigInt& k, int trials);

}  // namespace pgonal

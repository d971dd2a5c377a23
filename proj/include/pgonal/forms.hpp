#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pgonal/errors.hpp"
#include "pgonal/numeric.hpp"

namespace pgonal {

/// A generalized m-gonal form: weighted sum of m-gonal numbers with positive
/// integer weights and gcd(a_1,...,a_n) = 1.
struct MgonalForm {
  int m = 3;
  std::vector<long long> coeffs;

  MgonalForm(int m_order, std::vector<long long> weights);

  int rank() const { return static_cast<int>(coeffs.size()); }
  long long coeff_sum() const;
};

/// N = A(m-2) + B with 0 <= B <= m-3.
struct TargetDecomposition {
  long long n = 0;
  long long a = 0;
  long long b = 0;
};

struct RepresentationWitness {
  std::vector<long long> xs;
};

/// The x-th m-gonal number (m-2)(x^2-x)/2 + x; nonnegative for every integer x.
long long polygonal_number(int m, long long x);

long long evaluate(const MgonalForm& form, const std::vector<long long>& xs);

TargetDecomposition decompose(int m, long long n);

/// Exhaustive global representation test with witness recovery.
std::optional<RepresentationWitness> represents(const MgonalForm& form, long long n);

/// Real-place necessary condition: some integer k <= A satisfies
/// (sum a)(2A+B+k(m-4)) >= (B+k(m-2))^2. False means n is never represented.
bool cs_admissible(const MgonalForm& form, long long n);

/// Set of representable values on [0, bound], built by per-coordinate sumset
/// bitsets. Keeps every prefix so witnesses can be walked back.
class RepresentableSet {
 public:
  RepresentableSet(const MgonalForm& form, long long bound);

  bool contains(long long n) const;
  std::optional<RepresentationWitness> witness(long long n) const;
  long long bound() const { return bound_; }

 private:
  const MgonalForm form_;
  long long bound_;
  size_t words_;
  // prefix_[j] = attainable sums of the first j coordinates
  std::vector<std::vector<uint64_t>> prefix_;
  // per coordinate: (value, x) pairs in the search order (ascending value)
  std::vector<std::vector<std::pair<long long, long long>>> values_;
};

}  // namespace pgonal

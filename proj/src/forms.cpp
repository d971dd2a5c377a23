#include "pgonal/forms.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace pgonal {

namespace {

using int128 = __int128;

long long checked_narrow(int128 v, const char* what) {
  if (v > INT64_MAX || v < INT64_MIN) throw DomainError(std::string(what) + ": value out of 64-bit range");
  return static_cast<long long>(v);
}

int128 polygonal_wide(int m, long long x) {
  int128 xx = x;
  return static_cast<int128>(m - 2) * (xx * xx - xx) / 2 + xx;
}

// Per-coordinate search order: values a*P_m(x) <= limit, ascending, both signs
// of x merged (0, 1, -1, 2, -2, ... for m >= 5).
std::vector<std::pair<long long, long long>> coordinate_values(int m, long long a,
                                                               long long limit) {
  std::vector<std::pair<long long, long long>> out;
  if (limit < 0) return out;
  long long xp = 1;  // positive side
  long long xn = 0;  // nonpositive side
  int128 vp = static_cast<int128>(a) * polygonal_wide(m, xp);
  int128 vn = 0;
  bool has_p = vp <= limit;
  bool has_n = true;
  while (has_p || has_n) {
    bool take_neg = has_n && (!has_p || vn <= vp);
    if (take_neg) {
      out.emplace_back(static_cast<long long>(vn), xn);
      --xn;
      vn = static_cast<int128>(a) * polygonal_wide(m, xn);
      has_n = vn <= limit;
    } else {
      out.emplace_back(static_cast<long long>(vp), xp);
      ++xp;
      vp = static_cast<int128>(a) * polygonal_wide(m, xp);
      has_p = vp <= limit;
    }
  }
  return out;
}

constexpr long long kMaxSearchBound = 100'000'000;

}  // namespace

MgonalForm::MgonalForm(int m_order, std::vector<long long> weights)
    : m(m_order), coeffs(std::move(weights)) {
  if (m < 3) throw DomainError("MgonalForm: m must be >= 3");
  if (coeffs.empty()) throw DomainError("MgonalForm: empty coefficient tuple");
  long long g = 0;
  for (long long a : coeffs) {
    if (a < 1) throw DomainError("MgonalForm: coefficients must be positive");
    g = std::gcd(g, a);
  }
  if (g != 1) throw DomainError("MgonalForm: coefficients must be primitive (gcd 1)");
}

long long MgonalForm::coeff_sum() const {
  int128 s = 0;
  for (long long a : coeffs) s += a;
  return checked_narrow(s, "coeff_sum");
}

long long polygonal_number(int m, long long x) {
  if (m < 3) throw DomainError("polygonal_number: m must be >= 3");
  return checked_narrow(polygonal_wide(m, x), "polygonal_number");
}

long long evaluate(const MgonalForm& form, const std::vector<long long>& xs) {
  if (xs.size() != form.coeffs.size())
    throw DomainError("evaluate: tuple length does not match form rank");
  int128 s = 0;
  for (size_t i = 0; i < xs.size(); ++i)
    s += static_cast<int128>(form.coeffs[i]) * polygonal_wide(form.m, xs[i]);
  return checked_narrow(s, "evaluate");
}

TargetDecomposition decompose(int m, long long n) {
  if (m < 3) throw DomainError("decompose: m must be >= 3");
  if (n < 0) throw DomainError("decompose: N must be nonnegative");
  TargetDecomposition t;
  t.n = n;
  t.a = n / (m - 2);
  t.b = n % (m - 2);
  return t;
}

RepresentableSet::RepresentableSet(const MgonalForm& form, long long bound)
    : form_(form), bound_(std::max<long long>(bound, 0)) {
  if (bound_ > kMaxSearchBound)
    throw DomainError("RepresentableSet: bound exceeds exhaustive search limit");
  words_ = static_cast<size_t>(bound_ / 64 + 1);
  const int n = form_.rank();
  values_.reserve(n);
  for (int i = 0; i < n; ++i)
    values_.push_back(coordinate_values(form_.m, form_.coeffs[i], bound_));

  prefix_.assign(n + 1, std::vector<uint64_t>(words_, 0));
  prefix_[0][0] = 1;  // {0}
  for (int j = 1; j <= n; ++j) {
    const auto& prev = prefix_[j - 1];
    auto& cur = prefix_[j];
    for (const auto& [v, x] : values_[j - 1]) {
      const size_t off = static_cast<size_t>(v / 64);
      const int sh = static_cast<int>(v % 64);
      if (sh == 0) {
        for (size_t w = off; w < words_; ++w) cur[w] |= prev[w - off];
      } else {
        for (size_t w = words_; w-- > off;) {
          uint64_t lo = prev[w - off] << sh;
          uint64_t hi = (w - off > 0) ? prev[w - off - 1] >> (64 - sh) : 0;
          cur[w] |= lo | hi;
        }
      }
    }
  }
}

bool RepresentableSet::contains(long long n) const {
  if (n < 0 || n > bound_) return false;
  return (prefix_.back()[static_cast<size_t>(n / 64)] >> (n % 64)) & 1;
}

std::optional<RepresentationWitness> RepresentableSet::witness(long long n) const {
  if (!contains(n)) return std::nullopt;
  RepresentationWitness w;
  w.xs.assign(form_.rank(), 0);
  long long target = n;
  for (int j = form_.rank(); j >= 1; --j) {
    const auto& prev = prefix_[j - 1];
    for (const auto& [v, x] : values_[j - 1]) {
      if (v > target) break;
      long long rest = target - v;
      if ((prev[static_cast<size_t>(rest / 64)] >> (rest % 64)) & 1) {
        w.xs[j - 1] = x;
        target = rest;
        break;
      }
    }
  }
  return w;
}

std::optional<RepresentationWitness> represents(const MgonalForm& form, long long n) {
  if (n < 0) return std::nullopt;
  if (n == 0) return RepresentationWitness{std::vector<long long>(form.rank(), 0)};
  RepresentableSet set(form, n);
  return set.witness(n);
}

bool cs_admissible(const MgonalForm& form, long long n) {
  if (n < 0) return false;
  TargetDecomposition t = decompose(form.m, n);
  const BigInt s = form.coeff_sum();
  const BigInt m2 = form.m - 2;
  const BigInt m4 = form.m - 4;
  const BigInt a2 = m2 * m2;
  const BigInt a1 = 2 * t.b * m2 - s * m4;
  const BigInt a0 = BigInt(t.b) * t.b - s * (2 * t.a + t.b);
  auto sat = [&](const BigInt& k) { return a2 * k * k + a1 * k + a0 <= 0; };

  const BigInt disc = a1 * a1 - 4 * a2 * a0;
  if (disc < 0) return false;
  const BigInt r = isqrt(disc);
  BigInt klo = floor_div(-a1 - r + 2 * a2 - 1, 2 * a2);  // ceil
  BigInt khi = floor_div(-a1 + r, 2 * a2);
  while (sat(klo - 1)) --klo;
  while (klo <= khi && !sat(klo)) ++klo;
  while (sat(khi + 1)) ++khi;
  while (khi >= klo && !sat(khi)) --khi;
  if (klo > khi) return false;
  return klo <= BigInt(t.a);
}

}  // namespace pgonal

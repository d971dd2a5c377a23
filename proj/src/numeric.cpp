#include "pgonal/numeric.hpp"

#include <cstdlib>

namespace pgonal {

bool is_prime(long long p) {
  if (p < 2) return false;
  if (p < 4) return true;
  if (p % 2 == 0) return false;
  for (long long q = 3; q * q <= p; q += 2) {
    if (p % q == 0) return false;
  }
  return true;
}

std::vector<std::pair<long long, int>> factorize(long long x) {
  std::vector<std::pair<long long, int>> out;
  x = std::llabs(x);
  for (long long q = 2; q * q <= x; q += (q == 2 ? 1 : 2)) {
    if (x % q) continue;
    int e = 0;
    while (x % q == 0) {
      x /= q;
      ++e;
    }
    out.emplace_back(q, e);
  }
  if (x > 1) out.emplace_back(x, 1);
  return out;
}

long long mod_pow(long long a, long long e, long long n) {
  long long r = 1 % n;
  a %= n;
  if (a < 0) a += n;
  while (e > 0) {
    if (e & 1) r = r * a % n;
    a = a * a % n;
    e >>= 1;
  }
  return r;
}

BigInt isqrt(const BigInt& x) { return boost::multiprecision::sqrt(x); }

BigInt floor_div(const BigInt& num, const BigInt& den) {
  BigInt q = num / den;
  if ((num % den != 0) && ((num < 0) != (den < 0))) --q;
  return q;
}

}  // namespace pgonal

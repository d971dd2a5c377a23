#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace pgonal {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigInt numerator(const BigRat& q) { return boost::multiprecision::numerator(q); }
inline BigInt denominator(const BigRat& q) { return boost::multiprecision::denominator(q); }

bool is_prime(long long p);

/// Trial-division factorization of |x|, x != 0. Returns (prime, exponent) pairs.
std::vector<std::pair<long long, int>> factorize(long long x);

/// a^e mod n for long long, n < 2^31.
long long mod_pow(long long a, long long e, long long n);

/// Floor square root of a nonnegative BigInt.
BigInt isqrt(const BigInt& x);

/// Floor division for BigInt (round toward -inf).
BigInt floor_div(const BigInt& num, const BigInt& den);

}  // namespace pgonal

#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstddef>
#include <string>

namespace markoff {

using BigInt = mpz_class;
using BigRational = mpq_class;

/// (-1)^k as a small integer.
constexpr int parity_sign(int k) noexcept { return (k % 2 == 0) ? 1 : -1; }

inline std::string to_dec(const BigInt& v) { return v.get_str(10); }

inline std::size_t bit_length(const BigInt& v) {
  return mpz_sgn(v.get_mpz_t()) == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2);
}

/// log2 |v| as a double; -inf for zero. Accurate for any size of v.
inline double log2_abs(const BigInt& v) {
  if (mpz_sgn(v.get_mpz_t()) == 0) return -INFINITY;
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, v.get_mpz_t());
  return std::log2(std::fabs(mant)) + static_cast<double>(exp);
}

inline BigInt big_abs(const BigInt& v) { return abs(v); }

inline BigInt big_gcd(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

}  // namespace markoff

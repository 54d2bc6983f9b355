#pragma once

#include <string>
#include <vector>

#include "markoff/bigint.hpp"

namespace markoff::matseq {

/// Integer polynomial with coefficients in ascending degree. Trailing zero
/// coefficients are trimmed, so the zero polynomial has no coefficients.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<BigInt> coeffs);
  IntPoly(std::initializer_list<long> coeffs);

  static IntPoly monomial(int degree, BigInt coeff = 1);
  /// Parses "c0,c1,...,cd" (ascending degree, decimal). Throws FormatError.
  static IntPoly parse_coefficients(const std::string& text);

  const std::vector<BigInt>& coefficients() const { return c_; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  /// Coefficient of T^i, zero beyond the degree.
  BigInt coeff(int i) const;
  const BigInt& leading() const;

  /// max |c_i|; 0 for the zero polynomial.
  BigInt norm() const;
  /// gcd of the coefficients; 0 for the zero polynomial.
  BigInt content() const;

  IntPoly derivative() const;
  BigInt eval(const BigInt& t) const;

  IntPoly operator+(const IntPoly& o) const;
  IntPoly operator-(const IntPoly& o) const;
  IntPoly operator*(const IntPoly& o) const;
  IntPoly operator-() const;
  IntPoly scaled(const BigInt& s) const;
  friend bool operator==(const IntPoly&, const IntPoly&) = default;

  /// Human-readable form such as "-T^2+3T-1".
  std::string to_string() const;
  /// "c0,c1,...", the inverse of parse_coefficients.
  std::string to_coefficient_list() const;

 private:
  void trim();
  std::vector<BigInt> c_;
};

}  // namespace markoff::matseq

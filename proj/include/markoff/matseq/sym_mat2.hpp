#pragma once

#include <array>
#include <string>

#include "markoff/bigint.hpp"

namespace markoff::matseq {

/// General 2x2 integer matrix, row major.
struct Mat2 {
  BigInt a00, a01, a10, a11;

  friend bool operator==(const Mat2&, const Mat2&) = default;
  Mat2 operator*(const Mat2& o) const;
  Mat2 operator+(const Mat2& o) const;
  Mat2 operator-(const Mat2& o) const;
  Mat2 scaled(const BigInt& s) const;
  bool is_zero() const;
  std::array<BigInt, 4> entries() const { return {a00, a01, a10, a11}; }
  std::string to_string() const;

  static Mat2 identity() { return {1, 0, 0, 1}; }
  /// J = [[0,1],[-1,0]].
  static Mat2 J() { return {0, 1, -1, 0}; }
  /// P = [[3,0],[0,0]].
  static Mat2 P() { return {3, 0, 0, 0}; }
};

/// M_k = P + (-1)^k J, i.e. [[3,1],[-1,0]] for even k and [[3,-1],[1,0]] for odd k.
struct CompanionMatrix {
  int k_parity = 0;
  Mat2 entries;

  static CompanionMatrix for_index(int k);
};

/// Symmetric 2x2 integer matrix [[x0,x1],[x1,x2]]. Members of a Markoff
/// sequence have determinant one.
struct SymMat2 {
  BigInt x0, x1, x2;

  SymMat2() = default;
  SymMat2(BigInt a, BigInt b, BigInt c) : x0(std::move(a)), x1(std::move(b)), x2(std::move(c)) {}

  /// Builds the matrix and throws InvariantViolation unless det == 1.
  static SymMat2 checked(BigInt a, BigInt b, BigInt c);
  /// Symmetric part of a general matrix; throws InvariantViolation if `m` is asymmetric.
  static SymMat2 from_mat2(const Mat2& m);

  const BigInt& operator[](int j) const { return j == 0 ? x0 : (j == 1 ? x1 : x2); }
  BigInt det() const { return x0 * x2 - x1 * x1; }
  /// max(|x0|, |x1|, |x2|)
  BigInt norm() const;
  Mat2 as_mat2() const { return {x0, x1, x1, x2}; }
  bool is_unimodular() const { return det() == 1; }
  std::string to_string() const;

  friend bool operator==(const SymMat2&, const SymMat2&) = default;
};

}  // namespace markoff::matseq

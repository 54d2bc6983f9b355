#include "markoff/matseq/sym_mat2.hpp"

#include "markoff/error.hpp"

namespace markoff::matseq {

Mat2 Mat2::operator*(const Mat2& o) const {
  return {a00 * o.a00 + a01 * o.a10, a00 * o.a01 + a01 * o.a11,
          a10 * o.a00 + a11 * o.a10, a10 * o.a01 + a11 * o.a11};
}

Mat2 Mat2::operator+(const Mat2& o) const {
  return {a00 + o.a00, a01 + o.a01, a10 + o.a10, a11 + o.a11};
}

Mat2 Mat2::operator-(const Mat2& o) const {
  return {a00 - o.a00, a01 - o.a01, a10 - o.a10, a11 - o.a11};
}

Mat2 Mat2::scaled(const BigInt& s) const { return {s * a00, s * a01, s * a10, s * a11}; }

bool Mat2::is_zero() const { return a00 == 0 && a01 == 0 && a10 == 0 && a11 == 0; }

std::string Mat2::to_string() const {
  return "[[" + to_dec(a00) + "," + to_dec(a01) + "],[" + to_dec(a10) + "," + to_dec(a11) + "]]";
}

CompanionMatrix CompanionMatrix::for_index(int k) {
  const int s = parity_sign(k);
  return {k % 2 == 0 ? 0 : 1, Mat2{3, s, -s, 0}};
}

SymMat2 SymMat2::checked(BigInt a, BigInt b, BigInt c) {
  SymMat2 m(std::move(a), std::move(b), std::move(c));
  if (!m.is_unimodular()) {
    throw InvariantViolation("matrix " + m.to_string() + " has determinant " + to_dec(m.det()) +
                             ", expected 1");
  }
  return m;
}

SymMat2 SymMat2::from_mat2(const Mat2& m) {
  if (m.a01 != m.a10) throw InvariantViolation("asymmetric matrix " + m.to_string());
  return SymMat2(m.a00, m.a01, m.a11);
}

BigInt SymMat2::norm() const {
  BigInt n = abs(x0);
  if (abs(x1) > n) n = abs(x1);
  if (abs(x2) > n) n = abs(x2);
  return n;
}

std::string SymMat2::to_string() const {
  return "[[" + to_dec(x0) + "," + to_dec(x1) + "],[" + to_dec(x1) + "," + to_dec(x2) + "]]";
}

}  // namespace markoff::matseq

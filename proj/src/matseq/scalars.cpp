#include "markoff/matseq/scalars.hpp"

#include "markoff/error.hpp"

namespace markoff::matseq {

DerivedScalars derived_scalars(const MarkoffSequence& seq, int k) {
  if (k < 2) throw IndexOutOfRange("derived scalars need k >= 2, got " + std::to_string(k));
  const int s = parity_sign(k);
  auto x = [&](int i, int j) -> const BigInt& { return seq.x(i, j); };

  DerivedScalars d;
  d.k = k;
  d.A = x(k, 1) * x(k + 2, 2) - s * x(k + 1, 2);
  d.B = x(k, 2) * x(k + 2, 2) - 3 * x(k + 1, 2);
  d.C = x(k, 1) * x(k + 1, 2) - s * x(k - 1, 2);
  d.D = x(k, 2) * x(k + 1, 2) - 3 * x(k - 1, 2);
  d.E = x(k, 1) * x(k + 4, 2) - 3 * s * x(k + 1, 0) * x(k + 3, 2) - s * x(k + 2, 2);
  d.F = x(k, 2) * x(k + 4, 2) - 3 * (3 * x(k + 1, 0) + s * x(k + 1, 1)) * x(k + 3, 2);
  return d;
}

IntPoly q_polynomial(const MarkoffSequence& seq, int k) {
  if (k < 1) throw IndexOutOfRange("Q_k needs k >= 1, got " + std::to_string(k));
  const SymMat2& a = seq.term(k);
  const SymMat2& b = seq.term(k + 1);
  // Cofactor expansion along the first row (1, T, T^2).
  return IntPoly(std::vector<BigInt>{a.x1 * b.x2 - a.x2 * b.x1,
                                     -(a.x0 * b.x2 - a.x2 * b.x0),
                                     a.x0 * b.x1 - a.x1 * b.x0});
}

IntPoly q_three_term_residual(const MarkoffSequence& seq, int k) {
  if (k < 2) throw IndexOutOfRange("three-term relation needs k >= 2, got " + std::to_string(k));
  return q_polynomial(seq, k).scaled(seq.x(k - 1, 0)) - q_polynomial(seq, k + 1).scaled(seq.x(k, 0)) +
         q_polynomial(seq, k - 1).scaled(seq.x(k + 1, 0));
}

GcdReport gcd_content_check(const MarkoffSequence& seq, int k) {
  const DerivedScalars d = derived_scalars(seq, k);
  GcdReport r;
  r.k = k;
  r.g_A = big_gcd(seq.x(k, 0), d.A);
  r.g_E = big_gcd(seq.x(k, 0), d.E);
  r.content_Q = q_polynomial(seq, k + 1).content();
  r.all_equal = r.g_A == r.g_E && r.g_E == r.content_Q;
  r.in_range = r.content_Q == 1 || r.content_Q == 2;
  return r;
}

}  // namespace markoff::matseq

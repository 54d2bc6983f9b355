#include "markoff/matseq/identities.hpp"

#include "markoff/error.hpp"
#include "markoff/matseq/scalars.hpp"

namespace markoff::matseq {

namespace {

using Values = std::vector<BigInt>;

Values matrix_values(const Mat2& m) {
  auto e = m.entries();
  return Values(e.begin(), e.end());
}

Values poly_values(const IntPoly& p, int width) {
  Values v;
  for (int i = 0; i < width; ++i) v.push_back(p.coeff(i));
  return v;
}

std::vector<IdentityFamily> build_registry() {
  std::vector<IdentityFamily> r;
  r.push_back({"rec3", "x_{k+2} = 3 x_{k,0} x_{k+1} - x_{k-1}", 2, -1, 2,
               [](const MarkoffSequence& q, int k) {
                 const BigInt t = 3 * q.x(k, 0);
                 Values v;
                 for (int j = 0; j < 3; ++j) v.push_back(q.x(k + 2, j) - (t * q.x(k + 1, j) - q.x(k - 1, j)));
                 return v;
               }});

  // Scalar commutation formulas. Each reads x_{k,a} x_{k+d,b} on the left.
  r.push_back({"c2.5", "x_{k,0}x_{k+1,1} = x_{k,1}x_{k+1,0} - (-1)^k x_{k-1,0}", 2, -1, 1,
               [](const MarkoffSequence& q, int k) {
                 const int s = parity_sign(k);
                 return Values{q.x(k, 0) * q.x(k + 1, 1) - (q.x(k, 1) * q.x(k + 1, 0) - s * q.x(k - 1, 0))};
               }});
  r.push_back({"c2.6", "x_{k,0}x_{k+1,2} = x_{k,1}x_{k+1,1} - (-1)^k x_{k-1,1}", 2, -1, 1,
               [](const MarkoffSequence& q, int k) {
                 const int s = parity_sign(k);
                 return Values{q.x(k, 0) * q.x(k + 1, 2) - (q.x(k, 1) * q.x(k + 1, 1) - s * q.x(k - 1, 1))};
               }});
  r.push_back({"c2.7", "x_{k,1}x_{k+1,2} = x_{k,2}x_{k+1,1} - 3x_{k-1,1} - (-1)^k x_{k-1,2}", 2, -1, 1,
               [](const MarkoffSequence& q, int k) {
                 const int s = parity_sign(k);
                 return Values{q.x(k, 1) * q.x(k + 1, 2) -
                               (q.x(k, 2) * q.x(k + 1, 1) - 3 * q.x(k - 1, 1) - s * q.x(k - 1, 2))};
               }});
  r.push_back({"c2.8", "x_{k,0}x_{k+2,1} = x_{k,1}x_{k+2,0} - (-1)^k x_{k+1,0}", 2, 0, 2,
               [](const MarkoffSequence& q, int k) {
                 const int s = parity_sign(k);
                 return Values{q.x(k, 0) * q.x(k + 2, 1) - (q.x(k, 1) * q.x(k + 2, 0) - s * q.x(k + 1, 0))};
               }});
  r.push_back({"c2.9", "x_{k,0}x_{k+2,2} = x_{k,1}x_{k+2,1} - (-1)^k x_{k+1,1}", 2, 0, 2,
               [](const MarkoffSequence& q, int k) {
                 const int s = parity_sign(k);
                 return Values{q.x(k, 0) * q.x(k + 2, 2) - (q.x(k, 1) * q.x(k + 2, 1) - s * q.x(k + 1, 1))};
               }});
  r.push_back({"c2.10", "x_{k,1}x_{k+2,2} = x_{k,2}x_{k+2,1} - 3x_{k+1,1} - (-1)^k x_{k+1,2}", 2, 0, 2,
               [](const MarkoffSequence& q, int k) {
                 const int s = parity_sign(k);
                 return Values{q.x(k, 1) * q.x(k + 2, 2) -
                               (q.x(k, 2) * q.x(k + 2, 1) - 3 * q.x(k + 1, 1) - s * q.x(k + 1, 2))};
               }});
  r.push_back({"c2.11", "x_{k,0}x_{k+4,1} = x_{k,1}x_{k+4,0} - 3(-1)^k x_{k+1,0}x_{k+3,0} - (-1)^k x_{k+2,0}", 2, 0,
               4, [](const MarkoffSequence& q, int k) {
                 const int s = parity_sign(k);
                 return Values{q.x(k, 0) * q.x(k + 4, 1) - (q.x(k, 1) * q.x(k + 4, 0) -
                                                            3 * s * q.x(k + 1, 0) * q.x(k + 3, 0) - s * q.x(k + 2, 0))};
               }});
  r.push_back({"c2.12", "x_{k,0}x_{k+4,2} = x_{k,1}x_{k+4,1} - 3(-1)^k x_{k+1,0}x_{k+3,1} - (-1)^k x_{k+2,1}", 2, 0,
               4, [](const MarkoffSequence& q, int k) {
                 const int s = parity_sign(k);
                 return Values{q.x(k, 0) * q.x(k + 4, 2) - (q.x(k, 1) * q.x(k + 4, 1) -
                                                            3 * s * q.x(k + 1, 0) * q.x(k + 3, 1) - s * q.x(k + 2, 1))};
               }});
  r.push_back({"c2.13",
               "x_{k,1}x_{k+4,2} = x_{k,2}x_{k+4,1} - 3(3x_{k+1,0} + (-1)^k x_{k+1,1})x_{k+3,1} - (-1)^k x_{k+2,2}", 2, 0,
               4, [](const MarkoffSequence& q, int k) {
                 const int s = parity_sign(k);
                 return Values{q.x(k, 1) * q.x(k + 4, 2) -
                               (q.x(k, 2) * q.x(k + 4, 1) - 3 * (3 * q.x(k + 1, 0) + s * q.x(k + 1, 1)) * q.x(k + 3, 1) -
                                s * q.x(k + 2, 2))};
               }});

  // Matrix forms.
  r.push_back({"mat2.2.ii", "x_k J x_{k+1} = J M_k x_{k-1}", 2, -1, 1, [](const MarkoffSequence& q, int k) {
                 const Mat2 J = Mat2::J();
                 const Mat2 M = CompanionMatrix::for_index(k).entries;
                 return matrix_values(q.term(k).as_mat2() * J * q.term(k + 1).as_mat2() - J * M * q.term(k - 1).as_mat2());
               }});
  r.push_back({"mat2.2.iii", "x_k J x_{k+2} = J M_k x_{k+1}", 2, 0, 2, [](const MarkoffSequence& q, int k) {
                 const Mat2 J = Mat2::J();
                 const Mat2 M = CompanionMatrix::for_index(k).entries;
                 return matrix_values(q.term(k).as_mat2() * J * q.term(k + 2).as_mat2() - J * M * q.term(k + 1).as_mat2());
               }});
  r.push_back({"mat2.2.iv", "x_k J x_{k+4} = J M_k x_{k+1} P x_{k+3} - (-1)^k x_{k+2}", 2, 0, 4,
               [](const MarkoffSequence& q, int k) {
                 const Mat2 J = Mat2::J();
                 const Mat2 M = CompanionMatrix::for_index(k).entries;
                 const Mat2 lhs = q.term(k).as_mat2() * J * q.term(k + 4).as_mat2();
                 const Mat2 rhs = J * M * q.term(k + 1).as_mat2() * Mat2::P() * q.term(k + 3).as_mat2() -
                                  q.term(k + 2).as_mat2().scaled(parity_sign(k));
                 return matrix_values(lhs - rhs);
               }});

  // Three-index identities.
  r.push_back({"L7.2.i", "x_{k,0}x_{k+3,1} = x_{k,1}x_{k+3,0} - 3(-1)^k x_{k+1,0}^2", 1, 0, 3,
               [](const MarkoffSequence& q, int k) {
                 const int s = parity_sign(k);
                 return Values{q.x(k, 0) * q.x(k + 3, 1) -
                               (q.x(k, 1) * q.x(k + 3, 0) - 3 * s * q.x(k + 1, 0) * q.x(k + 1, 0))};
               }});
  r.push_back({"L7.2.ii", "x_{k,0}x_{k+3,2} = x_{k,2}x_{k+3,0} - 3x_{k+1,0}(3x_{k+1,0} + 2(-1)^k x_{k+1,1})", 1, 0, 3,
               [](const MarkoffSequence& q, int k) {
                 const int s = parity_sign(k);
                 return Values{q.x(k, 0) * q.x(k + 3, 2) -
                               (q.x(k, 2) * q.x(k + 3, 0) -
                                3 * q.x(k + 1, 0) * (3 * q.x(k + 1, 0) + 2 * s * q.x(k + 1, 1)))};
               }});
  r.push_back({"L7.2.iii", "x_{k,1}x_{k+3,2} = x_{k,2}x_{k+3,1} - 3x_{k+1,0}(3x_{k+1,1} + (-1)^k x_{k+1,2})", 1, 0, 3,
               [](const MarkoffSequence& q, int k) {
                 const int s = parity_sign(k);
                 return Values{q.x(k, 1) * q.x(k + 3, 2) -
                               (q.x(k, 2) * q.x(k + 3, 1) -
                                3 * q.x(k + 1, 0) * (3 * q.x(k + 1, 1) + s * q.x(k + 1, 2)))};
               }});

  // Q_k structure.
  r.push_back({"q.lead", "leading coefficient of Q_k = (-1)^{k-1} x_{k-1,0}", 2, -1, 1,
               [](const MarkoffSequence& q, int k) {
                 return Values{q_polynomial(q, k).coeff(2) - parity_sign(k - 1) * q.x(k - 1, 0)};
               }});
  r.push_back({"q.3term", "x_{k-1,0}Q_k - x_{k,0}Q_{k+1} + x_{k+1,0}Q_{k-1} = -2(-1)^k", 2, -1, 2,
               [](const MarkoffSequence& q, int k) {
                 const IntPoly expected{-2L * parity_sign(k)};
                 return poly_values(q_three_term_residual(q, k) - expected, 3);
               }});
  return r;
}

}  // namespace

bool IdentityResidual::is_zero() const {
  for (const auto& v : values) {
    if (v != 0) return false;
  }
  return true;
}

std::string IdentityResidual::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    out += to_dec(values[i]);
  }
  return out + "]";
}

const std::vector<IdentityFamily>& identity_registry() {
  static const std::vector<IdentityFamily> registry = build_registry();
  return registry;
}

const IdentityFamily& find_family(const std::string& id) {
  for (const auto& f : identity_registry()) {
    if (f.id == id) return f;
  }
  throw UnknownFamily("unknown identity family '" + id + "'");
}

IdentityResidual verify_exact_identity(const MarkoffSequence& seq, const std::string& family_id, int k) {
  const IdentityFamily& f = find_family(family_id);
  if (k < f.min_k) {
    throw IndexOutOfRange(family_id + " is stated for k >= " + std::to_string(f.min_k) + ", got " + std::to_string(k));
  }
  if (!seq.has(k + f.high_offset)) {
    throw IndexOutOfRange(family_id + " at k=" + std::to_string(k) + " needs term " +
                          std::to_string(k + f.high_offset));
  }
  return {family_id, k, f.residual(seq, k)};
}

}  // namespace markoff::matseq

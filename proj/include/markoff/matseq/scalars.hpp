#pragma once

#include "markoff/matseq/int_poly.hpp"
#include "markoff/matseq/sequence.hpp"

namespace markoff::matseq {

/// The integers A_k..F_k attached to index k.
struct DerivedScalars {
  int k = 0;
  BigInt A, B, C, D, E, F;
};

/// Closed forms for A_k..F_k; reads terms k-1..k+4. Throws IndexOutOfRange.
DerivedScalars derived_scalars(const MarkoffSequence& seq, int k);

/// Q_k(T) = det(1 T T^2 ; x_k ; x_{k+1}) with rows read as (x_{.,0}, x_{.,1}, x_{.,2}).
IntPoly q_polynomial(const MarkoffSequence& seq, int k);

/// x_{k-1,0} Q_k - x_{k,0} Q_{k+1} + x_{k+1,0} Q_{k-1}; expected to be the constant -2(-1)^k.
IntPoly q_three_term_residual(const MarkoffSequence& seq, int k);

struct GcdReport {
  int k = 0;
  BigInt g_A;
  BigInt g_E;
  BigInt content_Q;
  bool all_equal = false;
  bool in_range = false;
};

/// gcd(x_{k,0}, A_k), gcd(x_{k,0}, E_k) and cont(Q_{k+1}). Reads terms up to k+4.
GcdReport gcd_content_check(const MarkoffSequence& seq, int k);

}  // namespace markoff::matseq

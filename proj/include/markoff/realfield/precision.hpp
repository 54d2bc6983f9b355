#pragma once

#include "markoff/matseq/sequence.hpp"
#include "markoff/realfield/enclosure.hpp"

namespace markoff::realfield {

struct PrecisionPolicy {
  static constexpr long kDefaultGuardBits = 256;

  long bits = 256;
  long guard_bits = kDefaultGuardBits;
  int k_max = 0;

  /// Reserves 8 log2 X_{k_max+6} + guard bits, with log2 X extrapolated from
  /// the materialized terms as beta * gamma^k.
  static PrecisionPolicy for_index(const matseq::MarkoffSequence& seq, int k_max,
                                   long guard_bits = kDefaultGuardBits);
  /// Enough bits for a xi enclosure of radius <= 2^-accuracy_bits: the first
  /// index k_ref with log2 X_{k_ref} >= accuracy_bits, plus guard. Materializes
  /// terms up to k_ref + 1. Throws CapExceeded when the cap is too small.
  static PrecisionPolicy for_accuracy(const matseq::MarkoffSequence& seq, double accuracy_bits,
                                      long guard_bits = kDefaultGuardBits);
  static PrecisionPolicy fixed(long bits, long guard_bits = kDefaultGuardBits);
};

/// log2 X_k extrapolated as beta * gamma^k, beta taken from the last materialized term.
double predicted_log2_norm(const matseq::MarkoffSequence& seq, int k);

/// Center x_{k_ref,1}/x_{k_ref,0} at policy.bits and radius 1/X_{k_ref} plus
/// rounding. Cross-checked against the k_ref+1 enclosure, which must intersect
/// it and be strictly narrower.
/// Throws PrecisionExhausted, ConsistencyFailure, IndexOutOfRange.
Enclosure xi_enclosure(const matseq::MarkoffSequence& seq, int k_ref, const PrecisionPolicy& policy);

/// The tightest xi enclosure that policy.bits can carry: the largest k_ref
/// below the sequence cap with log2 X_{k_ref} + guard <= bits.
Enclosure xi_for_policy(const matseq::MarkoffSequence& seq, const PrecisionPolicy& policy, int* k_ref_out = nullptr);

}  // namespace markoff::realfield

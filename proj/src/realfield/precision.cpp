#include "markoff/realfield/precision.hpp"

#include <cmath>
#include <numbers>

#include "markoff/error.hpp"

namespace markoff::realfield {

using matseq::MarkoffSequence;

double predicted_log2_norm(const MarkoffSequence& seq, int k) {
  const int n = seq.size();
  if (k <= n) return seq.log2_norm(k);
  const double beta = seq.log2_norm(n) / std::pow(std::numbers::phi, n);
  return beta * std::pow(std::numbers::phi, k);
}

PrecisionPolicy PrecisionPolicy::for_index(const MarkoffSequence& seq, int k_max, long guard_bits) {
  PrecisionPolicy p;
  p.guard_bits = guard_bits;
  p.k_max = k_max;
  p.bits = static_cast<long>(std::ceil(8.0 * predicted_log2_norm(seq, k_max + 6))) + guard_bits;
  return p;
}

PrecisionPolicy PrecisionPolicy::for_accuracy(const MarkoffSequence& seq, double accuracy_bits, long guard_bits) {
  const int start = std::max(2, seq.seed().first_valid_index + 2);
  for (int k = start;; ++k) {
    seq.ensure(k + 1);
    if (seq.log2_norm(k) >= accuracy_bits) {
      PrecisionPolicy p;
      p.guard_bits = guard_bits;
      p.k_max = k;
      p.bits = static_cast<long>(std::ceil(seq.log2_norm(k))) + guard_bits;
      return p;
    }
  }
}

PrecisionPolicy PrecisionPolicy::fixed(long bits, long guard_bits) {
  PrecisionPolicy p;
  p.bits = bits;
  p.guard_bits = guard_bits;
  return p;
}

namespace {

Enclosure ratio_enclosure(const MarkoffSequence& seq, int k, long bits) {
  Enclosure e = Enclosure::from_rational(BigRational(seq.x(k, 1), seq.x(k, 0)), bits);
  Real r(kRadiusBits);
  Real one(kRadiusBits, 1.0);
  mpfr_div_z(r.get(), one.get(), seq.norm(k).get_mpz_t(), MPFR_RNDU);
  return e.widened(r);
}

}  // namespace

Enclosure xi_enclosure(const MarkoffSequence& seq, int k_ref, const PrecisionPolicy& policy) {
  const int first = std::max(1, seq.seed().first_valid_index);
  if (k_ref < first + 2) {
    throw IndexOutOfRange("xi enclosure needs k_ref >= " + std::to_string(first + 2) + ", got " +
                          std::to_string(k_ref));
  }
  seq.ensure(k_ref + 1);
  if (seq.x(k_ref, 0) == 0 || seq.x(k_ref + 1, 0) == 0) {
    throw ConsistencyFailure("x_{k,0} vanishes near k_ref=" + std::to_string(k_ref));
  }
  const double need = seq.log2_norm(k_ref) + static_cast<double>(policy.guard_bits);
  if (static_cast<double>(policy.bits) < need) {
    throw PrecisionExhausted("xi at k_ref=" + std::to_string(k_ref) + " needs " +
                             std::to_string(static_cast<long>(std::ceil(need))) + " bits, policy has " +
                             std::to_string(policy.bits));
  }
  Enclosure e = ratio_enclosure(seq, k_ref, policy.bits);
  const Enclosure next = ratio_enclosure(seq, k_ref + 1, policy.bits);
  if (!e.intersects(next)) {
    throw ConsistencyFailure("xi enclosures at k=" + std::to_string(k_ref) + " and " + std::to_string(k_ref + 1) +
                             " are disjoint");
  }
  if (mpfr_cmp(next.radius().get(), e.radius().get()) >= 0) {
    throw ConsistencyFailure("xi enclosure at k=" + std::to_string(k_ref + 1) + " is not narrower than at k=" +
                             std::to_string(k_ref));
  }
  return e;
}

Enclosure xi_for_policy(const MarkoffSequence& seq, const PrecisionPolicy& policy, int* k_ref_out) {
  const int first = std::max(1, seq.seed().first_valid_index) + 2;
  int best = 0;
  for (int k = first; k + 1 <= seq.cap(); ++k) {
    seq.ensure(k);
    if (seq.log2_norm(k) + static_cast<double>(policy.guard_bits) > static_cast<double>(policy.bits)) break;
    best = k;
  }
  if (best == 0) {
    throw PrecisionExhausted(std::to_string(policy.bits) + " bits cannot carry any xi enclosure");
  }
  if (k_ref_out) *k_ref_out = best;
  return xi_enclosure(seq, best, policy);
}

}  // namespace markoff::realfield

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "markoff/experiments/delta.hpp"
#include "markoff/matseq/int_poly.hpp"
#include "markoff/realfield/precision.hpp"

namespace markoff::experiments {

struct Deg6Record {
  int k = 0;
  bool skipped = false;
  std::string note;

  /// sigma_k = (x_{k+6,0} - x_{k,0}) xi^6.
  Enclosure sigma;
  /// Signed limit of sigma_{k+6i} - round(sigma_{k+6i}), in [-1/2, 1/2].
  Enclosure delta_bar;
  int delta_index = 0;
  /// Nearest integers to x_{k-3,0} sigma_k, x_{k-2,0} sigma_k and delta_bar - sigma_k.
  BigInt t, t_prime, u;
  /// t / x_{k-3,0} + u.
  BigRational alpha_rational;
  BigInt gcd_t;
  bool gcd_divides_72 = false;
  /// Nearest integer to x_{k,0} xi^6.
  BigInt s;
  matseq::IntPoly P;
  bool shape_ok = false;
  std::optional<Enclosure> root;
  double log2_height_proxy = 0;
  /// |xi - alpha_k| Hhat^{gamma+1} loglog Hhat; empty when the root is not
  /// separated from xi at this precision.
  std::optional<double> quality;
  /// {x_{k,0} xi^6}, k {x_{k,0} xi^6} and log2(k^{2 gamma^7} {x_{k,0} xi^6}).
  double frac_s = 0;
  double k_frac = 0;
  double log2_k_pow_frac = 0;
};

/// P_k = 2T^6 + (-1)^k (s_{k-1} Q_k - s_k Q_{k+1} + s_{k+1} Q_{k-1}).
matseq::IntPoly deg6_polynomial(const matseq::MarkoffSequence& seq, int k, const BigInt& s_prev, const BigInt& s_k,
                                const BigInt& s_next);

/// True when P = 2T^6 + a_2 T^2 + a_1 T + a_0.
bool has_deg6_shape(const matseq::IntPoly& P);

/// One record per k in [k_lo, k_hi] (k_lo >= 4). Records whose integers are
/// not decided are marked skipped with a note.
/// Throws EmptyRange, IndexOutOfRange, PrecisionExhausted (no xi enclosure),
/// DerivativeVanishes (root refinement).
std::vector<Deg6Record> deg6_pipeline(const matseq::MarkoffSequence& seq, int k_lo, int k_hi,
                                      const realfield::PrecisionPolicy& policy, double tail_constant = kTailConstant);

/// Accuracy-based policy that decides every record of the range.
realfield::PrecisionPolicy deg6_policy(const matseq::MarkoffSequence& seq, int k_hi);

nlohmann::json to_json(const Deg6Record& r);

}  // namespace markoff::experiments

#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "markoff/matseq/int_poly.hpp"
#include "markoff/matseq/sequence.hpp"
#include "markoff/realfield/enclosure.hpp"

namespace markoff::auditors {

using realfield::Enclosure;

/// Free parameters of the estimates that take a polynomial or a constant.
struct AuditOptions {
  /// R for P3.2 (degree <= 5).
  matseq::IntPoly r_general{3, -2, 5, 1, -4, 7};
  /// R for L5.1a/b (degree exactly 3).
  matseq::IntPoly r_cubic{5, 1, -3, 2};
  /// m_1..m_6 for C6.1.j1..j6.
  std::array<long, 6> m{2, 6, 20, 80, 360, 1840};
};

/// Highest power of xi an estimate reads (xi^{j+3} in C6.1.j6).
inline constexpr int kMaxPower = 9;

/// What one row evaluation sees: the sequence and xi^0..xi^kMaxPower at the row's
/// working precision. `xi_accuracy_bits` is log2 X_{k_ref} of the xi enclosure
/// the powers came from (the radius of xi is at most 2^-xi_accuracy_bits).
struct RowContext {
  const matseq::MarkoffSequence& seq;
  const AuditOptions& options;
  std::vector<Enclosure> pw;
  long bits = 0;
  double xi_accuracy_bits = 0;
};

/// LHS - RHS for one k. The normalized error is the minimum over the
/// candidates (several candidates encode a sign choice such as "+-").
/// `aux` carries an extra one-sided quantity for the lower-bound lemmas.
struct RowValue {
  std::vector<Enclosure> candidates;
  std::optional<Enclosure> aux;
  bool aux_applies = false;
};

struct EstimateSpec {
  std::string id;
  std::string description;
  bool mod_one = false;
  int min_k = 1;
  /// Smallest and largest offsets from k of the terms read.
  int low_offset = 0;
  int footprint = 0;
  /// Exact multiplier applied to |LHS - RHS| (or its distance to Z).
  std::function<BigRational(const matseq::MarkoffSequence&, const AuditOptions&, int k)> normalizer;
  /// Bits of xi accuracy needed for an absolute error of 2^-64 after normalization.
  /// `xi_accuracy_bits` is 0 when the xi enclosure is not known yet.
  std::function<double(const matseq::MarkoffSequence&, const AuditOptions&, int k, double xi_accuracy_bits)> cost;
  std::function<RowValue(const RowContext&, int k)> value;
};

/// All registered estimates in a fixed order.
const std::vector<EstimateSpec>& estimate_registry();

/// Throws UnknownEstimate.
const EstimateSpec& find_estimate(const std::string& id);

}  // namespace markoff::auditors

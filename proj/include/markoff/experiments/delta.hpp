#pragma once

#include <array>
#include <optional>
#include <vector>

#include <json.hpp>

#include "markoff/auditors/audit.hpp"
#include "markoff/matseq/int_poly.hpp"
#include "markoff/realfield/precision.hpp"

namespace markoff::experiments {

using realfield::Enclosure;

/// Multiplier c in the tail bound c * ||R|| / X_k used to widen a
/// finite-index value into an enclosure of its limit along k + 6i. The
/// audited constants of P3.2 and C7.5.delta stay below 240 on the canonical seed.
inline constexpr double kTailConstant = 1024;

/// delta_l(R(xi)) for l = 1..6, each approximated by {x_{k,0} R(xi)} at the
/// largest k = l (mod 6) the xi accuracy allows.
struct DeltaSet {
  matseq::IntPoly R;
  std::array<Enclosure, 6> values;
  std::array<int, 6> index_used{};
  /// Evaluated only when deg R <= 3.
  bool period3_checked = false;
  bool period3 = false;
  /// Upper bound on max_l |delta_l - delta_{l+3}| (deg R <= 3).
  double period3_gap = 0;
};

/// Throws DegreeTooHigh (deg R > 5) and PrecisionExhausted.
DeltaSet delta_points(const matseq::MarkoffSequence& seq, const matseq::IntPoly& R,
                      const realfield::PrecisionPolicy& policy, double tail_constant = kTailConstant);

/// Policy whose delta surrogates all sit at indices above k_hi.
realfield::PrecisionPolicy delta_policy(const matseq::MarkoffSequence& seq, const matseq::IntPoly& R, int k_hi);

/// |{x_{k,0} R(xi)} - delta_l| X_k / ||R|| for k in [k_lo, k_hi] with k = l
/// modulo 3 (deg R <= 3 with period 3 confirmed) or modulo 6. Rows at or
/// beyond the surrogate index of delta_l, or where delta_l is too wide, are
/// skipped.
auditors::AuditReport delta_residual_table(const matseq::MarkoffSequence& seq, const matseq::IntPoly& R, int ell,
                                           int k_lo, int k_hi, const realfield::PrecisionPolicy& policy);

enum class DenominatorClass { full, half, other };

struct ConvergentRow {
  BigInt p;
  BigInt q;
  /// |q delta - p|.
  Enclosure error;
  /// q |q delta - p|.
  double scaled = 0;
  DenominatorClass denominator_class = DenominatorClass::other;
  /// Index k with |x_{k,0}| = q (full) or 2q (half); 0 if none.
  int k = 0;
  /// Class is full or half with k != l (mod 3).
  bool designated = false;
  /// |x_{k,0} delta - y_k| X_{k+2} for designated rows with k = l + 2 (mod 3).
  std::optional<double> error_times_x_k2;
};

struct ConvergentTable {
  int ell = 0;
  Enclosure delta;
  std::vector<ConvergentRow> rows;
};

/// Convergents of the certified continued fraction prefix of delta_l(xi^3),
/// classified against |x_{k,0}| for 2 <= k <= k_max.
ConvergentTable delta_convergent_table(const matseq::MarkoffSequence& seq, int ell, int k_max,
                                       const realfield::PrecisionPolicy& policy, int max_terms = 4096);

/// Policy whose delta_l(xi^3) enclosures resolve convergents up to |x_{k_max,0}|.
realfield::PrecisionPolicy convergent_policy(const matseq::MarkoffSequence& seq, int k_max);

const char* to_string(DenominatorClass c);
nlohmann::json to_json(const DeltaSet& d);
nlohmann::json to_json(const ConvergentTable& t);

}  // namespace markoff::experiments

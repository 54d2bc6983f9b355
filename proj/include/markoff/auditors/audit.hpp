#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "markoff/auditors/estimates.hpp"
#include "markoff/realfield/precision.hpp"

namespace markoff::auditors {

struct AuditRow {
  int k = 0;
  /// |LHS - RHS| times the normalizer; for mod-one estimates the distance to Z
  /// is taken before normalizing. Meaningless when skipped.
  Enclosure normalized_error;
  bool skipped = false;
  std::string reason;
  /// One-sided quantity of the lower-bound lemmas, when the estimate has one.
  std::optional<Enclosure> aux;
  bool aux_applies = false;
};

struct AuditSummary {
  int computed = 0;
  int skipped = 0;
  double max = 0;
  double median = 0;
  /// Max over the rows with k >= 8.
  double max_k_ge_8 = 0;
  /// max <= 10 * median.
  bool bounded = true;
  /// Max over the second half of the rows <= 10 * median.
  bool trend = true;
  /// No row exceeds 4 times the row at k - 6.
  bool stable = true;
  /// Min of the applicable one-sided values and whether one fell below 1/2.
  std::optional<double> aux_min;
  bool aux_flag = false;
};

struct AuditReport {
  std::string id;
  std::string seed;
  long bits = 0;
  int k_ref = 0;
  std::vector<AuditRow> rows;
  AuditSummary summary;
};

inline constexpr double kBoundFactor = 10.0;
inline constexpr double kStabilityFactor = 4.0;

/// Evaluates estimate `id` for k in [k_lo, k_hi] against the tightest xi
/// enclosure that `policy` can carry. Rows run concurrently and are assembled
/// in ascending k. Rows whose cost exceeds the xi accuracy, or whose nearest
/// integer is undecided, are skipped.
/// Throws UnknownEstimate, IndexOutOfRange, EmptyRange, and PrecisionExhausted
/// when every row is skipped.
AuditReport audit_estimate(const matseq::MarkoffSequence& seq, const std::string& id, int k_lo, int k_hi,
                           const realfield::PrecisionPolicy& policy, const AuditOptions& options = {});

/// Smallest accuracy-based policy under which no row of the range is skipped
/// for precision.
realfield::PrecisionPolicy required_policy(const matseq::MarkoffSequence& seq, const std::string& id, int k_lo,
                                           int k_hi, const AuditOptions& options = {});

/// Every registered estimate over [k_lo, k_hi], each at its required_policy.
std::vector<AuditReport> audit_registry(const matseq::MarkoffSequence& seq, int k_lo, int k_hi,
                                        const AuditOptions& options = {});

AuditSummary summarize(const std::vector<AuditRow>& rows);

nlohmann::json to_json(const AuditReport& report);

/// {"<id>": {"max": .., "median": ..}} for each report.
nlohmann::json make_baseline(const std::vector<AuditReport>& reports);

/// Ids whose max or median is missing from `baseline` or differs from it by
/// more than rel_tol relative to the larger of the two.
std::vector<std::string> baseline_mismatches(const std::vector<AuditReport>& reports, const nlohmann::json& baseline,
                                             double rel_tol = 1e-6);

}  // namespace markoff::auditors

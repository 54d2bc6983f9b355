#pragma once

#include <optional>
#include <vector>

#include <json.hpp>

#include "markoff/matseq/int_poly.hpp"
#include "markoff/matseq/sequence.hpp"
#include "markoff/realfield/enclosure.hpp"
#include "markoff/realfield/precision.hpp"

namespace markoff::experiments {

enum class ScanMode { r_only, r_plus_p };

const char* to_string(ScanMode m);

struct ScanCandidate {
  matseq::IntPoly poly;
  /// |poly(xi)| as a certified enclosure.
  realfield::Enclosure abs_value;
  double normalized = 0;
};

struct ScanReport {
  ScanMode mode = ScanMode::r_only;
  int d = 0;
  long H = 0;
  /// Exponent on ||R||; in P+R mode the exponent on (1 + ||P||) is gamma.
  double exponent = 0;
  std::optional<matseq::IntPoly> fixed_r;
  long candidates = 0;
  long bits = 0;

  double minimum = 0;
  /// R, or R + P in P+R mode.
  matseq::IntPoly argmin;
  /// Certified candidates in increasing order; front() is the minimum.
  std::vector<ScanCandidate> top;

  /// R-only scans of degree <= 3: indices k in 1..12 with Q_k | argmin over Q.
  bool divisibility_checked = false;
  std::vector<int> argmin_divisible_by;

  /// R-only scans: the minimum of |R(xi)| ||R||^{1+gamma^2}, over every
  /// candidate and over candidates divisible by no Q_k (degree <= 3 only).
  double strong_minimum = 0;
  matseq::IntPoly strong_argmin;
  std::optional<double> strong_minimum_nondivisible;
  matseq::IntPoly strong_argmin_nondivisible;
};

struct ScanOptions {
  /// Largest number of candidates enumerated.
  long budget = 20'000'000;
  /// Number of best double-ranked candidates certified by enclosure.
  int certify = 8;
  /// Precision doublings allowed before PrecisionExhausted.
  int max_doublings = 4;
};

/// Exhaustive scan over integer polynomials of degree <= d and height <= H.
/// R-only: 1 <= d <= 6, all nonzero R. P+R: fixed_r is required and P ranges
/// over degree <= 2, ||P|| <= H, with R + P != 0.
/// Throws BudgetExceeded, PrecisionExhausted, IndexOutOfRange.
ScanReport brute_scan(const matseq::MarkoffSequence& seq, ScanMode mode, int d, long H,
                      const realfield::PrecisionPolicy& policy, const std::optional<matseq::IntPoly>& fixed_r = {},
                      const ScanOptions& options = {});

/// Exponent on ||R|| used by the R-only scan of degree d.
double scan_exponent(int d);

/// Indices k in [1, k_max] with Q_k dividing p over the rationals.
std::vector<int> q_divisors(const matseq::MarkoffSequence& seq, const matseq::IntPoly& p, int k_max = 12);

struct LagrangeEntry {
  BigInt n;
  /// n ||n xi|| as an enclosure.
  realfield::Enclosure value;
};

struct LagrangeReport {
  long n_lo = 1000;
  long n_max = 0;
  bool via_convergents = false;
  long bits = 0;
  /// Five smallest values in increasing order; front() is the minimum.
  std::vector<LagrangeEntry> smallest;
};

inline constexpr long kLagrangeStart = 1000;
inline constexpr long kLagrangeLinearLimit = 100'000;

enum class LagrangeMethod { automatic, linear, convergents };

/// min of n ||n xi|| over 1000 <= n <= n_max. The automatic method sweeps
/// linearly up to 1e5 and uses convergent denominators and their multiples beyond.
/// Throws EmptyRange (n_max < 1000), PrecisionExhausted (xi radius >= 1/(2 n_max^2)).
LagrangeReport lagrange_scan(const matseq::MarkoffSequence& seq, long n_max, const realfield::PrecisionPolicy& policy,
                             LagrangeMethod method = LagrangeMethod::automatic);

realfield::PrecisionPolicy lagrange_policy(const matseq::MarkoffSequence& seq, long n_max);

nlohmann::json to_json(const ScanReport& r);
nlohmann::json to_json(const LagrangeReport& r);

}  // namespace markoff::experiments

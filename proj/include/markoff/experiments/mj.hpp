#pragma once

#include <vector>

#include <json.hpp>

#include "markoff/matseq/sequence.hpp"
#include "markoff/realfield/precision.hpp"

namespace markoff::experiments {

struct MjOptions {
  int k_lo = 6;
  int k_hi = 16;
  /// Largest normalized condition value still counted as bounded.
  double threshold = 1e4;
};

struct MjResult {
  int j = 0;
  long m = 0;
  /// Max over the window of the normalized condition value for m.
  double kappa = 0;
  bool unique_in_bound = false;
  long m_bound = 0;
  int k_lo = 0;
  int k_hi = 0;
  /// Sign chosen at each k of the window (+1 or -1).
  std::vector<int> signs;
  /// x_{k,0} ... x_{k+j-1,0} x_{k+j+1,0} for each k of the window.
  std::vector<BigInt> product_cached;
};

/// Smallest m in [1, m_bound] with min over +- of
/// {x_{k,0}..x_{k+j-1,0} x_{k+j+1,0} xi^{j+3} +- m x_{k+1,0} xi^3} X_{k+1}
/// <= threshold for every k in the window. m and -m are the same condition.
/// Throws NotFound, PrecisionExhausted, IndexOutOfRange (j outside 1..6).
MjResult mj_search(const matseq::MarkoffSequence& seq, int j, long m_bound, const realfield::PrecisionPolicy& policy,
                   const MjOptions& options = {});

/// Accuracy-based policy large enough for mj_search over the window.
realfield::PrecisionPolicy mj_policy(const matseq::MarkoffSequence& seq, int j, long m_bound,
                                     const MjOptions& options = {});

nlohmann::json to_json(const MjResult& r);

}  // namespace markoff::experiments

#pragma once

#include <vector>

#include "markoff/matseq/sequence.hpp"

namespace markoff::matseq {

/// Number of terms generated when judging a seed.
inline constexpr int kSeedProbeTerms = 12;

/// Flags a seed pair as admissible by generating `kSeedProbeTerms` terms and
/// checking monotone growth, the golden-ratio growth rate at k = 10, and the
/// approximation |x_{k,0} r - x_{k,1}| X_k <= 10 with r = x_{12,1}/x_{12,0}.
/// A seed whose terms fail to generate is returned inadmissible.
SeedPair assess_seed(const SymMat2& x1, const SymMat2& x2);

/// Every symmetric determinant-one matrix with entries in [-bound, bound].
std::vector<SymMat2> unimodular_symmetric(int entry_bound);

/// All commuting seed pairs with entries bounded by `entry_bound`, each assessed.
std::vector<SeedPair> seed_search(int entry_bound);

/// (identity, [[1,1],[1,2]]).
SeedPair canonical_seed();
MarkoffSequence canonical_sequence(int cap = MarkoffSequence::kDefaultCap);

}  // namespace markoff::matseq

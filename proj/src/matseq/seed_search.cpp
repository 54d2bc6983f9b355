#include "markoff/matseq/seed_search.hpp"

#include <cmath>
#include <numbers>

#include "markoff/error.hpp"

namespace markoff::matseq {

namespace {

constexpr double kGrowthTolerance = 0.10;
constexpr int kGrowthIndex = 10;
constexpr int kApproxBound = 10;
constexpr int kLatestFirstValid = 4;

// Smallest k0 <= kLatestFirstValid from which X strictly increases and
// X_k < (1 + r^2)|x_{k,0}| holds up to the last probe term, r = x_{n,1}/x_{n,0}.
int first_valid(const MarkoffSequence& seq, int n) {
  const BigInt& q = seq.x(n, 0);
  const BigInt& p = seq.x(n, 1);
  const BigInt q2 = q * q;
  const BigInt weight = q2 + p * p;
  auto holds = [&](int k) {
    const bool growth = k == n || seq.norm(k) < seq.norm(k + 1);
    return growth && seq.norm(k) * q2 < weight * abs(seq.x(k, 0));
  };
  int k0 = 0;
  for (int k = n; k >= 1; --k) {
    if (!holds(k)) break;
    k0 = k;
  }
  return (k0 >= 1 && k0 <= kLatestFirstValid) ? k0 : 0;
}

}  // namespace

SeedPair assess_seed(const SymMat2& x1, const SymMat2& x2) {
  SeedPair seed{x1, x2, false, 0};
  if (!x1.is_unimodular() || !x2.is_unimodular() || !seed.commutes()) return seed;

  const int n = kSeedProbeTerms;
  MarkoffSequence seq(seed, n);
  try {
    seq.ensure(n);
  } catch (const Error&) {
    return seed;
  }
  if (seq.x(n, 0) == 0) return seed;

  seed.first_valid_index = first_valid(seq, n);
  if (seed.first_valid_index == 0) return seed;

  const double l0 = seq.log2_norm(kGrowthIndex);
  const double l1 = seq.log2_norm(kGrowthIndex + 1);
  if (!(l0 > 0.0) || std::fabs(l1 / l0 - std::numbers::phi) > kGrowthTolerance * std::numbers::phi) return seed;

  const BigInt& q = seq.x(n, 0);
  const BigInt& p = seq.x(n, 1);
  for (int k = seed.first_valid_index; k < n; ++k) {
    // |x_{k,0} p/q - x_{k,1}| X_k <= bound, cleared of the denominator.
    const BigInt lhs = abs(seq.x(k, 0) * p - seq.x(k, 1) * q) * seq.norm(k);
    if (lhs > kApproxBound * abs(q)) return seed;
  }
  seed.admissible = true;
  return seed;
}

std::vector<SymMat2> unimodular_symmetric(int entry_bound) {
  std::vector<SymMat2> out;
  for (long a = -entry_bound; a <= entry_bound; ++a) {
    for (long b = -entry_bound; b <= entry_bound; ++b) {
      for (long c = -entry_bound; c <= entry_bound; ++c) {
        if (a * c - b * b == 1) out.emplace_back(a, b, c);
      }
    }
  }
  return out;
}

std::vector<SeedPair> seed_search(int entry_bound) {
  std::vector<SeedPair> out;
  if (entry_bound < 1) return out;
  const auto mats = unimodular_symmetric(entry_bound);
  for (const auto& x1 : mats) {
    for (const auto& x2 : mats) {
      SeedPair probe{x1, x2, false, 0};
      if (!probe.commutes()) continue;
      out.push_back(assess_seed(x1, x2));
    }
  }
  return out;
}

SeedPair canonical_seed() {
  static const SeedPair seed = assess_seed(SymMat2(1, 0, 1), SymMat2(1, 1, 2));
  return seed;
}

MarkoffSequence canonical_sequence(int cap) { return MarkoffSequence(canonical_seed(), cap); }

}  // namespace markoff::matseq

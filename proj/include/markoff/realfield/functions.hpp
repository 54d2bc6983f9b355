#pragma once

#include <optional>
#include <vector>

#include "markoff/matseq/int_poly.hpp"
#include "markoff/realfield/enclosure.hpp"
#include "markoff/realfield/precision.hpp"

namespace markoff::realfield {

/// Distance to the nearest integer. `nearest` is empty when the enclosure
/// reaches a half-integer and the nearest integer is not determined.
struct FracResult {
  Enclosure frac;
  std::optional<BigInt> nearest;
};

/// Throws RadiusTooLarge when e.radius >= 1/4.
FracResult frac_nearest(const Enclosure& e);

/// Midpoint-radius Horner evaluation; contains P(t) for every t in e.
Enclosure eval_int_poly(const matseq::IntPoly& p, const Enclosure& e);

inline constexpr int kNewtonBudget = 64;

/// Newton iteration at policy.bits from start.center, certified by one
/// interval Newton step whose image lies inside the candidate interval.
/// Throws DerivativeVanishes or NoConvergence.
Enclosure refine_root(const matseq::IntPoly& p, const Enclosure& start, const PrecisionPolicy& policy);

/// Common prefix of the continued fraction expansions of the two endpoints,
/// at most max_terms partial quotients. A radius-zero enclosure expands its
/// exact binary center.
std::vector<BigInt> continued_fraction(const Enclosure& e, int max_terms);

/// Continued fraction of an exact rational (at most max_terms terms).
std::vector<BigInt> continued_fraction(const BigRational& v, int max_terms);

/// Convergent p_n/q_n of [a_0; a_1, ..., a_n] for every prefix.
std::vector<BigRational> convergents(const std::vector<BigInt>& terms);

}  // namespace markoff::realfield

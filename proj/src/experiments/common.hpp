#pragma once

#include <string>

#include "markoff/matseq/int_poly.hpp"
#include "markoff/matseq/sequence.hpp"
#include "markoff/realfield/enclosure.hpp"

namespace markoff::experiments::detail {

using realfield::Enclosure;

/// Bits kept beyond the size of the integers multiplying xi.
inline constexpr double kSlackBits = 72;

/// R(xi) * scale from a table of powers xi^0..xi^d.
Enclosure eval_scaled(const matseq::IntPoly& r, const std::vector<Enclosure>& pw, const BigInt& scale);

/// xi^0..xi^n at `bits`.
std::vector<Enclosure> powers(const Enclosure& xi, int n, long bits);

/// e minus its nearest integer; throws PrecisionExhausted when that integer
/// is not decided.
Enclosure signed_remainder(const Enclosure& e, const std::string& what);

/// Nearest integer to e; throws PrecisionExhausted when undecided.
BigInt nearest_integer(const Enclosure& e, const std::string& what);

/// log2 |x| for any MPFR exponent; -inf for zero.
double log2_real(const realfield::Real& x);

/// Adds c / X_k to the radius.
Enclosure widen_tail(const Enclosure& e, double c, const BigInt& norm_k);

}  // namespace markoff::experiments::detail

#include "common.hpp"

#include <cmath>

#include "markoff/error.hpp"
#include "markoff/realfield/functions.hpp"

namespace markoff::experiments::detail {

Enclosure eval_scaled(const matseq::IntPoly& r, const std::vector<Enclosure>& pw, const BigInt& scale) {
  Enclosure acc(pw.front().bits());
  for (int i = 0; i <= r.degree(); ++i) acc = acc + pw.at(static_cast<std::size_t>(i)) * (scale * r.coeff(i));
  return acc;
}

std::vector<Enclosure> powers(const Enclosure& xi, int n, long bits) {
  std::vector<Enclosure> pw{Enclosure::from_integer(BigInt(1), bits)};
  const Enclosure x = xi.with_bits(bits);
  for (int i = 1; i <= n; ++i) pw.push_back(pw.back() * x);
  return pw;
}

BigInt nearest_integer(const Enclosure& e, const std::string& what) {
  try {
    const auto f = realfield::frac_nearest(e);
    if (f.nearest) return *f.nearest;
  } catch (const RadiusTooLarge&) {
  }
  throw PrecisionExhausted("nearest integer to " + what + " is not decided at " + std::to_string(e.bits()) + " bits");
}

Enclosure signed_remainder(const Enclosure& e, const std::string& what) { return e - nearest_integer(e, what); }

Enclosure widen_tail(const Enclosure& e, double c, const BigInt& norm_k) {
  realfield::Real r(realfield::kRadiusBits, c);
  mpfr_div_z(r.get(), r.get(), norm_k.get_mpz_t(), MPFR_RNDU);
  return e.widened(r);
}

double log2_real(const realfield::Real& x) {
  if (x.is_zero()) return -INFINITY;
  long e = 0;
  const double m = mpfr_get_d_2exp(&e, x.get(), MPFR_RNDN);
  return std::log2(std::fabs(m)) + static_cast<double>(e);
}

}  // namespace markoff::experiments::detail

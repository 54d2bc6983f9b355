#include "markoff/realfield/functions.hpp"

#include "markoff/error.hpp"

namespace markoff::realfield {

using matseq::IntPoly;

FracResult frac_nearest(const Enclosure& e) {
  Real quarter(kRadiusBits, 0.25);
  if (mpfr_cmp(e.radius().get(), quarter.get()) >= 0) {
    throw RadiusTooLarge("frac_nearest needs radius < 1/4, got " + e.radius_string());
  }
  BigInt n;
  mpfr_get_z(n.get_mpz_t(), e.center().get(), MPFR_RNDN);

  // |center - n| and a radius covering both the enclosure and the subtraction.
  Real d(e.bits());
  const int t = mpfr_sub_z(d.get(), e.center().get(), n.get_mpz_t(), MPFR_RNDN);
  mpfr_abs(d.get(), d.get(), MPFR_RNDN);
  Real rad(kRadiusBits);
  mpfr_set(rad.get(), e.radius().get(), MPFR_RNDU);
  if (t != 0 && !d.is_zero()) {
    Real ulp(kRadiusBits);
    mpfr_set_ui_2exp(ulp.get(), 1, mpfr_get_exp(d.get()) - d.prec(), MPFR_RNDU);
    mpfr_add(rad.get(), rad.get(), ulp.get(), MPFR_RNDU);
  }

  Real lo(e.bits() + 8), hi(e.bits() + 8);
  mpfr_sub(lo.get(), d.get(), rad.get(), MPFR_RNDD);
  if (lo.sign() < 0) mpfr_set_zero(lo.get(), 1);
  mpfr_add(hi.get(), d.get(), rad.get(), MPFR_RNDU);

  FracResult r{Enclosure(e.bits()), n};
  if (mpfr_cmp_d(hi.get(), 0.5) >= 0) {
    mpfr_set_d(hi.get(), 0.5, MPFR_RNDU);
    r.nearest.reset();
  }
  r.frac = Enclosure::from_bounds(lo, hi, e.bits());
  return r;
}

Enclosure eval_int_poly(const IntPoly& p, const Enclosure& e) {
  if (p.is_zero()) return Enclosure(e.bits());
  const auto& c = p.coefficients();
  Enclosure acc = Enclosure::from_integer(c.back(), e.bits());
  for (int i = p.degree() - 1; i >= 0; --i) acc = acc * e + c[static_cast<std::size_t>(i)];
  return acc;
}

namespace {

// Point Horner evaluation of p and p' at x, round-to-nearest.
void horner_pair(const IntPoly& p, const Real& x, Real& val, Real& der) {
  const auto& c = p.coefficients();
  mpfr_set_z(val.get(), c.back().get_mpz_t(), MPFR_RNDN);
  mpfr_set_zero(der.get(), 1);
  for (int i = p.degree() - 1; i >= 0; --i) {
    mpfr_mul(der.get(), der.get(), x.get(), MPFR_RNDN);
    mpfr_add(der.get(), der.get(), val.get(), MPFR_RNDN);
    mpfr_mul(val.get(), val.get(), x.get(), MPFR_RNDN);
    mpfr_add_z(val.get(), val.get(), c[static_cast<std::size_t>(i)].get_mpz_t(), MPFR_RNDN);
  }
}

}  // namespace

Enclosure refine_root(const IntPoly& p, const Enclosure& start, const PrecisionPolicy& policy) {
  if (p.degree() < 1) throw NoConvergence("constant polynomial " + p.to_string() + " has no simple root");
  const IntPoly dp = p.derivative();
  if (eval_int_poly(dp, start).contains_zero()) {
    throw DerivativeVanishes("derivative of " + p.to_string() + " vanishes on the start enclosure");
  }
  const mpfr_prec_t bits = policy.bits;
  Real x(bits), val(bits), der(bits), step(bits);
  mpfr_set(x.get(), start.center().get(), MPFR_RNDN);

  const long half = -(static_cast<long>(bits) / 2);
  int extra = -1;
  int it = 0;
  for (; it < kNewtonBudget; ++it) {
    horner_pair(p, x, val, der);
    if (der.is_zero()) throw DerivativeVanishes("derivative vanished during Newton iteration");
    mpfr_div(step.get(), val.get(), der.get(), MPFR_RNDN);
    mpfr_sub(x.get(), x.get(), step.get(), MPFR_RNDN);
    if (extra < 0 && (step.is_zero() || mpfr_get_exp(step.get()) < half)) extra = 2;
    if (extra >= 0 && extra-- == 0) break;
  }
  if (it == kNewtonBudget) throw NoConvergence("Newton did not settle within " + std::to_string(kNewtonBudget) + " steps");

  // Candidate x +- rho, widened until the interval Newton image lands inside.
  Real rho(kRadiusBits);
  mpfr_abs(rho.get(), step.get(), MPFR_RNDU);
  mpfr_mul_2ui(rho.get(), rho.get(), 4, MPFR_RNDU);
  Real floor_rho(kRadiusBits);
  mpfr_set_ui_2exp(floor_rho.get(), 1, std::max<long>(mpfr_get_exp(x.get()), 0) - bits + 16, MPFR_RNDU);
  mpfr_max(rho.get(), rho.get(), floor_rho.get(), MPFR_RNDU);

  const Enclosure point = Enclosure::from_bounds(x, x, bits);
  const Enclosure value = eval_int_poly(p, point);
  for (int attempt = 0; attempt < 8; ++attempt) {
    const Enclosure cand = point.widened(rho);
    const Enclosure slope = eval_int_poly(dp, cand);
    if (slope.contains_zero()) {
      throw DerivativeVanishes("derivative of " + p.to_string() + " vanishes near the Newton limit");
    }
    const Enclosure image = point - value / slope;
    if (cand.contains(image)) return image;
    mpfr_mul_2ui(rho.get(), rho.get(), 8, MPFR_RNDU);
  }
  throw NoConvergence("interval Newton step failed to certify a root of " + p.to_string());
}

namespace {

struct Expansion {
  std::vector<BigInt> terms;
  bool terminated = false;
};

Expansion expand(BigInt p, BigInt q, int max_terms) {
  Expansion out;
  if (q < 0) {
    p = -p;
    q = -q;
  }
  while (static_cast<int>(out.terms.size()) < max_terms) {
    BigInt a;
    mpz_fdiv_q(a.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
    BigInt r = p - a * q;
    out.terms.push_back(std::move(a));
    if (r == 0) {
      out.terminated = true;
      break;
    }
    p = std::move(q);
    q = std::move(r);
  }
  return out;
}

BigRational exact_value(const Real& r) {
  BigRational q;
  mpfr_get_q(q.get_mpq_t(), r.get());
  return q;
}

}  // namespace

std::vector<BigInt> continued_fraction(const BigRational& v, int max_terms) {
  if (max_terms <= 0) return {};
  return expand(v.get_num(), v.get_den(), max_terms).terms;
}

std::vector<BigInt> continued_fraction(const Enclosure& e, int max_terms) {
  if (max_terms <= 0) return {};
  if (e.radius().is_zero()) return continued_fraction(exact_value(e.center()), max_terms);
  const BigRational lo = exact_value(e.lower());
  const BigRational hi = exact_value(e.upper());
  const Expansion a = expand(lo.get_num(), lo.get_den(), max_terms + 1);
  const Expansion b = expand(hi.get_num(), hi.get_den(), max_terms + 1);
  std::vector<BigInt> out;
  for (std::size_t i = 0; i < a.terms.size() && i < b.terms.size() && static_cast<int>(i) < max_terms; ++i) {
    // The last quotient of a terminating expansion has two spellings, so it is not certified.
    if (a.terminated && i + 1 == a.terms.size()) break;
    if (b.terminated && i + 1 == b.terms.size()) break;
    if (a.terms[i] != b.terms[i]) break;
    out.push_back(a.terms[i]);
  }
  return out;
}

std::vector<BigRational> convergents(const std::vector<BigInt>& terms) {
  std::vector<BigRational> out;
  BigInt p_prev = 1, p_prev2 = 0, q_prev = 0, q_prev2 = 1;
  for (const auto& a : terms) {
    BigInt p = a * p_prev + p_prev2;
    BigInt q = a * q_prev + q_prev2;
    out.emplace_back(p, q);
    out.back().canonicalize();
    p_prev2 = std::move(p_prev);
    p_prev = std::move(p);
    q_prev2 = std::move(q_prev);
    q_prev = std::move(q);
  }
  return out;
}

}  // namespace markoff::realfield

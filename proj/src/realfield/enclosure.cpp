#include "markoff/realfield/enclosure.hpp"

#include <algorithm>

#include "markoff/error.hpp"

namespace markoff::realfield {

namespace {

Real abs_up(mpfr_srcptr x) {
  Real r(kRadiusBits);
  mpfr_abs(r.get(), x, MPFR_RNDU);
  return r;
}

Real abs_down(mpfr_srcptr x) {
  Real r(kRadiusBits);
  mpfr_abs(r.get(), x, MPFR_RNDD);
  return r;
}

void add_up(Real& acc, mpfr_srcptr x) { mpfr_add(acc.get(), acc.get(), x, MPFR_RNDU); }

}  // namespace

Enclosure::Enclosure(mpfr_prec_t bits) : center_(bits), radius_(kRadiusBits) {}

void Enclosure::absorb(int ternary) {
  if (ternary == 0 || center_.is_zero()) return;
  Real ulp(kRadiusBits);
  mpfr_set_ui_2exp(ulp.get(), 1, mpfr_get_exp(center_.get()) - center_.prec(), MPFR_RNDU);
  add_up(radius_, ulp.get());
}

Enclosure Enclosure::from_integer(const BigInt& v, mpfr_prec_t bits) {
  Enclosure e(bits);
  e.absorb(mpfr_set_z(e.center_.get(), v.get_mpz_t(), MPFR_RNDN));
  return e;
}

Enclosure Enclosure::from_rational(const BigRational& v, mpfr_prec_t bits) {
  Enclosure e(bits);
  e.absorb(mpfr_set_q(e.center_.get(), v.get_mpq_t(), MPFR_RNDN));
  return e;
}

Enclosure Enclosure::from_double(double center, double radius, mpfr_prec_t bits) {
  Enclosure e(bits);
  e.absorb(mpfr_set_d(e.center_.get(), center, MPFR_RNDN));
  Real r(kRadiusBits);
  mpfr_set_d(r.get(), std::fabs(radius), MPFR_RNDU);
  add_up(e.radius_, r.get());
  return e;
}

Enclosure Enclosure::from_decimal(const std::string& center, const std::string& radius, mpfr_prec_t bits) {
  Enclosure e(bits);
  Real r(kRadiusBits);
  if (mpfr_set_str(r.get(), radius.c_str(), 10, MPFR_RNDU) != 0) throw FormatError("bad radius '" + radius + "'");
  Real c(bits);
  char* end = nullptr;
  const int t = mpfr_strtofr(c.get(), center.c_str(), &end, 10, MPFR_RNDN);
  if (end == center.c_str() || *end != '\0') throw FormatError("bad center '" + center + "'");
  e.center_ = c;
  mpfr_abs(r.get(), r.get(), MPFR_RNDU);
  add_up(e.radius_, r.get());
  e.absorb(t);
  return e;
}

Enclosure Enclosure::from_bounds(const Real& lo, const Real& hi, mpfr_prec_t bits) {
  if (mpfr_cmp(lo.get(), hi.get()) > 0) throw InvariantViolation("enclosure bounds out of order");
  Enclosure e(bits);
  Real sum(std::max({lo.prec(), hi.prec(), bits}) + 1);
  mpfr_add(sum.get(), lo.get(), hi.get(), MPFR_RNDN);
  mpfr_div_2ui(e.center_.get(), sum.get(), 1, MPFR_RNDN);
  Real up(kRadiusBits), down(kRadiusBits);
  mpfr_sub(up.get(), hi.get(), e.center_.get(), MPFR_RNDU);
  mpfr_sub(down.get(), e.center_.get(), lo.get(), MPFR_RNDU);
  mpfr_max(e.radius_.get(), up.get(), down.get(), MPFR_RNDU);
  if (e.radius_.sign() < 0) mpfr_set_zero(e.radius_.get(), 1);
  return e;
}

Real Enclosure::lower() const {
  Real r(bits() + 8);
  mpfr_sub(r.get(), center_.get(), radius_.get(), MPFR_RNDD);
  return r;
}

Real Enclosure::upper() const {
  Real r(bits() + 8);
  mpfr_add(r.get(), center_.get(), radius_.get(), MPFR_RNDU);
  return r;
}

Real Enclosure::mag() const {
  Real r = abs_up(center_.get());
  add_up(r, radius_.get());
  return r;
}

Real Enclosure::mig() const {
  Real r = abs_down(center_.get());
  mpfr_sub(r.get(), r.get(), radius_.get(), MPFR_RNDD);
  if (r.sign() < 0) mpfr_set_zero(r.get(), 1);
  return r;
}

bool Enclosure::contains(const BigRational& v) const {
  return mpfr_cmp_q(lower().get(), v.get_mpq_t()) <= 0 && mpfr_cmp_q(upper().get(), v.get_mpq_t()) >= 0;
}

bool Enclosure::contains(const Enclosure& inner) const {
  return mpfr_cmp(lower().get(), inner.lower().get()) <= 0 && mpfr_cmp(inner.upper().get(), upper().get()) <= 0;
}

bool Enclosure::contains_zero() const { return mpfr_cmpabs(center_.get(), radius_.get()) <= 0; }

bool Enclosure::intersects(const Enclosure& o) const {
  return mpfr_cmp(lower().get(), o.upper().get()) <= 0 && mpfr_cmp(o.lower().get(), upper().get()) <= 0;
}

Enclosure Enclosure::operator-() const {
  Enclosure e(*this);
  mpfr_neg(e.center_.get(), e.center_.get(), MPFR_RNDN);
  return e;
}

Enclosure Enclosure::operator+(const Enclosure& o) const {
  Enclosure e(std::max(bits(), o.bits()));
  const int t = mpfr_add(e.center_.get(), center_.get(), o.center_.get(), MPFR_RNDN);
  mpfr_add(e.radius_.get(), radius_.get(), o.radius_.get(), MPFR_RNDU);
  e.absorb(t);
  return e;
}

Enclosure Enclosure::operator-(const Enclosure& o) const { return *this + (-o); }

Enclosure Enclosure::operator*(const Enclosure& o) const {
  Enclosure e(std::max(bits(), o.bits()));
  const int t = mpfr_mul(e.center_.get(), center_.get(), o.center_.get(), MPFR_RNDN);
  // |a| s + |b| r + r s
  Real acc = abs_up(center_.get());
  mpfr_mul(acc.get(), acc.get(), o.radius_.get(), MPFR_RNDU);
  Real term = abs_up(o.center_.get());
  mpfr_mul(term.get(), term.get(), radius_.get(), MPFR_RNDU);
  add_up(acc, term.get());
  mpfr_mul(term.get(), radius_.get(), o.radius_.get(), MPFR_RNDU);
  add_up(acc, term.get());
  e.radius_ = acc;
  e.absorb(t);
  return e;
}

Enclosure Enclosure::operator/(const Enclosure& o) const {
  if (o.contains_zero()) throw InvariantViolation("division by an enclosure containing zero");
  Enclosure e(std::max(bits(), o.bits()));
  const int t = mpfr_div(e.center_.get(), center_.get(), o.center_.get(), MPFR_RNDN);
  // (|a| s + |b| r) / (|b| (|b| - s))
  Real num = abs_up(center_.get());
  mpfr_mul(num.get(), num.get(), o.radius_.get(), MPFR_RNDU);
  Real term = abs_up(o.center_.get());
  mpfr_mul(term.get(), term.get(), radius_.get(), MPFR_RNDU);
  add_up(num, term.get());
  Real den = abs_down(o.center_.get());
  mpfr_sub(den.get(), den.get(), o.radius_.get(), MPFR_RNDD);
  Real b = abs_down(o.center_.get());
  mpfr_mul(den.get(), den.get(), b.get(), MPFR_RNDD);
  mpfr_div(e.radius_.get(), num.get(), den.get(), MPFR_RNDU);
  e.absorb(t);
  return e;
}

Enclosure Enclosure::operator+(const BigInt& n) const {
  Enclosure e(*this);
  const int t = mpfr_add_z(e.center_.get(), center_.get(), n.get_mpz_t(), MPFR_RNDN);
  e.absorb(t);
  return e;
}

Enclosure Enclosure::operator-(const BigInt& n) const {
  Enclosure e(*this);
  const int t = mpfr_sub_z(e.center_.get(), center_.get(), n.get_mpz_t(), MPFR_RNDN);
  e.absorb(t);
  return e;
}

Enclosure Enclosure::operator*(const BigInt& n) const {
  Enclosure e(bits());
  const int t = mpfr_mul_z(e.center_.get(), center_.get(), n.get_mpz_t(), MPFR_RNDN);
  const BigInt an = abs(n);
  mpfr_mul_z(e.radius_.get(), radius_.get(), an.get_mpz_t(), MPFR_RNDU);
  e.absorb(t);
  return e;
}

Enclosure Enclosure::pow(unsigned n) const {
  Enclosure result = from_integer(1, bits());
  Enclosure base(*this);
  while (n > 0) {
    if (n & 1U) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

Enclosure Enclosure::with_bits(mpfr_prec_t new_bits) const {
  Enclosure e(new_bits);
  const int t = mpfr_set(e.center_.get(), center_.get(), MPFR_RNDN);
  e.radius_ = radius_;
  e.absorb(t);
  return e;
}

Enclosure Enclosure::widened(const Real& extra) const {
  Enclosure e(*this);
  Real x = abs_up(extra.get());
  add_up(e.radius_, x.get());
  return e;
}

}  // namespace markoff::realfield

#pragma once

#include <string>

#include "markoff/realfield/real.hpp"

namespace markoff::realfield {

/// Midpoint-radius interval [center - radius, center + radius]. The center is
/// kept at `bits` with round-to-nearest; the radius is a kRadiusBits number
/// rounded upward and absorbs every rounding error of the center.
class Enclosure {
 public:
  explicit Enclosure(mpfr_prec_t bits = 64);

  static Enclosure from_integer(const BigInt& v, mpfr_prec_t bits);
  static Enclosure from_rational(const BigRational& v, mpfr_prec_t bits);
  /// center and radius are taken as exact binary doubles.
  static Enclosure from_double(double center, double radius, mpfr_prec_t bits);
  /// Decimal strings; conversion errors are added to the radius.
  static Enclosure from_decimal(const std::string& center, const std::string& radius, mpfr_prec_t bits);
  /// Smallest representable enclosure of [lo, hi]; requires lo <= hi.
  static Enclosure from_bounds(const Real& lo, const Real& hi, mpfr_prec_t bits);

  mpfr_prec_t bits() const { return center_.prec(); }
  const Real& center() const { return center_; }
  const Real& radius() const { return radius_; }
  double center_d() const { return center_.to_double(); }
  /// Radius as a double, rounded up.
  double radius_d() const { return radius_.to_double(MPFR_RNDU); }

  /// Lower / upper endpoint rounded outward, at precision `bits() + 8`.
  Real lower() const;
  Real upper() const;
  /// Upper bound on |x| for x in the enclosure (kRadiusBits, rounded up).
  Real mag() const;
  /// Lower bound on |x| (kRadiusBits, rounded down); zero if 0 is inside.
  Real mig() const;

  bool contains(const BigRational& v) const;
  bool contains(const Enclosure& inner) const;
  bool contains_zero() const;
  bool intersects(const Enclosure& o) const;

  Enclosure operator-() const;
  Enclosure operator+(const Enclosure& o) const;
  Enclosure operator-(const Enclosure& o) const;
  Enclosure operator*(const Enclosure& o) const;
  /// Throws InvariantViolation if `o` contains zero.
  Enclosure operator/(const Enclosure& o) const;
  Enclosure operator+(const BigInt& n) const;
  Enclosure operator-(const BigInt& n) const;
  Enclosure operator*(const BigInt& n) const;
  Enclosure pow(unsigned n) const;

  /// Same value at a different center precision; rounding goes into the radius.
  Enclosure with_bits(mpfr_prec_t bits) const;
  /// Adds `extra` (rounded up) to the radius.
  Enclosure widened(const Real& extra) const;

  std::string center_string(int digits = 30) const { return center_.to_string(digits); }
  std::string radius_string(int digits = 6) const { return radius_.to_string(digits); }

 private:
  /// Adds one ulp of the center to the radius when `ternary` reports an inexact result.
  void absorb(int ternary);

  Real center_;
  Real radius_;
};

}  // namespace markoff::realfield

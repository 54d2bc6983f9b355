#pragma once

#include <mpfr.h>

#include <string>

#include "markoff/bigint.hpp"

namespace markoff::realfield {

/// Owning wrapper around an mpfr_t. The precision is fixed at construction
/// and preserved by copy assignment of the value.
class Real {
 public:
  explicit Real(mpfr_prec_t bits = 64);
  Real(mpfr_prec_t bits, double v);
  Real(const Real& o);
  Real(Real&& o) noexcept;
  Real& operator=(const Real& o);
  Real& operator=(Real&& o) noexcept;
  ~Real();

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

  double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(v_, rnd); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  /// Scientific notation with `digits` significant decimal digits.
  std::string to_string(int digits = 20) const;

 private:
  void init(mpfr_prec_t bits);
  mpfr_t v_;
  bool live_ = false;
};

/// Precision used for radii; radii are always rounded upward.
inline constexpr mpfr_prec_t kRadiusBits = 64;

/// Widens MPFR's exponent range for the calling thread. Called by every Real
/// constructor.
void ensure_exponent_range();

}  // namespace markoff::realfield

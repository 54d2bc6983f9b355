#include "markoff/realfield/real.hpp"

namespace markoff::realfield {

void ensure_exponent_range() {
  thread_local bool done = false;
  if (!done) {
    mpfr_set_emin(mpfr_get_emin_min());
    mpfr_set_emax(mpfr_get_emax_max());
    done = true;
  }
}

void Real::init(mpfr_prec_t bits) {
  ensure_exponent_range();
  mpfr_init2(v_, bits);
  mpfr_set_zero(v_, 1);
  live_ = true;
}

Real::Real(mpfr_prec_t bits) { init(bits); }

Real::Real(mpfr_prec_t bits, double v) {
  init(bits);
  mpfr_set_d(v_, v, MPFR_RNDN);
}

Real::Real(const Real& o) {
  init(o.prec());
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

Real::Real(Real&& o) noexcept {
  if (o.live_) {
    *v_ = *o.v_;
    live_ = true;
    o.live_ = false;
  }
}

Real& Real::operator=(const Real& o) {
  if (this != &o) {
    if (live_) {
      mpfr_set_prec(v_, o.prec());
    } else {
      init(o.prec());
    }
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& o) noexcept {
  if (this != &o) {
    if (live_) mpfr_clear(v_);
    live_ = o.live_;
    if (o.live_) *v_ = *o.v_;
    o.live_ = false;
  }
  return *this;
}

Real::~Real() {
  if (live_) mpfr_clear(v_);
}

std::string Real::to_string(int digits) const {
  char* buf = nullptr;
  const std::string fmt = "%." + std::to_string(digits > 1 ? digits - 1 : 0) + "Re";
  if (mpfr_asprintf(&buf, fmt.c_str(), v_) < 0 || buf == nullptr) return "nan";
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

}  // namespace markoff::realfield

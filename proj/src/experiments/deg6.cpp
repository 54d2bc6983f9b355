#include "markoff/experiments/deg6.hpp"

#include <cmath>
#include <numbers>

#include "common.hpp"
#include "markoff/error.hpp"
#include "markoff/matseq/scalars.hpp"
#include "markoff/realfield/functions.hpp"

namespace markoff::experiments {

using matseq::IntPoly;
using matseq::MarkoffSequence;
using realfield::PrecisionPolicy;
using realfield::Real;

namespace {

constexpr double kGamma = std::numbers::phi;

double log2_rational(const BigRational& q) { return log2_abs(q.get_num()) - log2_abs(q.get_den()); }

/// Largest k' = k (mod 6), k' >= k, whose sigma_{k'} fits in the accuracy.
int sigma_surrogate(const MarkoffSequence& seq, int k, double accuracy) {
  int best = k;
  for (int kk = k + 6; kk + 7 <= seq.cap(); kk += 6) {
    if (realfield::predicted_log2_norm(seq, kk + 6) + detail::kSlackBits > accuracy * 1.01 + 64) break;
    seq.ensure(kk + 6);
    if (seq.log2_norm(kk + 6) + detail::kSlackBits > accuracy) break;
    best = kk;
  }
  return best;
}

/// Decimal text, shortened to its leading and trailing digits past 60 digits.
std::string abbreviated(const BigInt& v) {
  const std::string s = to_dec(v);
  if (s.size() <= 60) return s;
  return s.substr(0, 20) + "..." + s.substr(s.size() - 10) + " (" + std::to_string(s.size()) + " chars)";
}

Enclosure sigma_at(const MarkoffSequence& seq, const std::vector<Enclosure>& pw, int k) {
  return pw[6] * BigInt(seq.x(k + 6, 0) - seq.x(k, 0));
}

}  // namespace

IntPoly deg6_polynomial(const MarkoffSequence& seq, int k, const BigInt& s_prev, const BigInt& s_k,
                        const BigInt& s_next) {
  if (k < 2) throw IndexOutOfRange("P_k needs k >= 2, got " + std::to_string(k));
  const IntPoly body = matseq::q_polynomial(seq, k).scaled(s_prev) - matseq::q_polynomial(seq, k + 1).scaled(s_k) +
                       matseq::q_polynomial(seq, k - 1).scaled(s_next);
  return IntPoly::monomial(6, 2) + body.scaled(parity_sign(k));
}

bool has_deg6_shape(const IntPoly& P) {
  return P.degree() == 6 && P.leading() == 2 && P.coeff(3) == 0 && P.coeff(4) == 0 && P.coeff(5) == 0;
}

PrecisionPolicy deg6_policy(const MarkoffSequence& seq, int k_hi) {
  seq.ensure(k_hi + 6);
  const double sigma = seq.log2_norm(k_hi + 6) + seq.log2_norm(k_hi - 2);
  const double root = 3 * (seq.log2_norm(k_hi + 1) + seq.log2_norm(k_hi) + seq.log2_norm(k_hi - 1));
  return PrecisionPolicy::for_accuracy(seq, std::max(sigma, root) + 2 * detail::kSlackBits);
}

std::vector<Deg6Record> deg6_pipeline(const MarkoffSequence& seq, int k_lo, int k_hi, const PrecisionPolicy& policy,
                                      double tail_constant) {
  if (k_lo > k_hi) throw EmptyRange("empty degree-6 range");
  if (k_lo < 4) throw IndexOutOfRange("degree-6 records need k >= 4, got " + std::to_string(k_lo));
  seq.ensure(k_hi + 7);
  int k_ref = 0;
  const Enclosure xi = realfield::xi_for_policy(seq, policy, &k_ref);
  const double accuracy = seq.log2_norm(k_ref);
  const auto pw = detail::powers(xi, 6, policy.bits);

  std::vector<Deg6Record> out;
  for (int k = k_lo; k <= k_hi; ++k) {
    Deg6Record r;
    r.k = k;
    const std::string at = " at k=" + std::to_string(k);
    try {
      if (seq.log2_norm(k + 6) + seq.log2_norm(k - 2) + detail::kSlackBits > accuracy) {
        throw PrecisionExhausted("sigma" + at + " needs more xi accuracy");
      }
      r.sigma = sigma_at(seq, pw, k);
      r.delta_index = sigma_surrogate(seq, k, accuracy);
      r.delta_bar = detail::widen_tail(detail::signed_remainder(sigma_at(seq, pw, r.delta_index), "sigma" + at),
                                       tail_constant, seq.norm(r.delta_index));

      const BigInt& x3 = seq.x(k - 3, 0);
      r.t = detail::nearest_integer(r.sigma * x3, "x_{k-3,0} sigma_k" + at);
      r.t_prime = detail::nearest_integer(r.sigma * seq.x(k - 2, 0), "x_{k-2,0} sigma_k" + at);
      r.u = detail::nearest_integer(r.delta_bar - r.sigma, "delta_bar - sigma_k" + at);
      r.alpha_rational = BigRational(r.t, x3) + BigRational(r.u);
      r.alpha_rational.canonicalize();
      r.gcd_t = big_gcd(x3, r.t);
      r.gcd_divides_72 = r.gcd_t != 0 && BigInt(72) % r.gcd_t == 0;

      BigInt s[3];
      for (int i = 0; i < 3; ++i) {
        const int kk = k - 1 + i;
        s[i] = detail::nearest_integer(pw[6] * seq.x(kk, 0), "x_{k,0} xi^6 at k=" + std::to_string(kk));
      }
      r.s = s[1];
      r.P = deg6_polynomial(seq, k, s[0], s[1], s[2]);
      r.shape_ok = has_deg6_shape(r.P);

      const Enclosure f = realfield::frac_nearest(pw[6] * seq.x(k, 0)).frac;
      r.frac_s = f.center_d();
      r.k_frac = k * r.frac_s;
      r.log2_k_pow_frac = 2 * std::pow(kGamma, 7) * std::log2(static_cast<double>(k)) + std::log2(r.frac_s);
    } catch (const PrecisionExhausted& e) {
      r.skipped = true;
      r.note = e.what();
      out.push_back(std::move(r));
      continue;
    }

    const BigRational height(r.P.norm(), r.P.content());
    r.log2_height_proxy = log2_rational(height);
    try {
      realfield::Real eps(realfield::kRadiusBits);
      mpfr_set_ui_2exp(eps.get(), 1, -40, MPFR_RNDU);
      r.root = realfield::refine_root(r.P, xi.widened(eps), policy);
      const Enclosure diff = xi - *r.root;
      if (!diff.contains_zero()) {
        const double ln_h = std::max(1.0, r.log2_height_proxy * std::numbers::ln2);
        const double log2_q = detail::log2_real(diff.mig()) + (kGamma + 1) * r.log2_height_proxy;
        r.quality = std::exp2(log2_q) * std::log(ln_h);
      } else {
        r.note = "root not separated from xi at " + std::to_string(policy.bits) + " bits";
      }
    } catch (const NoConvergence& e) {
      r.note = e.what();
    }
    out.push_back(std::move(r));
  }
  return out;
}

nlohmann::json to_json(const Deg6Record& r) {
  nlohmann::json j{{"k", r.k}, {"skipped", r.skipped}};
  if (!r.note.empty()) j["note"] = r.note;
  if (r.skipped) return j;
  j["sigma"] = r.sigma.center_string(30);
  j["delta_bar"] = r.delta_bar.center_string(30);
  j["delta_bar_radius"] = r.delta_bar.radius_string();
  j["delta_index"] = r.delta_index;
  j["t"] = abbreviated(r.t);
  j["t_prime"] = abbreviated(r.t_prime);
  j["u"] = abbreviated(r.u);
  j["alpha_rational"] = abbreviated(r.alpha_rational.get_num()) + " / " + abbreviated(r.alpha_rational.get_den());
  j["gcd_t"] = to_dec(r.gcd_t);
  j["gcd_divides_72"] = r.gcd_divides_72;
  j["s"] = abbreviated(r.s);
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : r.P.coefficients()) coeffs.push_back(abbreviated(c));
  j["P"] = coeffs;
  j["shape_ok"] = r.shape_ok;
  if (r.root) {
    j["root"] = r.root->center_string(30);
    j["root_radius"] = r.root->radius_string();
  }
  j["log2_height_proxy"] = r.log2_height_proxy;
  if (r.quality) j["quality"] = *r.quality;
  j["frac_x_xi6"] = r.frac_s;
  j["k_times_frac"] = r.k_frac;
  j["log2_k_pow_frac"] = r.log2_k_pow_frac;
  return j;
}

}  // namespace markoff::experiments

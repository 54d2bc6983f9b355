#include "markoff/experiments/delta.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "common.hpp"
#include "markoff/error.hpp"
#include "markoff/realfield/functions.hpp"

namespace markoff::experiments {

using matseq::IntPoly;
using matseq::MarkoffSequence;
using realfield::PrecisionPolicy;

namespace {

double log2_norm_of(const IntPoly& r) { return std::max(0.0, log2_abs(r.norm())); }

/// Largest k = ell (mod 6) below the cap with log2 X_k + overhead <= accuracy; 0 if none.
int surrogate_index(const MarkoffSequence& seq, int ell, double overhead, double accuracy) {
  int best = 0;
  for (int k = ell; k + 1 <= seq.cap(); k += 6) {
    if (realfield::predicted_log2_norm(seq, k) + overhead > accuracy * 1.01 + 64) break;
    seq.ensure(k);
    if (seq.log2_norm(k) + overhead > accuracy) break;
    best = k;
  }
  return best;
}

}  // namespace

DeltaSet delta_points(const MarkoffSequence& seq, const IntPoly& R, const PrecisionPolicy& policy,
                      double tail_constant) {
  if (R.degree() > 5) throw DegreeTooHigh("delta points need deg R <= 5, got " + R.to_string());
  DeltaSet out;
  out.R = R;
  if (R.is_zero()) {
    out.values.fill(Enclosure::from_integer(BigInt(0), policy.bits));
    out.period3_checked = true;
    out.period3 = true;
    return out;
  }
  int k_ref = 0;
  const Enclosure xi = realfield::xi_for_policy(seq, policy, &k_ref);
  const double accuracy = seq.log2_norm(k_ref);
  const double overhead = detail::kSlackBits + log2_norm_of(R);
  const auto pw = detail::powers(xi, std::max(R.degree(), 0), policy.bits);
  const double tail = tail_constant * static_cast<double>(R.norm().get_d());

  for (int ell = 1; ell <= 6; ++ell) {
    const int k = surrogate_index(seq, ell, overhead, accuracy);
    // The tail bound must leave the value well inside [0, 1/2].
    if (k == 0 || seq.log2_norm(k) < std::log2(tail) + 32) {
      throw PrecisionExhausted("delta_" + std::to_string(ell) + " of " + R.to_string() + " needs more than " +
                               std::to_string(policy.bits) + " bits");
    }
    const auto f = realfield::frac_nearest(detail::eval_scaled(R, pw, seq.x(k, 0)));
    out.values[static_cast<std::size_t>(ell - 1)] = detail::widen_tail(f.frac, tail, seq.norm(k));
    out.index_used[static_cast<std::size_t>(ell - 1)] = k;
  }

  if (R.degree() <= 3) {
    out.period3_checked = true;
    out.period3 = true;
    for (std::size_t l = 0; l < 3; ++l) {
      const Enclosure& a = out.values[l];
      const Enclosure& b = out.values[l + 3];
      if (!a.intersects(b)) out.period3 = false;
      const double gap = std::fabs(a.center_d() - b.center_d()) + a.radius_d() + b.radius_d();
      out.period3_gap = std::max(out.period3_gap, gap);
    }
  }
  return out;
}

PrecisionPolicy delta_policy(const MarkoffSequence& seq, const IntPoly& R, int k_hi) {
  seq.ensure(k_hi + 6);
  return PrecisionPolicy::for_accuracy(seq, seq.log2_norm(k_hi + 6) + detail::kSlackBits + log2_norm_of(R));
}

auditors::AuditReport delta_residual_table(const MarkoffSequence& seq, const IntPoly& R, int ell, int k_lo, int k_hi,
                                           const PrecisionPolicy& policy) {
  if (ell < 1 || ell > 6) throw IndexOutOfRange("residue class must be in 1..6, got " + std::to_string(ell));
  if (k_lo > k_hi) throw EmptyRange("empty residual range");
  const DeltaSet d = delta_points(seq, R, policy);
  const int period = d.period3_checked && d.period3 ? 3 : 6;
  if (period == 3 && ell > 3) ell -= 3;
  const Enclosure& delta = d.values[static_cast<std::size_t>(ell - 1)];
  const int limit_index = d.index_used[static_cast<std::size_t>(ell - 1)];

  int k_ref = 0;
  const Enclosure xi = realfield::xi_for_policy(seq, policy, &k_ref);
  const auto pw = detail::powers(xi, R.degree(), policy.bits);
  const Enclosure inv_norm = Enclosure::from_rational(BigRational(BigInt(1), R.norm()), policy.bits);

  auditors::AuditReport report;
  report.id = "delta_" + std::to_string(ell) + "(" + R.to_string() + ")";
  report.seed = seq.seed().to_string();
  report.bits = policy.bits;
  report.k_ref = k_ref;
  for (int k = k_lo; k <= k_hi; ++k) {
    if (((k - ell) % period + period) % period != 0) continue;
    auditors::AuditRow row;
    row.k = k;
    seq.ensure(k);
    if (k >= limit_index) {
      row.skipped = true;
      row.reason = "precision: delta taken at k=" + std::to_string(limit_index);
    } else {
      const auto f = realfield::frac_nearest(detail::eval_scaled(R, pw, seq.x(k, 0)));
      const Enclosure diff = f.frac - delta;
      const Enclosure mag = diff.center().sign() < 0 ? -diff : diff;
      row.normalized_error = mag * seq.norm(k) * inv_norm;
      if (row.normalized_error.radius_d() > 1e-6 * std::max(1.0, row.normalized_error.center_d())) {
        row.skipped = true;
        row.reason = "precision: delta too wide for k=" + std::to_string(k);
      }
    }
    report.rows.push_back(std::move(row));
  }
  report.summary = auditors::summarize(report.rows);
  return report;
}

PrecisionPolicy convergent_policy(const MarkoffSequence& seq, int k_max) {
  // Consecutive designated convergents pair up; the second of a pair is only
  // certified once the radius is below about X_{k_max}^{-3}.
  return delta_policy(seq, IntPoly::monomial(3), k_max + 2);
}

const char* to_string(DenominatorClass c) {
  switch (c) {
    case DenominatorClass::full:
      return "full";
    case DenominatorClass::half:
      return "half";
    case DenominatorClass::other:
      break;
  }
  return "other";
}

ConvergentTable delta_convergent_table(const MarkoffSequence& seq, int ell, int k_max, const PrecisionPolicy& policy,
                                       int max_terms) {
  if (ell < 1 || ell > 3) throw IndexOutOfRange("ell must be in 1..3, got " + std::to_string(ell));
  seq.ensure(k_max + 2);
  const DeltaSet d = delta_points(seq, IntPoly::monomial(3), policy);
  ConvergentTable t;
  t.ell = ell;
  t.delta = d.values[static_cast<std::size_t>(ell - 1)];

  // |x_{k,0}| -> k, preferring indices outside the class of ell.
  std::map<BigInt, int> by_den;
  BigInt q_limit = 0;
  for (int k = 2; k <= k_max; ++k) {
    const BigInt a = abs(seq.x(k, 0));
    auto it = by_den.find(a);
    if (it == by_den.end() || (it->second - ell) % 3 == 0) by_den[a] = k;
    if (a > q_limit) q_limit = a;
  }

  const auto cf = realfield::continued_fraction(t.delta, max_terms);
  const auto conv = realfield::convergents(cf);
  BigInt last_q = 0;
  for (const auto& c : conv) {
    ConvergentRow row;
    row.p = c.get_num();
    row.q = c.get_den();
    if (row.q > q_limit) break;
    if (row.q <= last_q) continue;
    last_q = row.q;
    row.error = t.delta * row.q - row.p;
    if (row.error.contains_zero()) break;
    if (row.error.center().sign() < 0) row.error = -row.error;
    row.scaled = (row.error * row.q).center_d();

    if (auto it = by_den.find(row.q); it != by_den.end()) {
      row.denominator_class = DenominatorClass::full;
      row.k = it->second;
    } else if (auto h = by_den.find(BigInt(2 * row.q)); h != by_den.end()) {
      row.denominator_class = DenominatorClass::half;
      row.k = h->second;
    }
    row.designated = row.denominator_class != DenominatorClass::other && (row.k - ell) % 3 != 0;
    if (row.designated && ((row.k - ell - 2) % 3 + 3) % 3 == 0) {
      seq.ensure(row.k + 2);
      const BigInt factor = abs(seq.x(row.k, 0)) / row.q;
      row.error_times_x_k2 = (row.error * BigInt(factor * seq.norm(row.k + 2))).center_d();
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

nlohmann::json to_json(const DeltaSet& d) {
  nlohmann::json values = nlohmann::json::array();
  for (std::size_t i = 0; i < 6; ++i) {
    values.push_back({{"ell", i + 1},
                      {"value", d.values[i].center_string(30)},
                      {"radius", d.values[i].radius_string()},
                      {"k_used", d.index_used[i]}});
  }
  nlohmann::json j{{"R", d.R.to_string()}, {"values", values}};
  if (d.period3_checked) {
    j["period3"] = d.period3;
    j["period3_gap"] = d.period3_gap;
  }
  return j;
}

nlohmann::json to_json(const ConvergentTable& t) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : t.rows) {
    nlohmann::json j{{"p", to_dec(r.p)},
                     {"q", to_dec(r.q)},
                     {"error", r.error.center_string(12)},
                     {"radius", r.error.radius_string()},
                     {"q_times_error", (r.error * r.q).center_string(6)},
                     {"class", to_string(r.denominator_class)},
                     {"k", r.k},
                     {"designated", r.designated}};
    if (r.error_times_x_k2) j["error_times_X_k2"] = *r.error_times_x_k2;
    rows.push_back(std::move(j));
  }
  return {{"ell", t.ell}, {"delta", t.delta.center_string(30)}, {"radius", t.delta.radius_string()}, {"rows", rows}};
}

}  // namespace markoff::experiments

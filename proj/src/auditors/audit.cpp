#include "markoff/auditors/audit.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <map>

#include "markoff/error.hpp"
#include "markoff/realfield/functions.hpp"

namespace markoff::auditors {

using matseq::MarkoffSequence;
using realfield::PrecisionPolicy;

namespace {

void check_range(const EstimateSpec& spec, const MarkoffSequence& seq, int k_lo, int k_hi) {
  if (k_lo > k_hi) {
    throw EmptyRange("empty audit range [" + std::to_string(k_lo) + ", " + std::to_string(k_hi) + "]");
  }
  if (k_lo < spec.min_k || k_lo + spec.low_offset < 1) {
    throw IndexOutOfRange(spec.id + " starts at k=" + std::to_string(spec.min_k) + ", got " + std::to_string(k_lo));
  }
  seq.ensure(k_hi + spec.footprint);
}

std::vector<Enclosure> xi_powers(const Enclosure& xi, long bits) {
  std::vector<Enclosure> pw;
  pw.reserve(kMaxPower + 1);
  pw.push_back(Enclosure::from_integer(BigInt(1), bits));
  const Enclosure x = xi.with_bits(bits);
  for (int i = 1; i <= kMaxPower; ++i) pw.push_back(pw.back() * x);
  return pw;
}

Enclosure magnitude(Enclosure e) { return e.center().sign() < 0 ? -e : e; }

AuditRow evaluate_row(const MarkoffSequence& seq, const EstimateSpec& spec, const AuditOptions& options,
                      const Enclosure& xi, double accuracy, int k) {
  AuditRow row;
  row.k = k;
  const double cost = spec.cost(seq, options, k, accuracy);
  if (cost > accuracy) {
    row.skipped = true;
    row.reason = "precision: needs " + std::to_string(static_cast<long>(std::ceil(cost))) + " bits of xi, have " +
                 std::to_string(static_cast<long>(accuracy));
    return row;
  }
  const long bits = static_cast<long>(std::ceil(cost)) + 64;
  const RowContext ctx{seq, options, xi_powers(xi, bits), bits, accuracy};
  const RowValue v = spec.value(ctx, k);
  const Enclosure norm = Enclosure::from_rational(spec.normalizer(seq, options, k), bits);

  std::optional<Enclosure> best;
  for (const auto& cand : v.candidates) {
    Enclosure err(bits);
    if (spec.mod_one) {
      const auto f = realfield::frac_nearest(cand);
      if (!f.nearest) continue;
      err = f.frac;
    } else {
      err = magnitude(cand);
    }
    if (!best || mpfr_cmp(err.center().get(), best->center().get()) < 0) best = err;
  }
  if (!best) {
    row.skipped = true;
    row.reason = "nearest integer undecided";
    return row;
  }
  row.normalized_error = *best * norm;
  row.aux = v.aux;
  row.aux_applies = v.aux_applies;
  return row;
}

double median_of(std::vector<double> v) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

AuditSummary summarize(const std::vector<AuditRow>& rows) {
  AuditSummary s;
  std::vector<double> vals;
  std::map<int, double> by_k;
  for (const auto& r : rows) {
    if (r.skipped) {
      ++s.skipped;
      continue;
    }
    ++s.computed;
    const double v = r.normalized_error.center_d();
    vals.push_back(v);
    by_k[r.k] = v;
    s.max = std::max(s.max, v);
    if (r.k >= 8) s.max_k_ge_8 = std::max(s.max_k_ge_8, v);
    if (r.aux && r.aux_applies) {
      const double a = r.aux->center_d();
      s.aux_min = s.aux_min ? std::min(*s.aux_min, a) : a;
      if (a < 0.5) s.aux_flag = true;
    }
  }
  s.median = median_of(vals);
  s.bounded = s.max <= kBoundFactor * s.median;
  double late = 0;
  for (std::size_t i = vals.size() / 2; i < vals.size(); ++i) late = std::max(late, vals[i]);
  s.trend = late <= kBoundFactor * s.median;
  for (const auto& [k, v] : by_k) {
    const auto prev = by_k.find(k - 6);
    if (prev != by_k.end() && v > kStabilityFactor * prev->second) s.stable = false;
  }
  return s;
}

AuditReport audit_estimate(const MarkoffSequence& seq, const std::string& id, int k_lo, int k_hi,
                           const PrecisionPolicy& policy, const AuditOptions& options) {
  const EstimateSpec& spec = find_estimate(id);
  check_range(spec, seq, k_lo, k_hi);
  int k_ref = 0;
  const Enclosure xi = realfield::xi_for_policy(seq, policy, &k_ref);
  const double accuracy = seq.log2_norm(k_ref);

  std::vector<std::future<AuditRow>> pending;
  for (int k = k_lo; k <= k_hi; ++k) {
    pending.push_back(std::async(std::launch::async, [&, k] { return evaluate_row(seq, spec, options, xi, accuracy, k); }));
  }
  AuditReport report;
  report.id = id;
  report.seed = seq.seed().to_string();
  report.bits = policy.bits;
  report.k_ref = k_ref;
  for (auto& f : pending) report.rows.push_back(f.get());
  report.summary = summarize(report.rows);
  if (report.summary.computed == 0) {
    throw PrecisionExhausted(id + ": no row in [" + std::to_string(k_lo) + ", " + std::to_string(k_hi) +
                             "] is computable at " + std::to_string(policy.bits) + " bits");
  }
  return report;
}

PrecisionPolicy required_policy(const MarkoffSequence& seq, const std::string& id, int k_lo, int k_hi,
                                const AuditOptions& options) {
  const EstimateSpec& spec = find_estimate(id);
  check_range(spec, seq, k_lo, k_hi);
  double need = 0;
  for (int k = k_lo; k <= k_hi; ++k) need = std::max(need, spec.cost(seq, options, k, 0));
  return PrecisionPolicy::for_accuracy(seq, need);
}

std::vector<AuditReport> audit_registry(const MarkoffSequence& seq, int k_lo, int k_hi, const AuditOptions& options) {
  std::vector<AuditReport> out;
  for (const auto& spec : estimate_registry()) {
    out.push_back(audit_estimate(seq, spec.id, k_lo, k_hi, required_policy(seq, spec.id, k_lo, k_hi, options), options));
  }
  return out;
}

nlohmann::json to_json(const AuditReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.rows) {
    nlohmann::json j{{"id", report.id}, {"seed", report.seed}, {"k", r.k}, {"skipped", r.skipped}};
    if (r.skipped) {
      j["reason"] = r.reason;
    } else {
      j["normalized_error"] = r.normalized_error.center_string(20);
      j["radius"] = r.normalized_error.radius_string();
    }
    if (r.aux) {
      j["one_sided"] = r.aux->center_string(20);
      j["one_sided_applies"] = r.aux_applies;
    }
    rows.push_back(std::move(j));
  }
  const auto& s = report.summary;
  nlohmann::json summary{{"computed", s.computed}, {"skipped", s.skipped},       {"max", s.max},
                         {"median", s.median},     {"max_k_ge_8", s.max_k_ge_8}, {"bounded", s.bounded},
                         {"trend", s.trend},       {"stable", s.stable}};
  if (s.aux_min) {
    summary["one_sided_min"] = *s.aux_min;
    summary["one_sided_flag"] = s.aux_flag;
  }
  return {{"id", report.id}, {"seed", report.seed}, {"bits", report.bits},   {"k_ref", report.k_ref},
          {"rows", rows},    {"summary", summary}};
}

nlohmann::json make_baseline(const std::vector<AuditReport>& reports) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& r : reports) out[r.id] = {{"max", r.summary.max}, {"median", r.summary.median}};
  return out;
}

std::vector<std::string> baseline_mismatches(const std::vector<AuditReport>& reports, const nlohmann::json& baseline,
                                             double rel_tol) {
  auto close = [rel_tol](double a, double b) { return std::fabs(a - b) <= rel_tol * std::max(std::fabs(a), std::fabs(b)); };
  std::vector<std::string> bad;
  for (const auto& r : reports) {
    const auto it = baseline.find(r.id);
    if (it == baseline.end() || !it->contains("max") || !it->contains("median") ||
        !close((*it)["max"].get<double>(), r.summary.max) || !close((*it)["median"].get<double>(), r.summary.median)) {
      bad.push_back(r.id);
    }
  }
  return bad;
}

}  // namespace markoff::auditors

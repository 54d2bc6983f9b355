#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>

#include "markoff/auditors/audit.hpp"
#include "markoff/error.hpp"
#include "markoff/experiments/deg6.hpp"
#include "markoff/experiments/delta.hpp"
#include "markoff/experiments/mj.hpp"
#include "markoff/experiments/scan.hpp"
#include "markoff/matseq/identities.hpp"
#include "markoff/matseq/scalars.hpp"
#include "markoff/matseq/seed_search.hpp"

namespace markoff::cli::detail {

using matseq::IntPoly;
using realfield::PrecisionPolicy;

namespace {

constexpr long kReportedM[6] = {2, 6, 20, 80, 360, 1840};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string idx(int k) { return std::to_string(k); }

CommandReport make(const std::string& command, const std::string& name) {
  CommandReport r;
  r.command = command;
  r.name = name;
  return r;
}

double median_of(std::vector<double> v) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

}  // namespace

PrecisionPolicy Context::policy(const PrecisionPolicy& scheduled) const {
  if (!config.bits) return scheduled;
  if (*config.bits < scheduled.bits) {
    err << "warning: --bits " << *config.bits << " is below the scheduled " << scheduled.bits
        << " bits; rows may be skipped\n";
  }
  return PrecisionPolicy::fixed(*config.bits);
}

CommandReport run_seeds(const Context&, const SeedsArgs& a) {
  auto rep = make("seeds", "seeds");
  rep.config = {{"bound", a.bound}};
  const auto pairs = matseq::seed_search(a.bound);
  const auto canonical = matseq::canonical_seed();
  int admissible = 0;
  bool canonical_ok = false;
  for (const auto& p : pairs) {
    rep.rows.push_back({{"x1", p.x1.to_string()},
                        {"x2", p.x2.to_string()},
                        {"admissible", p.admissible},
                        {"first_valid_index", p.first_valid_index}});
    admissible += p.admissible;
    if (p.x1 == canonical.x1 && p.x2 == canonical.x2) canonical_ok = p.admissible;
  }
  rep.summary = {{"pairs", pairs.size()}, {"admissible", admissible}};
  if (a.bound >= 2) rep.check(canonical_ok, "canonical seed", canonical_ok ? "admissible" : "missing or inadmissible");
  rep.lines.push_back("pairs: " + std::to_string(pairs.size()) + ", admissible: " + std::to_string(admissible));
  return rep;
}

CommandReport run_gen(const Context& c, const GenArgs& a) {
  auto rep = make("gen", "gen");
  rep.config = {{"k_max", a.k_max}};
  c.seq.ensure(a.k_max);
  constexpr double gamma = std::numbers::phi;
  double worst = 0;
  int det_bad = 0;
  for (int k = 1; k <= a.k_max; ++k) {
    const auto& t = c.seq.term(k);
    nlohmann::json row{{"k", k},
                       {"x0", to_dec(t.x0)},
                       {"x1", to_dec(t.x1)},
                       {"x2", to_dec(t.x2)},
                       {"log2_X", c.seq.log2_norm(k)}};
    if (k >= 2 && c.seq.log2_norm(k - 1) > 0) {
      const double ratio = c.seq.log2_norm(k) / c.seq.log2_norm(k - 1);
      row["growth_ratio"] = ratio;
      if (k - 1 >= 10 && k - 1 <= 20) worst = std::max(worst, std::fabs(ratio / gamma - 1));
    }
    if (!t.is_unimodular()) ++det_bad;
    rep.rows.push_back(std::move(row));
  }
  rep.summary = {{"terms", a.k_max}, {"log2_X_max", c.seq.log2_norm(a.k_max)}};
  rep.check(det_bad == 0, "determinant", std::to_string(det_bad) + " terms with det != 1");
  if (a.k_max >= 11) {
    rep.summary["growth_deviation"] = worst;
    rep.check(worst <= 0.02, "growth ratio", "max |ratio/gamma - 1| over k in [10, 20] = " + num(worst));
  }
  return rep;
}

CommandReport run_verify(const Context& c, const VerifyArgs& a) {
  auto rep = make("verify", "verify");
  rep.config = {{"k_max", a.k_max}};
  c.seq.ensure(a.k_max);
  int rows = 0;
  int failures = 0;
  const auto& families = matseq::identity_registry();
  for (const auto& f : families) {
    int fam_fail = 0;
    for (int k = std::max(f.min_k, 1 - f.low_offset); k + f.high_offset <= a.k_max; ++k) {
      const auto r = matseq::verify_exact_identity(c.seq, f.id, k);
      nlohmann::json row{{"family", f.id}, {"k", k}, {"zero", r.is_zero()}};
      if (!r.is_zero()) row["residual"] = r.to_string();
      rep.rows.push_back(std::move(row));
      ++rows;
      fam_fail += !r.is_zero();
    }
    failures += fam_fail;
    if (fam_fail) rep.check(false, f.id, std::to_string(fam_fail) + " nonzero residuals");
  }

  int q_fail = 0;
  for (int k = 2; k + 2 <= a.k_max; ++k) {
    const IntPoly res = matseq::q_three_term_residual(c.seq, k);
    const IntPoly q = matseq::q_polynomial(c.seq, k);
    const bool ok = res == IntPoly{-2 * parity_sign(k)} && (q.content() == 1 || q.content() == 2) &&
                    q.leading() == parity_sign(k - 1) * c.seq.x(k - 1, 0);
    rep.rows.push_back({{"family", "Q-three-term"}, {"k", k}, {"zero", ok}});
    ++rows;
    q_fail += !ok;
  }
  rep.check(q_fail == 0, "Q three-term, content, leading", std::to_string(q_fail) + " failing k");

  int g_fail = 0;
  for (int k = 2; k + 4 <= a.k_max; ++k) {
    const auto g = matseq::gcd_content_check(c.seq, k);
    rep.rows.push_back({{"family", "gcd-content"}, {"k", k}, {"zero", g.all_equal}, {"content_Q", to_dec(g.content_Q)}});
    ++rows;
    g_fail += !g.all_equal;
  }
  rep.check(g_fail == 0, "gcd content", std::to_string(g_fail) + " failing k");
  failures += q_fail + g_fail;

  rep.summary = {{"families", families.size()}, {"rows", rows}, {"failures", failures}};
  rep.lines.push_back("families: " + std::to_string(families.size()) + ", rows: " + std::to_string(rows) +
                      ", failures: " + std::to_string(failures));
  return rep;
}

CommandReport run_audit(const Context& c, const AuditArgs& a) {
  auto rep = make("audit", a.id ? "audit_" + *a.id : "audit");
  rep.config = {{"k_lo", a.k_lo}, {"k_hi", a.k_hi}};
  if (a.id) rep.config["id"] = *a.id;
  std::vector<std::string> ids;
  if (a.id) {
    ids.push_back(auditors::find_estimate(*a.id).id);
  } else {
    for (const auto& e : auditors::estimate_registry()) ids.push_back(e.id);
  }
  std::vector<auditors::AuditReport> reports;
  int skipped = 0;
  for (const auto& id : ids) {
    const auto policy = c.policy(auditors::required_policy(c.seq, id, a.k_lo, a.k_hi));
    auto r = auditors::audit_estimate(c.seq, id, a.k_lo, a.k_hi, policy);
    for (const auto& row : r.rows) {
      nlohmann::json j{{"id", id}, {"k", row.k}, {"skipped", row.skipped}};
      if (row.skipped) {
        j["reason"] = row.reason;
      } else {
        j["value"] = row.normalized_error.center_string(12);
        j["radius"] = row.normalized_error.radius_string();
      }
      rep.rows.push_back(std::move(j));
    }
    const auto& s = r.summary;
    rep.summary[id] = {{"max", s.max},     {"median", s.median},   {"bounded", s.bounded},
                       {"stable", s.stable}, {"skipped", s.skipped}, {"bits", r.bits}};
    rep.check(s.bounded, id, "max " + num(s.max) + ", median " + num(s.median));
    if (s.skipped) rep.lines.push_back("SKIP " + id + ": " + std::to_string(s.skipped) + " rows skipped");
    skipped += s.skipped;
    reports.push_back(std::move(r));
  }
  if (a.baseline) {
    std::ifstream in(*a.baseline);
    if (!in) throw IoError("cannot read baseline " + *a.baseline);
    nlohmann::json base;
    try {
      in >> base;
    } catch (const nlohmann::json::exception& e) {
      throw FormatError("baseline " + *a.baseline + ": " + e.what());
    }
    if (a.id) base = nlohmann::json{{*a.id, base.value(*a.id, nlohmann::json::object())}};
    const auto bad = auditors::baseline_mismatches(reports, base);
    std::string list;
    for (const auto& id : bad) list += (list.empty() ? "" : ", ") + id;
    rep.check(bad.empty(), "baseline", bad.empty() ? "all constants within 1e-6" : "mismatch: " + list);
  }
  if (a.write_baseline) write_file_atomic(*a.write_baseline, auditors::make_baseline(reports).dump(2) + "\n");
  rep.lines.push_back("estimates: " + std::to_string(ids.size()) + ", skipped rows: " + std::to_string(skipped));
  return rep;
}

CommandReport run_delta(const Context& c, const DeltaArgs& a) {
  const IntPoly R = IntPoly::parse_coefficients(a.R);
  auto rep = make("delta", "delta");
  rep.config = {{"R", R.to_coefficient_list()}, {"k_lo", a.k_lo}, {"k_hi", a.k_hi}};
  const auto policy = c.policy(experiments::delta_policy(c.seq, R, a.k_hi));
  const auto d = experiments::delta_points(c.seq, R, policy);
  for (std::size_t l = 0; l < 6; ++l) {
    rep.rows.push_back({{"kind", "delta"},
                        {"ell", l + 1},
                        {"value", d.values[l].center_string(30)},
                        {"radius", d.values[l].radius_string()},
                        {"k_used", d.index_used[l]}});
  }
  rep.summary = experiments::to_json(d);
  if (d.period3_checked) {
    rep.check(d.period3, "period 3", "max |delta_l - delta_{l+3}| + radii = " + num(d.period3_gap));
  }
  if (!R.is_zero()) {
    const int classes = d.period3_checked && d.period3 ? 3 : 6;
    for (int ell = 1; ell <= classes; ++ell) {
      const auto t = experiments::delta_residual_table(c.seq, R, ell, a.k_lo, a.k_hi, policy);
      for (const auto& row : t.rows) {
        nlohmann::json j{{"kind", "residual"}, {"ell", ell}, {"k", row.k}, {"skipped", row.skipped}};
        if (!row.skipped) j["value"] = row.normalized_error.center_d();
        rep.rows.push_back(std::move(j));
      }
      rep.check(t.summary.bounded, "residual ell=" + idx(ell),
                "max " + num(t.summary.max) + ", median " + num(t.summary.median));
    }
  }
  return rep;
}

CommandReport run_convergents(const Context& c, const ConvergentsArgs& a) {
  auto rep = make("convergents", "convergents_ell" + idx(a.ell));
  rep.config = {{"ell", a.ell}, {"k_max", a.k_max}};
  const auto policy = c.policy(experiments::convergent_policy(c.seq, a.k_max));
  const auto t = experiments::delta_convergent_table(c.seq, a.ell, a.k_max, policy);
  const auto j = experiments::to_json(t);
  rep.rows = j.at("rows");
  int designated = 0;
  int close_other = 0;
  for (const auto& r : t.rows) {
    designated += r.designated;
    if (!r.designated && r.scaled < 0.05) ++close_other;
  }
  rep.summary = {{"delta", j.at("delta")}, {"convergents", t.rows.size()}, {"designated", designated}};
  rep.check(designated > 0, "designated convergents", std::to_string(designated) + " found");
  rep.check(close_other == 0, "non-designated separation",
            std::to_string(close_other) + " non-designated rows with q|q delta - p| < 0.05");
  return rep;
}

CommandReport run_mj(const Context& c, const MjArgs& a) {
  auto rep = make("mj", a.j ? "mj_j" + idx(*a.j) : "mj");
  rep.config = {{"m_bound", a.m_bound}, {"k_lo", a.k_lo}, {"k_hi", a.k_hi}, {"threshold", a.threshold}};
  if (a.j) rep.config["j"] = *a.j;
  const experiments::MjOptions opts{a.k_lo, a.k_hi, a.threshold};
  std::vector<int> js;
  if (a.j) {
    js.push_back(*a.j);
  } else {
    for (int j = 1; j <= 6; ++j) js.push_back(j);
  }
  for (int j : js) {
    const auto policy = c.policy(experiments::mj_policy(c.seq, j, a.m_bound, opts));
    const auto r = experiments::mj_search(c.seq, j, a.m_bound, policy, opts);
    auto row = experiments::to_json(r);
    row.erase("products");
    rep.rows.push_back(std::move(row));
    rep.summary["m_" + idx(j)] = r.m;
    rep.lines.push_back("m_" + idx(j) + " = " + std::to_string(r.m) + " (" + (r.unique_in_bound ? "unique" : "not unique") +
                        " in |m| ≤ " + std::to_string(a.m_bound) + ")");
    const long expected = kReportedM[j - 1];
    if (a.m_bound >= expected) {
      rep.check(r.m == expected && r.unique_in_bound, "m_" + idx(j),
                "found " + std::to_string(r.m) + ", reported " + std::to_string(expected));
    }
  }
  return rep;
}

CommandReport run_deg6(const Context& c, const Deg6Args& a) {
  auto rep = make("deg6", "deg6");
  rep.config = {{"k_lo", a.k_lo}, {"k_hi", a.k_hi}};
  const auto policy = c.policy(experiments::deg6_policy(c.seq, a.k_hi));
  const auto recs = experiments::deg6_pipeline(c.seq, a.k_lo, a.k_hi, policy);
  int shape_bad = 0;
  int gcd_bad = 0;
  int computed = 0;
  double min_k_frac = INFINITY;
  std::vector<double> quality;
  for (const auto& r : recs) {
    rep.rows.push_back(experiments::to_json(r));
    if (r.skipped) {
      rep.lines.push_back("SKIP k=" + idx(r.k) + ": " + r.note);
      continue;
    }
    ++computed;
    shape_bad += !r.shape_ok;
    if (r.k >= 10) gcd_bad += !r.gcd_divides_72;
    min_k_frac = std::min(min_k_frac, r.k_frac);
    if (r.quality) quality.push_back(*r.quality);
  }
  const double med = median_of(quality);
  const auto near = std::count_if(quality.begin(), quality.end(), [&](double q) { return q <= 10 * med; });
  rep.summary = {{"records", recs.size()},
                 {"computed", computed},
                 {"min_k_frac", computed ? min_k_frac : 0.0},
                 {"quality_median", med},
                 {"quality_within_10x_median", near}};
  rep.check(computed > 0, "records", std::to_string(computed) + " of " + std::to_string(recs.size()) + " computed");
  rep.check(shape_bad == 0, "shape", std::to_string(shape_bad) + " P_k not of the form 2T^6+a2T^2+a1T+a0");
  rep.check(gcd_bad == 0, "gcd divides 72", std::to_string(gcd_bad) + " failing k >= 10");
  rep.check(computed > 0 && min_k_frac <= 76, "k {x_k0 xi^6}", "min " + num(min_k_frac) + " (bound 76)");
  rep.check(near >= 3, "quality", std::to_string(near) + " values within 10x median " + num(med));
  return rep;
}

CommandReport run_scan(const Context& c, const ScanArgs& a) {
  const bool plus_p = a.mode == "rp";
  auto rep = make("scan", "scan_" + a.mode + "_d" + idx(a.d) + "_H" + std::to_string(a.H));
  rep.config = {{"mode", a.mode}, {"d", a.d}, {"H", a.H}, {"budget", a.budget}};
  std::optional<IntPoly> R;
  if (plus_p) {
    R = IntPoly::parse_coefficients(a.R);
    rep.config["R"] = R->to_coefficient_list();
  }
  experiments::ScanOptions opts;
  opts.budget = a.budget;
  const auto policy = c.policy(PrecisionPolicy::for_accuracy(c.seq, 256));
  const auto r = experiments::brute_scan(c.seq, plus_p ? experiments::ScanMode::r_plus_p : experiments::ScanMode::r_only,
                                         a.d, a.H, policy, R, opts);
  auto j = experiments::to_json(r);
  rep.rows = j.at("top");
  j.erase("top");
  rep.summary = j;
  const bool certified = !r.top.front().abs_value.contains_zero() && r.minimum > 0;
  rep.check(certified, "certified minimum", num(r.minimum) + " at " + r.argmin.to_string());
  if (r.divisibility_checked && r.strong_minimum_nondivisible) {
    rep.check(*r.strong_minimum_nondivisible >= r.strong_minimum, "Q_k dichotomy",
              "min with exponent 1+gamma^2: " + num(r.strong_minimum) + " overall, " +
                  num(*r.strong_minimum_nondivisible) + " without Q_k factors");
  }
  return rep;
}

CommandReport run_lagrange(const Context& c, const LagrangeArgs& a) {
  auto rep = make("lagrange", "lagrange");
  rep.config = {{"n_max", a.n_max}};
  const auto policy = c.policy(experiments::lagrange_policy(c.seq, a.n_max));
  const auto r = experiments::lagrange_scan(c.seq, a.n_max, policy);
  auto j = experiments::to_json(r);
  rep.rows = j.at("smallest");
  j.erase("smallest");
  rep.summary = j;
  const double m = r.smallest.front().value.center_d();
  const std::string detail = num(m) + " at n=" + to_dec(r.smallest.front().n);
  if (a.n_max >= experiments::kLagrangeLinearLimit) {
    rep.check(m >= 0.28 && m <= 0.34, "minimum in [0.28, 0.34]", detail);
  } else {
    rep.lines.push_back("INFO minimum " + detail);
  }
  return rep;
}

CommandReport run_report(const Context& c, const ReportArgs& a) {
  namespace fs = std::filesystem;
  auto rep = make("report", "index");
  const std::string dir = a.dir.value_or(c.config.out_dir);
  rep.config = {{"dir", dir}};
  if (!fs::is_directory(dir)) throw IoError("no report directory " + dir);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().extension() == ".json" && e.path().stem() != "index") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  int failed = 0;
  for (const auto& p : files) {
    std::ifstream in(p);
    nlohmann::json doc;
    try {
      in >> doc;
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(p.string() + ": " + e.what());
    }
    const auto& f = doc.at("failures");
    rep.rows.push_back({{"file", p.filename().string()},
                        {"command", doc.at("command")},
                        {"rows", doc.at("rows").size()},
                        {"failures", f.size()}});
    for (const auto& msg : f) rep.failures.push_back(p.filename().string() + ": " + msg.get<std::string>());
    failed += !f.empty();
    rep.lines.push_back(std::string(f.empty() ? "PASS " : "FAIL ") + p.filename().string() + ": " +
                        std::to_string(f.size()) + " failures");
  }
  rep.summary = {{"reports", files.size()}, {"failed_reports", failed}};
  return rep;
}

}  // namespace markoff::cli::detail

#include "markoff/experiments/scan.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <set>

#include "common.hpp"
#include "markoff/error.hpp"
#include "markoff/matseq/scalars.hpp"
#include "markoff/realfield/functions.hpp"

namespace markoff::experiments {

using matseq::IntPoly;
using matseq::MarkoffSequence;
using realfield::Enclosure;
using realfield::PrecisionPolicy;

namespace {

constexpr double kGamma = std::numbers::phi;
constexpr int kStrongPool = 256;

/// Bounded pool of the n smallest (value, index) pairs.
class SmallestPool {
 public:
  explicit SmallestPool(std::size_t n) : n_(n) {}
  void offer(double v, long idx) {
    if (heap_.size() < n_) {
      heap_.emplace(v, idx);
    } else if (v < heap_.top().first) {
      heap_.pop();
      heap_.emplace(v, idx);
    }
  }
  std::vector<std::pair<double, long>> sorted() const {
    auto h = heap_;
    std::vector<std::pair<double, long>> out;
    while (!h.empty()) {
      out.push_back(h.top());
      h.pop();
    }
    std::reverse(out.begin(), out.end());
    return out;
  }

 private:
  std::size_t n_;
  std::priority_queue<std::pair<double, long>> heap_;
};

/// Base-(2H+1) digits of idx as coefficients in [-H, H].
std::vector<BigInt> decode(long idx, int n, long H) {
  std::vector<BigInt> c(static_cast<std::size_t>(n));
  const long base = 2 * H + 1;
  for (int i = 0; i < n; ++i) {
    c[static_cast<std::size_t>(i)] = idx % base - H;
    idx /= base;
  }
  return c;
}

bool divides(const IntPoly& q, const IntPoly& p) {
  if (q.degree() < 1 || p.degree() < q.degree()) return false;
  std::vector<BigRational> rem;
  for (const auto& c : p.coefficients()) rem.emplace_back(c);
  const BigRational lead(q.leading());
  for (int i = p.degree(); i >= q.degree(); --i) {
    const BigRational f = rem[static_cast<std::size_t>(i)] / lead;
    if (f == 0) continue;
    for (int j = 0; j <= q.degree(); ++j) {
      rem[static_cast<std::size_t>(i - q.degree() + j)] -= f * BigRational(q.coeff(j));
    }
  }
  return std::all_of(rem.begin(), rem.end(), [](const BigRational& v) { return v == 0; });
}

struct Family {
  ScanMode mode;
  int n;  // coefficients enumerated
  long H;
  std::optional<IntPoly> r;

  IntPoly poly(long idx) const {
    IntPoly p(decode(idx, n, H));
    return r ? *r + p : p;
  }
  IntPoly enumerated(long idx) const { return IntPoly(decode(idx, n, H)); }
};

double normalizer(const ScanReport& rep, const IntPoly& enumerated, double r_norm) {
  const double h = static_cast<double>(enumerated.norm().get_d());
  if (rep.mode == ScanMode::r_only) return std::pow(h, rep.exponent);
  return std::pow(1 + h, kGamma) * std::pow(r_norm, rep.exponent);
}

/// p or -p, whichever has a positive leading coefficient.
IntPoly positive(const IntPoly& p) { return p.leading() < 0 ? -p : p; }

/// Certified |p(xi)| with a relative radius below 2^-20.
std::optional<Enclosure> certify(const IntPoly& p, const Enclosure& xi) {
  Enclosure v = realfield::eval_int_poly(p, xi);
  if (v.center().sign() < 0) v = -v;
  if (v.contains_zero() || v.radius_d() > std::ldexp(std::fabs(v.center_d()), -20)) return std::nullopt;
  return v;
}

}  // namespace

const char* to_string(ScanMode m) { return m == ScanMode::r_only ? "R-only" : "R-plus-P"; }

double scan_exponent(int d) {
  if (d <= 3) return std::pow(kGamma, 3);
  return 2 * std::pow(kGamma, d) - kGamma * kGamma;
}

std::vector<int> q_divisors(const MarkoffSequence& seq, const IntPoly& p, int k_max) {
  std::vector<int> out;
  seq.ensure(k_max + 1);
  for (int k = 1; k <= k_max; ++k) {
    if (divides(matseq::q_polynomial(seq, k), p)) out.push_back(k);
  }
  return out;
}

ScanReport brute_scan(const MarkoffSequence& seq, ScanMode mode, int d, long H, const PrecisionPolicy& policy,
                      const std::optional<IntPoly>& fixed_r, const ScanOptions& options) {
  if (H < 1) throw IndexOutOfRange("height bound must be positive");
  ScanReport rep;
  rep.mode = mode;
  rep.H = H;
  Family fam{mode, 0, H, std::nullopt};
  double r_norm = 1;
  if (mode == ScanMode::r_only) {
    if (d < 1 || d > 6) throw IndexOutOfRange("scan degree must be in 1..6, got " + std::to_string(d));
    rep.d = d;
    rep.exponent = scan_exponent(d);
    fam.n = d + 1;
  } else {
    if (!fixed_r || fixed_r->is_zero()) throw IndexOutOfRange("R-plus-P scan needs a nonzero R");
    rep.d = fixed_r->degree();
    rep.exponent = std::pow(kGamma, 4);
    rep.fixed_r = fixed_r;
    fam.n = 3;
    fam.r = fixed_r;
    r_norm = fixed_r->norm().get_d();
  }
  const double count = std::pow(static_cast<double>(2 * H + 1), fam.n);
  if (count > static_cast<double>(options.budget)) {
    throw BudgetExceeded("scan of " + std::to_string(static_cast<long long>(count)) + " candidates exceeds budget " +
                         std::to_string(options.budget));
  }
  const long total = static_cast<long>(count);

  int k_ref = 0;
  Enclosure xi = realfield::xi_for_policy(seq, policy, &k_ref);
  std::vector<double> xp(static_cast<std::size_t>(std::max(rep.d, 2) + 1));
  xp[0] = 1;
  for (std::size_t i = 1; i < xp.size(); ++i) xp[i] = xp[i - 1] * xi.center_d();

  const double strong_exp = 1 + kGamma * kGamma;
  const bool strong = mode == ScanMode::r_only;
  SmallestPool best(static_cast<std::size_t>(options.certify));
  SmallestPool strong_pool(kStrongPool);
  const long base = 2 * H + 1;
  std::vector<double> rc(xp.size(), 0.0);
  if (fam.r) {
    for (int i = 0; i <= fam.r->degree(); ++i) rc[static_cast<std::size_t>(i)] = fam.r->coeff(i).get_d();
  }
  for (long idx = 0; idx < total; ++idx) {
    long rest = idx;
    double v = 0;
    long h = 0;
    for (int i = 0; i < fam.n; ++i) {
      const long c = rest % base - H;
      rest /= base;
      h = std::max(h, std::labs(c));
      v += static_cast<double>(c) * xp[static_cast<std::size_t>(i)];
    }
    for (std::size_t i = 0; i < rc.size(); ++i) {
      v += rc[i] * xp[i];
    }
    if (fam.r ? fam.poly(idx).is_zero() : h == 0) continue;
    v = std::fabs(v);
    const double hd = static_cast<double>(h);
    const double norm = mode == ScanMode::r_only ? std::pow(hd, rep.exponent)
                                                 : std::pow(1 + hd, kGamma) * std::pow(r_norm, rep.exponent);
    best.offer(v * norm, idx);
    if (strong) strong_pool.offer(v * std::pow(hd, strong_exp), idx);
    ++rep.candidates;
  }

  // Certify the double-ranked leaders, doubling precision as needed.
  PrecisionPolicy p = policy;
  for (int attempt = 0;; ++attempt) {
    rep.top.clear();
    bool ok = true;
    for (const auto& [approx, idx] : best.sorted()) {
      const IntPoly poly = fam.poly(idx);
      const auto v = certify(poly, xi);
      if (!v) {
        ok = false;
        break;
      }
      const double n = normalizer(rep, fam.enumerated(idx), r_norm);
      rep.top.push_back({poly, *v, v->center_d() * n});
    }
    if (ok) break;
    if (attempt >= options.max_doublings) {
      throw PrecisionExhausted("scan candidates not separated from zero at " + std::to_string(p.bits) + " bits");
    }
    p.bits *= 2;
    xi = realfield::xi_for_policy(seq, p, &k_ref);
  }
  rep.bits = p.bits;
  std::sort(rep.top.begin(), rep.top.end(),
            [](const ScanCandidate& a, const ScanCandidate& b) { return a.normalized < b.normalized; });
  rep.minimum = rep.top.front().normalized;
  rep.argmin = rep.top.front().poly;
  if (mode == ScanMode::r_only) rep.argmin = positive(rep.argmin);

  if (mode == ScanMode::r_only && rep.d <= 3) {
    rep.divisibility_checked = true;
    rep.argmin_divisible_by = q_divisors(seq, rep.argmin);
  }
  if (strong) {
    const auto pool = strong_pool.sorted();
    rep.strong_minimum = pool.front().first;
    rep.strong_argmin = positive(fam.poly(pool.front().second));
    if (rep.d <= 3) {
      for (const auto& [v, idx] : pool) {
        const IntPoly poly = fam.poly(idx);
        if (q_divisors(seq, poly).empty()) {
          rep.strong_minimum_nondivisible = v;
          rep.strong_argmin_nondivisible = positive(poly);
          break;
        }
      }
    }
  }
  return rep;
}

PrecisionPolicy lagrange_policy(const MarkoffSequence& seq, long n_max) {
  return PrecisionPolicy::for_accuracy(seq, 2 * std::log2(static_cast<double>(std::max(n_max, 2L))) + 64);
}

LagrangeReport lagrange_scan(const MarkoffSequence& seq, long n_max, const PrecisionPolicy& policy,
                             LagrangeMethod method) {
  if (n_max < kLagrangeStart) {
    throw EmptyRange("Lagrange scan starts at n=" + std::to_string(kLagrangeStart) + ", n_max=" +
                     std::to_string(n_max));
  }
  const Enclosure xi_full = realfield::xi_for_policy(seq, policy);
  const double log2_n = std::log2(static_cast<double>(n_max));
  if (detail::log2_real(xi_full.radius()) >= -(2 * log2_n + 1)) {
    throw PrecisionExhausted("xi radius is not below 1/(2 n_max^2) for n_max=" + std::to_string(n_max));
  }
  const long bits = static_cast<long>(2 * log2_n) + 96;
  const Enclosure xi = xi_full.with_bits(bits);

  LagrangeReport rep;
  rep.n_lo = kLagrangeStart;
  rep.n_max = n_max;
  rep.bits = bits;
  rep.via_convergents = method == LagrangeMethod::automatic ? n_max > kLagrangeLinearLimit
                                                            : method == LagrangeMethod::convergents;

  auto value = [&](const BigInt& n) { return realfield::frac_nearest(xi * n).frac * n; };
  std::vector<LagrangeEntry> all;
  auto keep = [&](const BigInt& n) {
    all.push_back({n, value(n)});
    std::sort(all.begin(), all.end(),
              [](const LagrangeEntry& a, const LagrangeEntry& b) { return a.value.center_d() < b.value.center_d(); });
    if (all.size() > 5) all.pop_back();
  };

  if (!rep.via_convergents) {
    for (long n = kLagrangeStart; n <= n_max; ++n) {
      const Enclosure v = value(BigInt(n));
      if (all.size() < 5 || v.center_d() < all.back().value.center_d()) keep(BigInt(n));
    }
  } else {
    // Legendre: n ||n xi|| < 1/2 forces n to be a multiple of a convergent denominator.
    const auto cf = realfield::continued_fraction(xi, 4096);
    const auto conv = realfield::convergents(cf);
    if (conv.empty() || conv.back().get_den() <= n_max) {
      throw PrecisionExhausted("continued fraction of xi does not reach n_max=" + std::to_string(n_max));
    }
    std::set<BigInt> seen;
    for (const auto& c : conv) {
      const BigInt q = c.get_den();
      if (q > n_max) break;
      const double base = value(q).center_d();
      for (BigInt m = 1; m * q <= n_max && BigInt(m * m).get_d() * base < 0.5; ++m) {
        const BigInt n = m * q;
        if (n >= kLagrangeStart && seen.insert(n).second) keep(n);
      }
    }
  }
  if (all.empty()) throw NotFound("no n in range with n ||n xi|| < 1/2");
  rep.smallest = std::move(all);
  return rep;
}

nlohmann::json to_json(const ScanReport& r) {
  nlohmann::json top = nlohmann::json::array();
  for (const auto& c : r.top) {
    top.push_back({{"poly", c.poly.to_string()},
                   {"abs_value", c.abs_value.center_string(20)},
                   {"radius", c.abs_value.radius_string()},
                   {"normalized", c.normalized}});
  }
  nlohmann::json j{{"mode", to_string(r.mode)}, {"d", r.d},          {"H", r.H},
                   {"exponent", r.exponent},     {"candidates", r.candidates}, {"bits", r.bits},
                   {"minimum", r.minimum},       {"argmin", r.argmin.to_string()}, {"top", top}};
  if (r.fixed_r) {
    j["R"] = r.fixed_r->to_string();
    // The same minimum under the reading ||R||^{-gamma^4} of the normalizer.
    const double r_norm = r.fixed_r->norm().get_d();
    j["minimum_opposite_sign"] = r.minimum * std::pow(r_norm, -2 * r.exponent);
  }
  if (r.divisibility_checked) j["argmin_divisible_by_Q"] = r.argmin_divisible_by;
  if (r.mode == ScanMode::r_only) {
    j["strong_exponent"] = 1 + kGamma * kGamma;
    j["strong_minimum"] = r.strong_minimum;
    j["strong_argmin"] = r.strong_argmin.to_string();
    if (r.strong_minimum_nondivisible) {
      j["strong_minimum_nondivisible"] = *r.strong_minimum_nondivisible;
      j["strong_argmin_nondivisible"] = r.strong_argmin_nondivisible.to_string();
    }
  }
  return j;
}

nlohmann::json to_json(const LagrangeReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& e : r.smallest) {
    rows.push_back({{"n", to_dec(e.n)}, {"value", e.value.center_string(20)}, {"radius", e.value.radius_string()}});
  }
  return {{"n_lo", r.n_lo},
          {"n_max", r.n_max},
          {"method", r.via_convergents ? "convergents" : "linear"},
          {"bits", r.bits},
          {"minimum", r.smallest.front().value.center_d()},
          {"argmin", to_dec(r.smallest.front().n)},
          {"smallest", rows}};
}

}  // namespace markoff::experiments

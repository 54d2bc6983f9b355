#include "markoff/experiments/mj.hpp"

#include <algorithm>
#include <cmath>

#include "common.hpp"
#include "markoff/error.hpp"
#include "markoff/realfield/functions.hpp"

namespace markoff::experiments {

using matseq::MarkoffSequence;
using realfield::Enclosure;
using realfield::PrecisionPolicy;

namespace {

BigInt window_product(const MarkoffSequence& seq, int j, int k) {
  BigInt q = 1;
  for (int i = k; i < k + j; ++i) q *= seq.x(i, 0);
  return q * seq.x(k + j + 1, 0);
}

/// Bits of xi accuracy for the row at k.
double row_cost(const MarkoffSequence& seq, int j, long m_bound, int k) {
  return log2_abs(window_product(seq, j, k)) + seq.log2_norm(k + 1) * 2 + std::log2(static_cast<double>(m_bound)) +
         detail::kSlackBits;
}

void check_args(const MarkoffSequence& seq, int j, long m_bound, const MjOptions& o) {
  if (j < 1 || j > 6) throw IndexOutOfRange("j must be in 1..6, got " + std::to_string(j));
  if (m_bound < 1) throw IndexOutOfRange("m_bound must be positive");
  if (o.k_lo > o.k_hi || o.k_lo < 1) throw EmptyRange("bad m_j window");
  seq.ensure(o.k_hi + j + 1);
}

struct Row {
  int k;
  Enclosure b;  // q x_{k+j+1,0} xi^{j+3} reduced mod 1
  Enclosure t;  // x_{k+1,0} xi^3 reduced mod 1
  Enclosure scale;
};

/// min over +- of the normalized value, and the sign achieving it; nullopt
/// when neither nearest integer is decided.
std::optional<std::pair<double, int>> condition(const Row& r, long m) {
  std::optional<std::pair<double, int>> best;
  for (int sign : {1, -1}) {
    const auto f = realfield::frac_nearest(r.b + r.t * BigInt(sign * m));
    if (!f.nearest) continue;
    const double v = (f.frac * r.scale).center_d();
    if (!best || v < best->first) best = std::pair{v, sign};
  }
  return best;
}

}  // namespace

PrecisionPolicy mj_policy(const MarkoffSequence& seq, int j, long m_bound, const MjOptions& options) {
  check_args(seq, j, m_bound, options);
  double need = 0;
  for (int k = options.k_lo; k <= options.k_hi; ++k) need = std::max(need, row_cost(seq, j, m_bound, k));
  return PrecisionPolicy::for_accuracy(seq, need);
}

MjResult mj_search(const MarkoffSequence& seq, int j, long m_bound, const PrecisionPolicy& policy,
                   const MjOptions& options) {
  check_args(seq, j, m_bound, options);
  int k_ref = 0;
  const Enclosure xi = realfield::xi_for_policy(seq, policy, &k_ref);
  const double accuracy = seq.log2_norm(k_ref);

  MjResult out;
  out.j = j;
  out.m_bound = m_bound;
  out.k_lo = options.k_lo;
  out.k_hi = options.k_hi;

  // Largest k first: a wrong m fails there by many orders of magnitude.
  std::vector<Row> rows;
  for (int k = options.k_hi; k >= options.k_lo; --k) {
    const double cost = row_cost(seq, j, m_bound, k);
    if (cost > accuracy) {
      throw PrecisionExhausted("m_" + std::to_string(j) + " at k=" + std::to_string(k) + " needs " +
                               std::to_string(static_cast<long>(cost)) + " bits of xi");
    }
    const long bits = static_cast<long>(std::ceil(cost)) + 64;
    const auto pw = detail::powers(xi, j + 3, bits);
    const BigInt q = window_product(seq, j, k);
    const std::string at = " at k=" + std::to_string(k);
    const long small = static_cast<long>(std::ceil(seq.log2_norm(k + 1) + std::log2(static_cast<double>(m_bound)))) +
                       static_cast<long>(detail::kSlackBits);
    Row r{k, detail::signed_remainder(pw[static_cast<std::size_t>(j + 3)] * q, "product" + at).with_bits(small),
          detail::signed_remainder(pw[3] * seq.x(k + 1, 0), "x_{k+1,0} xi^3" + at).with_bits(small),
          Enclosure::from_integer(seq.norm(k + 1), small)};
    rows.push_back(std::move(r));
    out.product_cached.insert(out.product_cached.begin(), q);
  }

  int passing = 0;
  for (long m = 1; m <= m_bound; ++m) {
    bool ok = true;
    double kappa = 0;
    std::vector<int> signs(rows.size());
    for (std::size_t i = 0; i < rows.size() && ok; ++i) {
      const auto c = condition(rows[i], m);
      if (!c || c->first > options.threshold) {
        ok = false;
      } else {
        kappa = std::max(kappa, c->first);
        signs[rows.size() - 1 - i] = c->second;
      }
    }
    if (!ok) continue;
    if (++passing == 1) {
      out.m = m;
      out.kappa = kappa;
      out.signs = std::move(signs);
    }
  }
  if (passing == 0) {
    throw NotFound("no m with |m| <= " + std::to_string(m_bound) + " keeps the j=" + std::to_string(j) +
                   " condition below " + std::to_string(options.threshold));
  }
  out.unique_in_bound = passing == 1;
  return out;
}

nlohmann::json to_json(const MjResult& r) {
  nlohmann::json products = nlohmann::json::array();
  for (const auto& p : r.product_cached) products.push_back(to_dec(p));
  return {{"j", r.j},
          {"m", r.m},
          {"kappa", r.kappa},
          {"unique_in_bound", r.unique_in_bound},
          {"m_bound", r.m_bound},
          {"window", {r.k_lo, r.k_hi}},
          {"signs", r.signs},
          {"products", products}};
}

}  // namespace markoff::experiments

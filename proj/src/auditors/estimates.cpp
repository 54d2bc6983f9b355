#include "markoff/auditors/estimates.hpp"

#include <algorithm>
#include <utility>

#include "markoff/error.hpp"
#include "markoff/matseq/scalars.hpp"
#include "markoff/realfield/functions.hpp"
#include "markoff/realfield/precision.hpp"

namespace markoff::auditors {

using matseq::IntPoly;
using matseq::MarkoffSequence;

namespace {

constexpr double kSlackBits = 72;

using Normalizer = decltype(EstimateSpec::normalizer);
using ValueFn = decltype(EstimateSpec::value);

double log2_rational(const BigRational& q) { return log2_abs(q.get_num()) - log2_abs(q.get_den()); }

BigInt power(const BigInt& b, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

/// X_{k+a}^e.
Normalizer norm_pow(int a, unsigned long e) {
  return [=](const MarkoffSequence& s, const AuditOptions&, int k) { return BigRational(power(s.norm(k + a), e)); };
}

/// 1 / X_{k+a}.
Normalizer inv_norm(int a) {
  return [=](const MarkoffSequence& s, const AuditOptions&, int k) { return BigRational(BigInt(1), s.norm(k + a)); };
}

Enclosure term(const RowContext& c, const BigInt& coef, int p) { return c.pw.at(static_cast<std::size_t>(p)) * coef; }

Enclosure rational(const RowContext& c, const BigRational& q) { return Enclosure::from_rational(q, c.bits); }

RowValue single(Enclosure e) {
  RowValue r;
  r.candidates.push_back(std::move(e));
  return r;
}

/// R(xi) scaled by an integer, evaluated from the power table.
Enclosure scaled_poly(const RowContext& c, const IntPoly& r, const BigInt& scale) {
  Enclosure acc(c.bits);
  for (int i = 0; i <= r.degree(); ++i) acc = acc + term(c, scale * r.coeff(i), i);
  return acc;
}

struct Builder {
  std::vector<EstimateSpec> out;

  /// Registers an estimate whose cost is the bit size of the coefficients
  /// x_{k+o} multiplying the powers of xi, plus the normalizer and `extra`.
  void add(std::string id, std::string description, bool mod_one, int min_k, int low, int footprint,
           Normalizer normalizer, std::vector<int> offsets, ValueFn value,
           std::function<double(const AuditOptions&)> extra = nullptr) {
    EstimateSpec e;
    e.id = std::move(id);
    e.description = std::move(description);
    e.mod_one = mod_one;
    e.min_k = min_k;
    e.low_offset = low;
    e.footprint = footprint;
    e.normalizer = normalizer;
    e.cost = [normalizer, offsets = std::move(offsets), extra](const MarkoffSequence& s, const AuditOptions& o, int k,
                                                               double) {
      double bits = kSlackBits + std::max(0.0, log2_rational(normalizer(s, o, k)));
      for (int off : offsets) bits += s.log2_norm(k + off);
      if (extra) bits += extra(o);
      return bits;
    };
    e.value = std::move(value);
    out.push_back(std::move(e));
  }
};

double log2_norm_of(const IntPoly& r) { return std::max(0.0, log2_abs(r.norm())); }

/// Largest k' = k (mod 6), k' >= k + 6, whose {x_{k',0} R(xi)} fits in the
/// xi accuracy; k + 6 when none does.
int delta_surrogate(const MarkoffSequence& s, const AuditOptions& o, int k, double accuracy) {
  const double fixed = kSlackBits + log2_norm_of(o.r_general) + s.log2_norm(k);
  int best = k + 6;
  for (int kk = k + 6; kk + 1 <= s.cap(); kk += 6) {
    if (realfield::predicted_log2_norm(s, kk) + fixed > accuracy * 1.01) break;
    s.ensure(kk);
    if (s.log2_norm(kk) + fixed > accuracy) break;
    best = kk;
  }
  return best;
}

std::vector<EstimateSpec> build() {
  Builder b;
  auto x = [](const RowContext& c, int i, int j) -> const BigInt& { return c.seq.x(i, j); };

  // A_k..F_k estimates: x_{k,i} x_{k+d,2} xi against the integers A_k..F_k.
  b.add("L2.3a", "x_{k,0}x_{k+2,2}xi = A_k + O(1/X_{k+1})", false, 2, -1, 4, norm_pow(1, 1), {0, 2},
        [x](const RowContext& c, int k) {
          const auto d = matseq::derived_scalars(c.seq, k);
          return single(term(c, x(c, k, 0) * x(c, k + 2, 2), 1) - d.A);
        });
  b.add("L2.3b", "x_{k,1}x_{k+2,2}xi = B_k - (-1)^k x_{k+1,2}xi + O(1/X_{k+1})", false, 2, -1, 4, norm_pow(1, 1),
        {0, 2}, [x](const RowContext& c, int k) {
          const auto d = matseq::derived_scalars(c.seq, k);
          return single(term(c, x(c, k, 1) * x(c, k + 2, 2), 1) - d.B + term(c, parity_sign(k) * x(c, k + 1, 2), 1));
        });
  b.add("L2.3c", "x_{k,0}x_{k+1,2}xi = C_k + O(1/X_{k-1})", false, 2, -1, 4, norm_pow(-1, 1), {0, 1},
        [x](const RowContext& c, int k) {
          const auto d = matseq::derived_scalars(c.seq, k);
          return single(term(c, x(c, k, 0) * x(c, k + 1, 2), 1) - d.C);
        });
  b.add("L2.3d", "x_{k,1}x_{k+1,2}xi = D_k - (-1)^k x_{k-1,2}xi + O(1/X_{k-1})", false, 2, -1, 4, norm_pow(-1, 1),
        {0, 1}, [x](const RowContext& c, int k) {
          const auto d = matseq::derived_scalars(c.seq, k);
          return single(term(c, x(c, k, 1) * x(c, k + 1, 2), 1) - d.D + term(c, parity_sign(k) * x(c, k - 1, 2), 1));
        });
  b.add("L2.3e", "x_{k,0}x_{k+4,2}xi = E_k + O(1/X_{k+2})", false, 2, -1, 4, norm_pow(2, 1), {0, 4},
        [x](const RowContext& c, int k) {
          const auto d = matseq::derived_scalars(c.seq, k);
          return single(term(c, x(c, k, 0) * x(c, k + 4, 2), 1) - d.E);
        });
  b.add("L2.3f", "x_{k,1}x_{k+4,2}xi = F_k - (-1)^k x_{k+2,2}xi + O(1/X_{k+2})", false, 2, -1, 4, norm_pow(2, 1),
        {0, 4}, [x](const RowContext& c, int k) {
          const auto d = matseq::derived_scalars(c.seq, k);
          return single(term(c, x(c, k, 1) * x(c, k + 4, 2), 1) - d.F + term(c, parity_sign(k) * x(c, k + 2, 2), 1));
        });

  b.add("L2.4i", "x_{k,0}x_{k+2,0}xi^4 = B_k - 2(-1)^k x_{k+1,2}xi + O(1/X_{k+1})", false, 2, -1, 4,
        norm_pow(1, 1), {0, 2}, [x](const RowContext& c, int k) {
          const auto d = matseq::derived_scalars(c.seq, k);
          return single(term(c, x(c, k, 0) * x(c, k + 2, 0), 4) - d.B +
                        term(c, 2 * parity_sign(k) * x(c, k + 1, 2), 1));
        });
  b.add("L2.4ii", "x_{k,0}x_{k+1,0}x_{k+3,0}xi^5 = -6x_{k+1,2}xi + O(1/X_{k+1}) mod Z", true, 1, 0, 3,
        norm_pow(1, 1), {0, 1, 3}, [x](const RowContext& c, int k) {
          return single(term(c, x(c, k, 0) * x(c, k + 1, 0) * x(c, k + 3, 0), 5) + term(c, 6 * x(c, k + 1, 2), 1));
        });
  b.add("L2.4iii", "x_{k,0}x_{k+1,2}x_{k+3,2}xi = -2x_{k+1,2}xi + O(1/X_{k+1}) mod Z", true, 1, 0, 3,
        norm_pow(1, 1), {0, 1, 3}, [x](const RowContext& c, int k) {
          return single(term(c, x(c, k, 0) * x(c, k + 1, 2) * x(c, k + 3, 2), 1) + term(c, 2 * x(c, k + 1, 2), 1));
        });

  for (int j = 0; j <= 3; ++j) {
    b.add("L3.1i.j" + std::to_string(j), "{(x_{k+3,0}+x_{k,0})xi^" + std::to_string(j) + "} << 1/X_k", true, 1, 0,
          3, norm_pow(0, 1), {3}, [x, j](const RowContext& c, int k) {
            return single(term(c, x(c, k + 3, 0) + x(c, k, 0), j));
          });
  }
  for (int j = 0; j <= 5; ++j) {
    b.add("L3.1ii.j" + std::to_string(j), "{(x_{k+6,0}-x_{k,0})xi^" + std::to_string(j) + "} << 1/X_k", true, 1, 0,
          6, norm_pow(0, 1), {6}, [x, j](const RowContext& c, int k) {
            return single(term(c, x(c, k + 6, 0) - x(c, k, 0), j));
          });
  }

  {
    EstimateSpec e;
    e.id = "P3.2";
    e.description = "|delta_k(R(xi)) - {x_{k,0}R(xi)}| << ||R||/X_k";
    e.min_k = 1;
    e.footprint = 6;
    e.normalizer = [](const MarkoffSequence& s, const AuditOptions& o, int k) {
      return BigRational(s.norm(k), o.r_general.norm());
    };
    e.cost = [](const MarkoffSequence& s, const AuditOptions& o, int k, double accuracy) {
      const int kk = delta_surrogate(s, o, k, accuracy);
      s.ensure(kk);
      return kSlackBits + log2_norm_of(o.r_general) + s.log2_norm(k) + s.log2_norm(kk);
    };
    e.value = [x](const RowContext& c, int k) {
      const int kk = delta_surrogate(c.seq, c.options, k, c.xi_accuracy_bits);
      const auto far = realfield::frac_nearest(scaled_poly(c, c.options.r_general, x(c, kk, 0)));
      const auto near = realfield::frac_nearest(scaled_poly(c, c.options.r_general, x(c, k, 0)));
      return single(far.frac - near.frac);
    };
    b.out.push_back(std::move(e));
  }

  b.add("Q4.1.val", "|Q_k(xi)| << 1/X_{k+2}", false, 1, 0, 2, norm_pow(2, 1), {0, 1},
        [](const RowContext& c, int k) {
          const IntPoly q = matseq::q_polynomial(c.seq, k);
          return single(scaled_poly(c, q, 1));
        });
  b.add("Q4.1.norm", "||Q_k|| << X_{k-1}", false, 2, -1, 1, inv_norm(-1), {}, [](const RowContext& c, int k) {
    return single(Enclosure::from_integer(matseq::q_polynomial(c.seq, k).norm(), c.bits));
  });
  b.add("Q4.1.deriv", "|Q_k'(xi)| << X_{k-1}", false, 2, -1, 1, inv_norm(-1), {0, 1},
        [](const RowContext& c, int k) {
          return single(scaled_poly(c, matseq::q_polynomial(c.seq, k).derivative(), 1));
        });

  // Lower-bound lemma for cubic R: the approximation behind it is audited as
  // an estimate, and X_k {x_{k+d,0} R(xi)} rides along as the one-sided value.
  for (const int d : {2, 4}) {
    const char* suffix = d == 2 ? "a" : "b";
    const int half = d / 2;
    b.add(
        std::string("L5.1") + suffix,
        "x_{k,0}x_{k+" + std::to_string(d) + ",0}R(xi) = r_3 " + (d == 2 ? "A_k" : "E_k") + " + x_{k,0}p_{k+" +
            std::to_string(d) + "} + O(||R||/X_{k+" + std::to_string(half) + "})",
        false, 2, -1, 4,
        [half](const MarkoffSequence& s, const AuditOptions& o, int k) {
          return BigRational(s.norm(k + half), o.r_cubic.norm());
        },
        {0, d},
        [x, d](const RowContext& c, int k) {
          const IntPoly& r = c.options.r_cubic;
          if (r.degree() != 3) throw DegreeTooHigh("L5.1 needs a cubic R, got " + r.to_string());
          const auto sc = matseq::derived_scalars(c.seq, k);
          const BigInt& x0 = x(c, k, 0);
          const BigInt p = r.coeff(2) * x(c, k + d, 2) + r.coeff(1) * x(c, k + d, 1) + r.coeff(0) * x(c, k + d, 0);
          RowValue v = single(scaled_poly(c, r, x0 * x(c, k + d, 0)) - r.coeff(3) * (d == 2 ? sc.A : sc.E) - x0 * p);
          const auto f = realfield::frac_nearest(scaled_poly(c, r, x(c, k + d, 0)));
          v.aux = f.frac * Enclosure::from_integer(c.seq.norm(k), c.bits);
          v.aux_applies = (2 * r.coeff(3)) % x0 != 0;
          return v;
        },
        [](const AuditOptions& o) { return log2_norm_of(o.r_cubic) + 4; });
  }

  for (int j = 1; j <= 6; ++j) {
    std::vector<int> offsets;
    for (int i = 0; i < j; ++i) offsets.push_back(i);
    offsets.push_back(j + 1);
    b.add(
        "C6.1.j" + std::to_string(j),
        "min over +- of {x_{k,0}..x_{k+" + std::to_string(j - 1) + ",0}x_{k+" + std::to_string(j + 1) + ",0}xi^" +
            std::to_string(j + 3) + " +- m_" + std::to_string(j) + " x_{k+1,0}xi^3} << 1/X_{k+1}",
        true, 1, 0, j + 1, norm_pow(1, 1), offsets,
        [x, j](const RowContext& c, int k) {
          BigInt q = 1;
          for (int i = k; i < k + j; ++i) q *= x(c, i, 0);
          const Enclosure lhs = term(c, q * x(c, k + j + 1, 0), j + 3);
          const Enclosure t = term(c, c.options.m[static_cast<std::size_t>(j - 1)] * x(c, k + 1, 0), 3);
          RowValue v;
          v.candidates = {lhs + t, lhs - t};
          return v;
        },
        [j](const AuditOptions& o) { return log2_abs(BigInt(o.m[static_cast<std::size_t>(j - 1)])); });
  }

  b.add("L7.1i", "x_{k,0}^2 xi = x_{k,0}x_{k,1} - (-1)^k/3 + O(1/X_k^2)", false, 1, 0, 0, norm_pow(0, 2), {0, 0},
        [x](const RowContext& c, int k) {
          return single(term(c, x(c, k, 0) * x(c, k, 0), 1) - x(c, k, 0) * x(c, k, 1) +
                        rational(c, BigRational(parity_sign(k), 3)));
        });
  b.add("L7.1ii", "x_{k,0}x_{k,1} xi = x_{k,1}^2 - (-1)^k xi/3 + O(1/X_k^2)", false, 1, 0, 0, norm_pow(0, 2),
        {0, 0}, [x](const RowContext& c, int k) {
          return single(term(c, x(c, k, 0) * x(c, k, 1), 1) - x(c, k, 1) * x(c, k, 1) +
                        c.pw[1] * rational(c, BigRational(parity_sign(k), 3)));
        });
  b.add("L7.1iii", "x_{k,0}x_{k,2} xi = x_{k,1}x_{k,2} - (-1)^k xi^2/3 + O(1/X_k^2)", false, 1, 0, 0,
        norm_pow(0, 2), {0, 0}, [x](const RowContext& c, int k) {
          return single(term(c, x(c, k, 0) * x(c, k, 2), 1) - x(c, k, 1) * x(c, k, 2) +
                        c.pw[2] * rational(c, BigRational(parity_sign(k), 3)));
        });
  b.add("L7.1iv", "x_{k,1}^2 xi = x_{k,1}x_{k,2} - xi - (-1)^k xi^2/3 + O(1/X_k^2)", false, 1, 0, 0,
        norm_pow(0, 2), {0, 0}, [x](const RowContext& c, int k) {
          return single(term(c, x(c, k, 1) * x(c, k, 1), 1) - x(c, k, 1) * x(c, k, 2) + c.pw[1] +
                        c.pw[2] * rational(c, BigRational(parity_sign(k), 3)));
        });
  b.add("L7.1v", "x_{k,1}x_{k,2} xi = x_{k,2}^2 - xi^2 - (-1)^k xi^3/3 + O(1/X_k^2)", false, 1, 0, 0,
        norm_pow(0, 2), {0, 0}, [x](const RowContext& c, int k) {
          return single(term(c, x(c, k, 1) * x(c, k, 2), 1) - x(c, k, 2) * x(c, k, 2) + c.pw[2] +
                        c.pw[3] * rational(c, BigRational(parity_sign(k), 3)));
        });

  b.add("L7.3i", "x_{k,0}x_{k+3,2}xi = -2xi + O(1/X_{k+1}^2) mod Z", true, 1, 0, 3, norm_pow(1, 2), {0, 3},
        [x](const RowContext& c, int k) {
          return single(term(c, x(c, k, 0) * x(c, k + 3, 2), 1) + term(c, 2, 1));
        });
  b.add("L7.3ii", "x_{k,0}x_{k+3,2}xi^2 = -4xi^2 + O(1/X_{k+1}^2) mod Z", true, 1, 0, 3, norm_pow(1, 2), {0, 3},
        [x](const RowContext& c, int k) {
          return single(term(c, x(c, k, 0) * x(c, k + 3, 2), 2) + term(c, 4, 2));
        });
  b.add("L7.3iii", "x_{k,1}x_{k+3,2}xi = -3(-1)^k xi - xi^2 + O(1/X_{k+1}^2) mod Z", true, 1, 0, 3,
        norm_pow(1, 2), {0, 3}, [x](const RowContext& c, int k) {
          return single(term(c, x(c, k, 1) * x(c, k + 3, 2), 1) + term(c, 3 * parity_sign(k), 1) + c.pw[2]);
        });

  b.add("P7.4.sigma",
        "sigma_k = -18(-1)^k(2D_{k+1}xi + 12x_{k,0}xi^3 + (-1)^k x_{k+3,0}xi^4) + O(1/X_k) mod Z", true, 1, 0, 6,
        norm_pow(0, 1), {6}, [x](const RowContext& c, int k) {
          const int s = parity_sign(k);
          const auto d = matseq::derived_scalars(c.seq, k + 1);
          const Enclosure sigma = term(c, x(c, k + 6, 0) - x(c, k, 0), 6);
          const Enclosure bracket =
              term(c, 2 * d.D, 1) + term(c, 12 * x(c, k, 0), 3) + term(c, s * x(c, k + 3, 0), 4);
          return single(sigma + bracket * BigInt(18 * s));
        },
        [](const AuditOptions&) { return 8.0; });
  b.add("C7.5.delta", "{sigma_k - sigma_{k+6}} << 1/X_k", true, 1, 0, 12, norm_pow(0, 1), {12},
        [x](const RowContext& c, int k) {
          return single(term(c, 2 * x(c, k + 6, 0) - x(c, k, 0) - x(c, k + 12, 0), 6));
        });
  b.add("P7.6.i", "x_{k-2,0}sigma_k = -36(-1)^k x_{k-1,2}xi + O(1/X_{k-1}) mod Z", true, 4, -2, 6, norm_pow(-1, 1),
        {-2, 6}, [x](const RowContext& c, int k) {
          return single(term(c, x(c, k - 2, 0) * (x(c, k + 6, 0) - x(c, k, 0)), 6) +
                        term(c, 36 * parity_sign(k) * x(c, k - 1, 2), 1));
        });
  b.add("P7.6.ii", "x_{k-3,0}sigma_k = O(1/X_{k-2}^2) mod Z", true, 4, -3, 6, norm_pow(-2, 2), {-3, 6},
        [x](const RowContext& c, int k) {
          return single(term(c, x(c, k - 3, 0) * (x(c, k + 6, 0) - x(c, k, 0)), 6));
        });

  b.add("L7.9i", "x_{k,0}x_{k+1,0}x_{k+2,2}x_{k+4,2}xi^2 = 8(-1)^k x_{k+1,2}xi + O(1/X_{k+1}) mod Z", true, 1, 0, 4,
        norm_pow(1, 1), {0, 1, 2, 4}, [x](const RowContext& c, int k) {
          return single(term(c, x(c, k, 0) * x(c, k + 1, 0) * x(c, k + 2, 2) * x(c, k + 4, 2), 2) -
                        term(c, 8 * parity_sign(k) * x(c, k + 1, 2), 1));
        });
  b.add("L7.9ii", "x_{k,0}x_{k+1,0}x_{k+2,0}x_{k+4,0}xi^6 = 20(-1)^k x_{k+1,2}xi + O(1/X_{k+1}) mod Z", true, 1, 0,
        4, norm_pow(1, 1), {0, 1, 2, 4}, [x](const RowContext& c, int k) {
          return single(term(c, x(c, k, 0) * x(c, k + 1, 0) * x(c, k + 2, 0) * x(c, k + 4, 0), 6) -
                        term(c, 20 * parity_sign(k) * x(c, k + 1, 2), 1));
        });

  return std::move(b.out);
}

}  // namespace

const std::vector<EstimateSpec>& estimate_registry() {
  static const std::vector<EstimateSpec> registry = build();
  return registry;
}

const EstimateSpec& find_estimate(const std::string& id) {
  for (const auto& e : estimate_registry()) {
    if (e.id == id) return e;
  }
  throw UnknownEstimate("no estimate registered as '" + id + "'");
}

}  // namespace markoff::auditors

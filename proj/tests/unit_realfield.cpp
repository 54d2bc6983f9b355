#include <gtest/gtest.h>

#include <random>

#include "markoff/error.hpp"
#include "markoff/matseq/scalars.hpp"
#include "markoff/matseq/seed_search.hpp"
#include "markoff/realfield/functions.hpp"

using namespace markoff;
using namespace markoff::realfield;
using markoff::matseq::IntPoly;

namespace {

// xi to 60 digits, computed independently from x_{15,1}/x_{15,0} with mpmath.
const char* kXiDigits = "0.586603302948274681541069029476655474605589106166083569010912";

const matseq::MarkoffSequence& seq() {
  static const matseq::MarkoffSequence s = [] {
    auto q = matseq::canonical_sequence();
    q.ensure(20);
    return q;
  }();
  return s;
}

BigRational rat(long p, long q) { return BigRational(p, q); }

}  // namespace

TEST(Enclosure, ArithmeticContainsExactResult) {
  const auto a = Enclosure::from_rational(rat(1, 3), 64);
  const auto b = Enclosure::from_rational(rat(2, 7), 64);
  EXPECT_TRUE((a + b).contains(rat(13, 21)));
  EXPECT_TRUE((a - b).contains(rat(1, 21)));
  EXPECT_TRUE((a * b).contains(rat(2, 21)));
  EXPECT_TRUE((a / b).contains(rat(7, 6)));
  EXPECT_TRUE((a * BigInt(10)).contains(rat(10, 3)));
  EXPECT_TRUE((a + BigInt(5)).contains(rat(16, 3)));
  EXPECT_TRUE(a.pow(5).contains(rat(1, 243)));
  EXPECT_THROW(a / Enclosure::from_double(0.0, 0.1, 64), InvariantViolation);
}

TEST(Enclosure, ExactIntegersHaveZeroRadius) {
  const auto e = Enclosure::from_integer(BigInt(12345), 64);
  EXPECT_TRUE(e.radius().is_zero());
  const auto big = Enclosure::from_integer(BigInt("123456789012345678901234567890"), 32);
  EXPECT_FALSE(big.radius().is_zero());
  EXPECT_TRUE(big.contains(BigRational(BigInt("123456789012345678901234567890"))));
}

TEST(Enclosure, IntersectAndContain) {
  const auto a = Enclosure::from_double(1.0, 0.5, 64);
  const auto b = Enclosure::from_double(1.4, 0.05, 64);
  const auto c = Enclosure::from_double(3.0, 0.1, 64);
  EXPECT_TRUE(a.intersects(b));
  EXPECT_TRUE(a.contains(b));
  EXPECT_FALSE(a.intersects(c));
  EXPECT_FALSE(b.contains(a));
}

TEST(Xi, EnclosureAtSeven) {
  const auto policy = PrecisionPolicy::fixed(300);
  const auto e = xi_enclosure(seq(), 7, policy);
  EXPECT_NEAR(e.center_d(), 0.5866033, 1e-7);
  EXPECT_LE(e.radius_d(), (1.0 / 37666) * (1 + 1e-12));
  EXPECT_TRUE(e.intersects(Enclosure::from_decimal(kXiDigits, "1e-59", 256)));
  const auto e5 = xi_enclosure(seq(), 5, policy);
  EXPECT_TRUE(e5.intersects(e));
}

TEST(Xi, SuccessiveEnclosuresNest) {
  const auto policy = PrecisionPolicy::fixed(2000);
  for (int k = 5; k < 16; ++k) {
    const auto a = xi_enclosure(seq(), k, policy);
    const auto b = xi_enclosure(seq(), k + 1, policy);
    EXPECT_TRUE(a.intersects(b));
    EXPECT_LT(b.radius_d(), a.radius_d());
  }
}

TEST(Xi, Errors) {
  EXPECT_THROW(xi_enclosure(seq(), 12, PrecisionPolicy::fixed(300)), PrecisionExhausted);
  EXPECT_THROW(xi_enclosure(seq(), 4, PrecisionPolicy::fixed(300)), IndexOutOfRange);
}

TEST(Xi, ForPolicyPicksLargestIndex) {
  int k_ref = 0;
  auto s = matseq::canonical_sequence();
  const auto e = xi_for_policy(s, PrecisionPolicy::fixed(600), &k_ref);
  EXPECT_LE(s.log2_norm(k_ref) + 256, 600);
  EXPECT_GT(s.log2_norm(k_ref + 1) + 256, 600);
  EXPECT_TRUE(e.intersects(Enclosure::from_decimal(kXiDigits, "1e-59", 256)));
}

TEST(Precision, Schedules) {
  auto s = matseq::canonical_sequence();
  s.ensure(12);
  const auto p = PrecisionPolicy::for_index(s, 10);
  EXPECT_EQ(p.bits, static_cast<long>(std::ceil(8 * predicted_log2_norm(s, 16))) + 256);
  EXPECT_NEAR(predicted_log2_norm(s, 16), 0.578 * std::pow((1 + std::sqrt(5.0)) / 2, 16), 20);
  const auto acc = PrecisionPolicy::for_accuracy(s, 1000);
  EXPECT_GE(s.log2_norm(acc.k_max), 1000);
  EXPECT_LT(s.log2_norm(acc.k_max - 1), 1000);
  EXPECT_NO_THROW(xi_enclosure(s, acc.k_max, acc));
}

TEST(Frac, Examples) {
  auto r = frac_nearest(Enclosure::from_double(3.25, 0, 64));
  EXPECT_EQ(r.frac.center_d(), 0.25);
  ASSERT_TRUE(r.nearest);
  EXPECT_EQ(*r.nearest, 3);

  r = frac_nearest(Enclosure::from_double(-0.4, 0.01, 64));
  EXPECT_NEAR(r.frac.center_d(), 0.4, 1e-12);
  EXPECT_NEAR(r.frac.radius_d(), 0.01, 1e-12);
  ASSERT_TRUE(r.nearest);
  EXPECT_EQ(*r.nearest, 0);

  r = frac_nearest(Enclosure::from_double(2.5, 0.001, 64));
  EXPECT_FALSE(r.nearest);
  EXPECT_GE(r.frac.lower().to_double(), 0.499 - 1e-12);
  EXPECT_LE(r.frac.upper().to_double(), 0.5 + 1e-12);

  EXPECT_THROW(frac_nearest(Enclosure::from_double(1.0, 0.25, 64)), RadiusTooLarge);
}

TEST(Frac, ShiftInvarianceAndRange) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-50, 50);
  for (int i = 0; i < 200; ++i) {
    const auto e = Enclosure::from_double(u(rng), 1e-6, 128);
    const auto r = frac_nearest(e);
    const auto shifted = frac_nearest(e + BigInt(1000003));
    EXPECT_GE(r.frac.center_d(), 0.0);
    EXPECT_LE(r.frac.center_d(), 0.5 + r.frac.radius_d());
    EXPECT_EQ(mpfr_cmp(r.frac.center().get(), shifted.frac.center().get()), 0);
  }
}

TEST(EvalPoly, Examples) {
  const IntPoly golden{-1, -1, 1};
  const auto g = eval_int_poly(golden, Enclosure::from_decimal("1.6180339887", "1e-9", 128));
  EXPECT_TRUE(g.contains_zero());
  EXPECT_LE(2 * g.radius_d(), 1e-8);

  const auto xi = xi_enclosure(seq(), 9, PrecisionPolicy::fixed(384));
  const auto q5 = eval_int_poly(matseq::q_polynomial(seq(), 5), xi);
  // Independent oracle: Q_5(xi) from the 60-digit xi above.
  const auto oracle = Enclosure::from_decimal("-0.0000530983164012476843589634416069756262117266", "1e-45", 256);
  EXPECT_TRUE(q5.contains(oracle));
  EXPECT_LE(2 * q5.radius_d(), 1e-6);

  const auto zero = eval_int_poly(IntPoly{}, xi);
  EXPECT_TRUE(zero.center().is_zero());
  EXPECT_TRUE(zero.radius().is_zero());
}

TEST(EvalPoly, SoundOnRandomRationals) {
  const IntPoly p{-7, 9, 5, -3, 1};
  const auto e = Enclosure::from_rational(rat(3, 5), 96).widened(Real(64, 1e-3));
  const auto val = eval_int_poly(p, e);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> off(-999, 999);
  for (int i = 0; i < 100; ++i) {
    const BigRational r = rat(3, 5) + BigRational(off(rng), 1000000);
    BigRational v = 0;
    for (int j = p.degree(); j >= 0; --j) v = v * r + BigRational(p.coeff(j));
    EXPECT_TRUE(val.contains(v));
  }
}

TEST(RefineRoot, Textbook) {
  const auto policy = PrecisionPolicy::fixed(512);
  const auto r2 = refine_root(IntPoly{-2, 0, 1}, Enclosure::from_double(1.4, 0.1, 64), policy);
  EXPECT_LT(r2.radius_d(), 1e-140);
  const auto sq = r2 * r2;
  EXPECT_TRUE(sq.contains(BigRational(2)));

  const auto g = refine_root(IntPoly{-1, -1, 1}, Enclosure::from_double(1.6, 0.1, 64), policy);
  EXPECT_NEAR(g.center_d(), (1 + std::sqrt(5.0)) / 2, 1e-15);
  EXPECT_TRUE(eval_int_poly(IntPoly{-1, -1, 1}, g).contains_zero());
}

TEST(RefineRoot, Errors) {
  const auto policy = PrecisionPolicy::fixed(256);
  EXPECT_THROW(refine_root(IntPoly{0, 0, 1}, Enclosure::from_double(0.0, 0.1, 64), policy), DerivativeVanishes);
  EXPECT_THROW(refine_root(IntPoly{1, 0, 1}, Enclosure::from_double(0.3, 0.01, 64), policy), markoff::Error);
}

TEST(ContinuedFraction, Examples) {
  EXPECT_EQ(continued_fraction(rat(7, 3), 10), (std::vector<BigInt>{2, 3}));
  EXPECT_EQ(continued_fraction(Enclosure::from_rational(rat(7, 4), 64), 10), (std::vector<BigInt>{1, 1, 3}));

  const auto xi = xi_enclosure(seq(), 12, PrecisionPolicy::fixed(768));
  const auto cf = continued_fraction(xi, 12);
  const std::vector<BigInt> expected{0, 1, 1, 2, 2, 1, 1, 2, 2, 2, 2, 1};
  ASSERT_GE(cf.size(), 5u);
  for (std::size_t i = 0; i < cf.size(); ++i) EXPECT_EQ(cf[i], expected[i]);

  EXPECT_LE(continued_fraction(Enclosure::from_double(0.3, 0.25, 64), 5).size(), 1u);
}

TEST(ContinuedFraction, ConvergentWithinClassicalBound) {
  const auto xi = xi_enclosure(seq(), 14, PrecisionPolicy::fixed(4096));
  const auto cf = continued_fraction(xi, 40);
  ASSERT_GE(cf.size(), 3u);
  const auto conv = convergents(cf);
  const BigRational& last = conv.back();
  BigRational center;
  mpfr_get_q(center.get_mpq_t(), xi.center().get());
  // |x - p_n/q_n| < 1/(q_n q_{n+1}) <= 1/q_n^2.
  const BigRational err = abs(center - last);
  EXPECT_LT(err, BigRational(1, last.get_den() * last.get_den()));
}

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "markoff/error.hpp"
#include "markoff/experiments/deg6.hpp"
#include "markoff/experiments/delta.hpp"
#include "markoff/experiments/mj.hpp"
#include "markoff/experiments/scan.hpp"
#include "markoff/matseq/scalars.hpp"
#include "markoff/matseq/seed_search.hpp"

using namespace markoff;
using namespace markoff::experiments;
using matseq::IntPoly;
using realfield::PrecisionPolicy;

namespace {

const matseq::MarkoffSequence& seq() {
  static const matseq::MarkoffSequence s = [] {
    auto q = matseq::canonical_sequence();
    q.ensure(30);
    return q;
  }();
  return s;
}

double dist_to_int(double v) { return std::fabs(v - std::round(v)); }

}  // namespace

// Oracles in this file: gmpy2 at 120000 bits with xi = x_{28,1}/x_{28,0},
// delta_l read off {x_{k,0} xi^3} at the largest k = l (mod 6) below 24.
TEST(Delta, CubeValuesMatchOracle) {
  const IntPoly t3 = IntPoly::monomial(3);
  const auto d = delta_points(seq(), t3, delta_policy(seq(), t3, 14));
  const double oracle[3] = {0.034642032426966055610813939945, 0.200923910157701915832410903348,
                            0.413794934424703347901988029221};
  for (int l = 0; l < 3; ++l) {
    EXPECT_NEAR(d.values[static_cast<std::size_t>(l)].center_d(), oracle[l], 1e-15);
    EXPECT_LT(d.values[static_cast<std::size_t>(l)].radius_d(), 1e-60);
  }
  ASSERT_TRUE(d.period3_checked);
  EXPECT_TRUE(d.period3);
  EXPECT_LE(d.period3_gap, std::ldexp(1.0, -64));
}

TEST(Delta, SquareAccumulatesAtZero) {
  const IntPoly t2 = IntPoly::monomial(2);
  const auto d = delta_points(seq(), t2, delta_policy(seq(), t2, 14));
  for (const auto& v : d.values) EXPECT_TRUE(v.contains_zero());
}

TEST(Delta, FractionalPartProperties) {
  const IntPoly t3 = IntPoly::monomial(3);
  const auto policy = delta_policy(seq(), t3, 14);
  const auto d1 = delta_points(seq(), t3, policy);
  const auto d2 = delta_points(seq(), t3.scaled(2), policy);
  const auto shifted = delta_points(seq(), t3 + IntPoly{5}, policy);
  const auto plus_zero = delta_points(seq(), t3 + IntPoly{0, 0, 0}, policy);
  for (std::size_t l = 0; l < 6; ++l) {
    EXPECT_NEAR(d2.values[l].center_d(), dist_to_int(2 * d1.values[l].center_d()), 1e-14) << l;
    EXPECT_TRUE(shifted.values[l].intersects(d1.values[l])) << l;
    EXPECT_TRUE(plus_zero.values[l].intersects(d1.values[l])) << l;
  }
}

TEST(Delta, PeriodSixForGeneralQuintic) {
  const IntPoly r{3, -2, 5, 1, -4, 7};
  const auto d = delta_points(seq(), r, delta_policy(seq(), r, 14));
  EXPECT_FALSE(d.period3_checked);
  for (const auto& v : d.values) {
    EXPECT_GE(v.center_d(), 0.0);
    EXPECT_LE(v.center_d(), 0.5);
  }
}

TEST(Delta, ResidualTableIsBounded) {
  const IntPoly t3 = IntPoly::monomial(3);
  const auto rep = delta_residual_table(seq(), t3, 1, 7, 22, delta_policy(seq(), t3, 20));
  EXPECT_EQ(rep.summary.skipped, 0);
  EXPECT_TRUE(rep.summary.bounded);
  EXPECT_TRUE(rep.summary.stable);
  for (const auto& row : rep.rows) EXPECT_EQ((row.k - 1) % 3, 0);
}

TEST(Delta, Errors) {
  EXPECT_THROW(delta_points(seq(), IntPoly::monomial(6), PrecisionPolicy::fixed(4096)), DegreeTooHigh);
  EXPECT_THROW(delta_points(seq(), IntPoly{3, -2, 5, 1, -4, 7}, PrecisionPolicy::fixed(512)), PrecisionExhausted);
  EXPECT_THROW(delta_residual_table(seq(), IntPoly::monomial(3), 7, 4, 10, PrecisionPolicy::fixed(4096)),
               IndexOutOfRange);
  EXPECT_THROW(delta_convergent_table(seq(), 4, 10, PrecisionPolicy::fixed(4096)), IndexOutOfRange);
}

TEST(Convergents, DesignatedRowsMatchSequenceEntries) {
  const auto t = delta_convergent_table(seq(), 1, 17, convergent_policy(seq(), 17));
  std::vector<int> full, half;
  for (const auto& r : t.rows) {
    if (r.designated) (r.denominator_class == DenominatorClass::full ? full : half).push_back(r.k);
    if (!r.designated) EXPECT_GE(r.scaled, 0.05) << to_dec(r.q);
    if (r.error_times_x_k2) EXPECT_NEAR(*r.error_times_x_k2, 2.0, 0.1) << r.k;
  }
  EXPECT_EQ(full, (std::vector<int>{2, 5, 6, 8, 9, 12, 14, 17}));
  EXPECT_EQ(half, (std::vector<int>{11, 15}));
}

TEST(Convergents, GoodApproximationsAreDesignated) {
  const auto policy = convergent_policy(seq(), 17);
  for (int ell = 1; ell <= 3; ++ell) {
    const auto t = delta_convergent_table(seq(), ell, 17, policy);
    int designated = 0;
    for (const auto& r : t.rows) {
      if (r.scaled < 0.05) EXPECT_TRUE(r.designated) << ell << " " << to_dec(r.q);
      designated += r.designated;
    }
    EXPECT_GE(designated, 9) << ell;
  }
}

TEST(Mj, ConstantsAndUniqueness) {
  const long expected[6] = {2, 6, 20, 80, 360, 1840};
  for (int j = 1; j <= 6; ++j) {
    const auto r = mj_search(seq(), j, 4000, mj_policy(seq(), j, 4000));
    EXPECT_EQ(r.m, expected[j - 1]) << j;
    EXPECT_TRUE(r.unique_in_bound) << j;
    EXPECT_LE(r.kappa, MjOptions{}.threshold);
    EXPECT_EQ(r.signs.size(), 11u);
  }
}

TEST(Mj, WindowInvariantForProvenConstants) {
  for (int j = 1; j <= 3; ++j) {
    const MjOptions shifted{9, 20};
    const auto a = mj_search(seq(), j, 200, mj_policy(seq(), j, 200));
    const auto b = mj_search(seq(), j, 200, mj_policy(seq(), j, 200, shifted), shifted);
    EXPECT_EQ(a.m, b.m) << j;
  }
}

TEST(Mj, Errors) {
  EXPECT_THROW(mj_search(seq(), 2, 5, mj_policy(seq(), 2, 5)), NotFound);
  EXPECT_THROW(mj_search(seq(), 7, 10, PrecisionPolicy::fixed(4096)), IndexOutOfRange);
  EXPECT_THROW(mj_search(seq(), 6, 4000, PrecisionPolicy::fixed(2000)), PrecisionExhausted);
  EXPECT_THROW(mj_search(seq(), 1, 10, PrecisionPolicy::fixed(4096), MjOptions{8, 6}), EmptyRange);
}

TEST(Deg6, PolynomialMatchesOracle) {
  const auto recs = deg6_pipeline(seq(), 10, 10, deg6_policy(seq(), 10));
  ASSERT_EQ(recs.size(), 1u);
  const auto& r = recs.front();
  ASSERT_FALSE(r.skipped) << r.note;
  const IntPoly expected(std::vector<BigInt>{BigInt("-432757306481679242884"), BigInt("558419563898044753712"),
                                             BigInt("305682928910703761472"), 0, 0, 0, 2});
  EXPECT_EQ(r.P, expected);
  EXPECT_EQ(r.gcd_t, 2);
  ASSERT_TRUE(r.root.has_value());
  EXPECT_LT(std::fabs(r.root->center_d() - 0.5866033029482747), 1e-10);
}

TEST(Deg6, ShapeGcdAndScanOverWindow) {
  const auto recs = deg6_pipeline(seq(), 8, 18, deg6_policy(seq(), 18));
  double min_k_frac = INFINITY;
  std::vector<double> quality;
  for (const auto& r : recs) {
    ASSERT_FALSE(r.skipped) << r.k << ": " << r.note;
    EXPECT_TRUE(r.shape_ok) << r.k;
    EXPECT_TRUE(has_deg6_shape(r.P)) << r.k;
    if (r.k >= 10) EXPECT_TRUE(r.gcd_divides_72) << r.k;
    EXPECT_LE(std::fabs(r.delta_bar.center_d()), 0.5);
    min_k_frac = std::min(min_k_frac, r.k_frac);
    ASSERT_TRUE(r.quality.has_value()) << r.k;
    quality.push_back(*r.quality);
  }
  EXPECT_LE(min_k_frac, 76.0);
  // k {x_{16,0} xi^6} from the gmpy2 oracle.
  EXPECT_NEAR(recs[8].k_frac, 0.5665359397003058, 1e-12);
  std::vector<double> sorted = quality;
  std::sort(sorted.begin(), sorted.end());
  const double median = sorted[sorted.size() / 2];
  EXPECT_GE(std::count_if(quality.begin(), quality.end(), [&](double q) { return q <= 10 * median; }), 3);
}

TEST(Deg6, ThreeTermShapeForEveryK) {
  for (int k = 2; k <= 20; ++k) {
    const IntPoly P = deg6_polynomial(seq(), k, BigInt(k), BigInt(k + 1), BigInt(-k));
    EXPECT_EQ(P.leading(), 2);
    EXPECT_EQ(P.coeff(3), 0);
  }
  EXPECT_THROW(deg6_polynomial(seq(), 1, 1, 1, 1), IndexOutOfRange);
  EXPECT_THROW(deg6_pipeline(seq(), 3, 5, PrecisionPolicy::fixed(4096)), IndexOutOfRange);
  EXPECT_THROW(deg6_pipeline(seq(), 9, 8, PrecisionPolicy::fixed(4096)), EmptyRange);
}

TEST(Deg6, LowPrecisionSkipsRecords) {
  const auto recs = deg6_pipeline(seq(), 8, 18, PrecisionPolicy::fixed(8192));
  EXPECT_FALSE(recs.front().skipped);
  EXPECT_TRUE(recs.back().skipped);
  EXPECT_FALSE(recs.back().note.empty());
}

TEST(Scan, LinearCandidate) {
  const auto r = brute_scan(seq(), ScanMode::r_only, 1, 1, PrecisionPolicy::fixed(512));
  EXPECT_EQ(r.argmin, (IntPoly{-1, 1}));
  EXPECT_NEAR(r.minimum, 0.41339669705172531846, 1e-15);
}

TEST(Scan, CubicMinimumAndDivisibility) {
  const auto policy = PrecisionPolicy::fixed(512);
  double previous = INFINITY;
  for (long H : {2L, 4L, 8L, 12L}) {
    const auto r = brute_scan(seq(), ScanMode::r_only, 3, H, policy);
    EXPECT_EQ(r.candidates, static_cast<long>(std::pow(2 * H + 1, 4)) - 1);
    EXPECT_GT(r.minimum, 0);
    EXPECT_LE(r.minimum, previous);
    previous = r.minimum;
    for (std::size_t i = 1; i < r.top.size(); ++i) EXPECT_LE(r.top[i - 1].normalized, r.top[i].normalized);
  }
  const auto r = brute_scan(seq(), ScanMode::r_only, 3, 12, policy);
  // Exhaustive float scan in the Python oracle gives the same minimum.
  EXPECT_NEAR(r.minimum, 0.04064765637410678, 1e-12);
  EXPECT_EQ(r.argmin, (IntPoly{0, -1, 1, 1}));
  ASSERT_TRUE(r.divisibility_checked);
  EXPECT_EQ(r.argmin_divisible_by, std::vector<int>{3});
  EXPECT_EQ(r.argmin, (matseq::q_polynomial(seq(), 3) * IntPoly{0, 1}));
  ASSERT_TRUE(r.strong_minimum_nondivisible.has_value());
  EXPECT_NEAR(*r.strong_minimum_nondivisible, 0.119004, 1e-5);
  EXPECT_TRUE(q_divisors(seq(), r.strong_argmin_nondivisible).empty());
}

TEST(Scan, PlusPModeAndHighDegree) {
  const auto policy = PrecisionPolicy::fixed(512);
  const auto rp = brute_scan(seq(), ScanMode::r_plus_p, 3, 10, policy, IntPoly::monomial(3));
  EXPECT_EQ(rp.candidates, 21 * 21 * 21);
  EXPECT_GT(rp.minimum, 0);
  EXPECT_EQ(rp.argmin.leading(), 1);
  const auto r6 = brute_scan(seq(), ScanMode::r_only, 6, 2, policy);
  EXPECT_GT(r6.minimum, 0);
  EXPECT_FALSE(r6.divisibility_checked);
  EXPECT_DOUBLE_EQ(r6.exponent, scan_exponent(6));
}

TEST(Scan, Errors) {
  const auto policy = PrecisionPolicy::fixed(512);
  EXPECT_THROW(brute_scan(seq(), ScanMode::r_only, 6, 12, policy), BudgetExceeded);
  EXPECT_THROW(brute_scan(seq(), ScanMode::r_only, 7, 1, policy), IndexOutOfRange);
  EXPECT_THROW(brute_scan(seq(), ScanMode::r_plus_p, 3, 4, policy), IndexOutOfRange);
}

TEST(Lagrange, MinimumNearOneThird) {
  const auto r = lagrange_scan(seq(), 1'000'000, lagrange_policy(seq(), 1'000'000));
  EXPECT_TRUE(r.via_convergents);
  ASSERT_EQ(r.smallest.size(), 5u);
  EXPECT_EQ(r.smallest.front().n, 37666);
  EXPECT_NEAR(r.smallest.front().value.center_d(), 0.33333333335943917782, 1e-15);
  EXPECT_GE(r.smallest.front().value.center_d(), 0.28);
  EXPECT_LE(r.smallest.front().value.center_d(), 0.34);
  EXPECT_EQ(r.smallest[1].n, 562467);
}

TEST(Lagrange, LinearSweepAgreesWithConvergents) {
  const auto policy = lagrange_policy(seq(), 100'000);
  const auto lin = lagrange_scan(seq(), 100'000, policy, LagrangeMethod::linear);
  const auto cf = lagrange_scan(seq(), 100'000, policy, LagrangeMethod::convergents);
  EXPECT_FALSE(lin.via_convergents);
  ASSERT_EQ(lin.smallest.size(), cf.smallest.size());
  for (std::size_t i = 0; i < lin.smallest.size(); ++i) {
    EXPECT_EQ(lin.smallest[i].n, cf.smallest[i].n);
    EXPECT_TRUE(lin.smallest[i].value.intersects(cf.smallest[i].value));
  }
}

TEST(Lagrange, Errors) {
  EXPECT_THROW(lagrange_scan(seq(), 1, PrecisionPolicy::fixed(512)), EmptyRange);
  EXPECT_THROW(lagrange_scan(seq(), 1'000'000, PrecisionPolicy::fixed(300)), PrecisionExhausted);
}

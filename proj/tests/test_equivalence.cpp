#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "aplab/equivalence.hpp"
#include "aplab/error.hpp"

using namespace aplab;

namespace {

SampledSeries series(int rmin, int rmax, const std::function<std::int64_t(int)>& f) {
  return synthetic_series<SampledSeries>(rmin, rmax, f);
}

// Direct check of the inequalities, independent of the library's evaluator.
bool holds(const SampledSeries& p1, const SampledSeries& p2, const EquivalenceWitness& w) {
  for (int r = w.rmin; r <= w.rmax; ++r) {
    const auto v = p1.certified_value(r);
    if (!v || !p2.certified_value(r)) continue;
    const double x = double(*v);
    auto at = [&](long s) -> std::optional<double> {
      if (s < 1) return std::nullopt;
      const auto q = p2.certified_value(int(s));
      if (!q) return std::nullopt;
      return double(*q);
    };
    std::optional<double> lo, hi;
    switch (w.form) {
      case WitnessForm::Multiplicative:
        lo = at(long(std::floor(w.m * r)));
        hi = at(long(std::ceil(w.M * r)));
        if (!lo || !hi || w.C1 * *lo > x || x > w.C2 * *hi) return false;
        break;
      case WitnessForm::Additive:
        lo = at(long(r) - w.a);
        hi = at(long(r) + w.b);
        if (!lo || !hi || w.m * *lo > x || x > w.M * *hi) return false;
        break;
      case WitnessForm::Offset:
        lo = at(long(r) - w.a);
        hi = at(long(r) + w.b);
        if (!lo || !hi || *lo - w.K > x || x > *hi + w.K) return false;
        break;
    }
  }
  return true;
}

}  // namespace

TEST(Witness, IdenticalSeriesHaveUnitConstants) {
  const auto p = series(1, 30, [](int r) { return 3 * r + 2; });
  for (auto form : {WitnessForm::Multiplicative, WitnessForm::Additive, WitnessForm::Offset}) {
    const auto w = search_witness(p, p, 1, 30, form);
    EXPECT_TRUE(w.pass) << to_string(form);
    EXPECT_EQ(w.a, 0);
    EXPECT_EQ(w.b, 0);
    EXPECT_EQ(w.K, 0);
    if (form != WitnessForm::Offset) {
      EXPECT_EQ(w.m, 1);
      EXPECT_EQ(w.M, 1);
    }
    EXPECT_EQ(w.C1, 1);
    EXPECT_EQ(w.C2, 1);
  }
}

TEST(Witness, LinearVersusDoubleLinear) {
  const auto p1 = series(1, 40, [](int r) { return r + 1; });
  const auto p2 = series(1, 40, [](int r) { return 2 * r + 1; });
  const auto w = search_witness(p1, p2, 1, 20, WitnessForm::Multiplicative);
  ASSERT_TRUE(w.pass);
  EXPECT_EQ(w.C1, 0.5);
  EXPECT_EQ(w.m, 1);
  EXPECT_EQ(w.C2, 1);
  EXPECT_EQ(w.M, 1);
  EXPECT_TRUE(holds(p1, p2, w));
  EXPECT_EQ(int(w.residuals.size()), 20);
}

TEST(Witness, SwappedWitnessStillHolds) {
  const auto p1 = series(1, 200, [](int r) { return r + 1; });
  const auto p2 = series(1, 200, [](int r) { return 3 * r + 5; });
  const auto w = search_witness(p1, p2, 4, 40, WitnessForm::Multiplicative);
  ASSERT_TRUE(w.pass);
  const auto s = w.swapped();
  // The swapped scales reach radii up to 40 / m; keep the range inside both series.
  const auto back = evaluate_witness(p2, p1, s, 4, 40);
  EXPECT_TRUE(back.pass);
  EXPECT_TRUE(holds(p2, p1, back));
}

TEST(Witness, RandomMonotoneSeriesProperty) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 40; ++t) {
    std::int64_t a = 1, b = 1;
    SampledSeries p1, p2;
    for (int r = 1; r <= 80; ++r) {
      a += 1 + std::int64_t(rng() % 4);
      b += 1 + std::int64_t(rng() % 4);
      p1.set(r, a, true);
      p2.set(r, b, true);
    }
    for (auto form : {WitnessForm::Multiplicative, WitnessForm::Additive, WitnessForm::Offset}) {
      const auto w = search_witness(p1, p2, 4, 40, form);
      // Whatever the search reports must agree with a direct evaluation.
      EXPECT_EQ(w.pass, holds(p1, p2, w)) << to_string(form);
      EXPECT_EQ(evaluate_witness(p1, p2, w, 4, 40).pass, w.pass);
    }
  }
}

TEST(Witness, FailureKeepsResiduals) {
  const auto p1 = series(1, 40, [](int r) { return std::int64_t(r) * r * r; });
  const auto p2 = series(1, 40, [](int) { return 1; });
  const auto w = search_witness(p1, p2, 1, 40, WitnessForm::Offset);
  EXPECT_FALSE(w.pass);
  EXPECT_FALSE(w.residuals.empty());
}

TEST(Witness, NoOverlapIsRangeError) {
  const auto p1 = series(1, 10, [](int r) { return r; });
  const auto p2 = series(20, 30, [](int r) { return r; });
  EXPECT_THROW(search_witness(p1, p2, 1, 30, WitnessForm::Additive), RangeError);
  EXPECT_THROW(evaluate_witness(p1, p2, EquivalenceWitness{}, 1, 30), RangeError);
}

TEST(Witness, UncertifiedTargetsAreViolations) {
  auto p2 = series(1, 20, [](int r) { return r; });
  p2.entries[11].certified = false;
  const auto p1 = series(1, 20, [](int r) { return r; });
  EquivalenceWitness w;
  w.form = WitnessForm::Additive;
  w.b = 1;
  const auto e = evaluate_witness(p1, p2, w, 1, 19);
  EXPECT_FALSE(e.pass);
  bool saw_nan = false;
  for (const auto& res : e.residuals) saw_nan |= std::isnan(res.upper_slack);
  EXPECT_TRUE(saw_nan);
}

TEST(Witness, FormNames) {
  for (auto form : {WitnessForm::Multiplicative, WitnessForm::Additive, WitnessForm::Offset})
    EXPECT_EQ(witness_form_from_string(to_string(form)), form);
  EXPECT_THROW(witness_form_from_string("affine"), PreconditionError);
}

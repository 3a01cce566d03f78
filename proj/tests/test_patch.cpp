#include <gtest/gtest.h>

#include <map>
#include <random>

#include "aplab/io.hpp"
#include "aplab/patch.hpp"
#include "oracles.hpp"

using namespace aplab;

namespace {

Configuration random_config(std::mt19937_64& rng, int d, int w, int h, int letters) {
  std::vector<std::string> names;
  for (int i = 0; i < letters; ++i) names.push_back(std::string(1, char('a' + i)));
  Grid<SymbolId> g(w, d == 2 ? h : 1);
  for (auto& s : g.data()) s = SymbolId(rng() % std::uint64_t(letters));
  return Configuration(d, std::make_shared<const Alphabet>(names), std::move(g));
}

}  // namespace

TEST(Patch, KeyFormat) {
  const auto alpha = std::make_shared<const Alphabet>(std::vector<std::string>{"a", "b"});
  Grid<SymbolId> g(3, 3);
  g(0, 0) = 1;  // first row (y = 0) is "baa"
  Configuration c(2, alpha, g);
  EXPECT_EQ(patch_key(c, {1, 1}, 1), "baa/aaa/aaa");
  EXPECT_EQ(patch_key(c, {0, 0}, 0), "b");

  const auto multi = std::make_shared<const Alphabet>(std::vector<std::string>{"NE", "SW"});
  Grid<SymbolId> m(3, 1);
  m(2, 0) = 1;
  EXPECT_EQ(patch_key(Configuration(1, multi, m), {1, 0}, 1), "NE,NE,SW");
}

TEST(Patch, HashDependsOnSideAndSymbols) {
  Patch a{1, 2, {0, 1}}, b{1, 2, {0, 1}}, c{1, 2, {1, 0}};
  EXPECT_EQ(a.hash(), b.hash());
  EXPECT_NE(a.hash(), c.hash());
}

TEST(Patch, ExtractRejectsOutOfWindow) {
  std::mt19937_64 rng(1);
  const auto c = random_config(rng, 1, 10, 1, 2);
  EXPECT_THROW(extract_patch(c, {8, 0}, 3), PreconditionError);
  EXPECT_NO_THROW(extract_patch(c, {7, 0}, 3));
}

// Labels are equal exactly when the patches are equal.
TEST(Classifier, LabelsMatchPairwiseComparison) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 6; ++trial) {
    const int d = trial % 2 ? 2 : 1;
    const auto c = random_config(rng, d, d == 2 ? 18 : 120, 14, 2 + trial % 2);
    PatchClassifier pc(c);
    for (int side = 1; side <= 6; ++side) {
      if (side > 1) pc.grow();
      ASSERT_EQ(pc.side(), side);
      const Box A = pc.anchors();
      std::map<int, Patch> seen;
      for (int y = A.y0; y < A.y1(); ++y)
        for (int x = A.x0; x < A.x1(); ++x) {
          const Patch p = extract_patch(c, {x, y}, side);
          auto [it, fresh] = seen.emplace(pc.label({x, y}), p);
          if (!fresh) {
            EXPECT_EQ(it->second, p);
          }
        }
      EXPECT_EQ(std::size_t(pc.label_count()), seen.size());
      EXPECT_EQ(std::size_t(pc.label_count()), oracle::pairwise_patch_count(c, side));
    }
  }
}

TEST(Classifier, FirstOccurrenceNumbering) {
  const auto alpha = std::make_shared<const Alphabet>(std::vector<std::string>{"a", "b"});
  Grid<SymbolId> g(5, 1);
  g.data() = {1, 1, 0, 1, 0};
  const Configuration c(1, alpha, g);
  PatchClassifier pc(c);
  EXPECT_EQ(pc.label({0, 0}), 0);
  EXPECT_EQ(pc.label({2, 0}), 1);
  pc.grow();
  // bb ba ab ba
  EXPECT_EQ(pc.label({0, 0}), 0);
  EXPECT_EQ(pc.label({1, 0}), 1);
  EXPECT_EQ(pc.label({2, 0}), 2);
  EXPECT_EQ(pc.label({3, 0}), 1);
}

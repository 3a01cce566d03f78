#include <gtest/gtest.h>

#include "aplab/counting.hpp"
#include "aplab/derivation.hpp"
#include "aplab/io.hpp"
#include "aplab/patch.hpp"
#include "oracles.hpp"

using namespace aplab;

namespace {

std::string fixture(const std::string& rel) {
  return read_file(std::string(APLAB_FIXTURE_DIR) + "/" + rel);
}
SubstitutionRule rule(const std::string& name) { return parse_rule(fixture("rules/" + name + ".json")); }
BlockCode code(const std::string& name) { return parse_code(fixture("codes/" + name + ".json")); }

BlockCode identity_code(const Configuration& c, int radius) {
  return tabulate_code(c, "identity", radius, c.alphabet_ptr(), [](const Configuration& k, Cell x) {
    return k.alphabet().name(k[x]);
  });
}

}  // namespace

TEST(BlockCode, IdentityReproducesTheWindow) {
  const auto c = expand_certified(rule("thue_morse"), "0", 9, 16);
  const auto id = identity_code(c, 2);
  const auto out = apply_code(c, id);
  EXPECT_EQ(out.width(), c.width() - 4);
  EXPECT_EQ(out.origin(), (Cell{2, 0}));
  EXPECT_EQ(out.certified_radius(), c.certified_radius() - 4);
  for (int x = 0; x < out.width(); ++x) EXPECT_EQ(out.at(x), c.at(x + 2));
  ASSERT_EQ(out.provenance().derivations.size(), 1u);
  EXPECT_EQ(out.provenance().derivations[0], "identity");
}

TEST(BlockCode, ThueMorseFlipKeepsComplexity) {
  const auto c = expand_certified(rule("thue_morse"), "0", 10, 24);
  const auto flipped = apply_code(c, code("thue_morse_flip"));
  for (int x = 0; x < c.width(); ++x) EXPECT_NE(flipped.at(x), c.at(x));
  const auto p = complexity(c, 20), q = complexity(flipped, 20);
  for (int n = 1; n <= 20; ++n) EXPECT_EQ(p.entries.at(n).value, q.entries.at(n).value);
  EXPECT_TRUE(mld_check(c, code("thue_morse_flip"), code("thue_morse_flip")).mld);
}

TEST(BlockCode, TwoGramShiftsComplexity) {
  const auto c = expand_certified(rule("fibonacci"), "a", 14, 40);
  const auto g = apply_code(c, code("fibonacci_2gram"));
  EXPECT_EQ(g.certified_radius(), c.certified_radius() - 2);
  const std::string w = oracle::word_of(c);
  for (int x = 0; x < g.width(); ++x)
    EXPECT_EQ(g.alphabet().name(g.at(x)), w.substr(std::size_t(x + 1), 2));
  const auto p = complexity(c, 31), q = complexity(g, 30);
  for (int n = 1; n <= 30; ++n) EXPECT_EQ(*q.certified_value(n), *p.certified_value(n + 1)) << n;
  EXPECT_TRUE(mld_check(c, code("fibonacci_2gram"), code("fibonacci_2gram_inverse")).mld);
}

TEST(BlockCode, CollapseIsNotMld) {
  const auto c = expand_certified(rule("fibonacci"), "a", 10, 20);
  const auto one = std::make_shared<const Alphabet>(std::vector<std::string>{"a"});
  const auto collapse = tabulate_code(c, "collapse", 0, one, [](const Configuration&, Cell) { return "a"; });
  const auto back = tabulate_code(apply_code(c, collapse), "back", 0, c.alphabet_ptr(),
                                  [](const Configuration&, Cell) { return "a"; });
  const auto r = mld_check(c, collapse, back);
  EXPECT_FALSE(r.mld);
  ASSERT_TRUE(r.failing_cell);
  EXPECT_EQ(c.alphabet().name(c[*r.failing_cell - c.origin()]), "b");
}

TEST(BlockCode, MissingEntryIsReported) {
  const auto c = expand_certified(rule("fibonacci"), "a", 10, 20);
  auto partial = code("fibonacci_2gram");
  partial.table.erase("aba");
  try {
    apply_code(c, partial);
    FAIL() << "expected IncompleteTableError";
  } catch (const IncompleteTableError& e) {
    EXPECT_EQ(e.patch(), "aba");
  }
}

TEST(BlockCode, ShiftEquivariant) {
  // Coding a cropped window equals cropping the coded window.
  const auto c = expand_certified(rule("thue_morse"), "0", 9, 16);
  const auto k = tabulate_code(c, "pairs", 1, c.alphabet_ptr(), [](const Configuration& z, Cell x) {
    return z.at(x.x - 1) == z.at(x.x + 1) ? "1" : "0";
  });
  const auto full = apply_code(c, k);
  for (int shift : {1, 7, 33}) {
    const auto part = apply_code(crop(c, {shift, 0, 100, 1}, 10), k);
    for (int x = 0; x < part.width(); ++x)
      EXPECT_EQ(part.at(x), full.at(x + shift)) << shift;
    EXPECT_EQ(part.origin(), (c.origin() + Cell{shift + 1, 0}));
  }
}

TEST(Pointing, MarkAll) {
  const auto c = expand_certified(rule("fibonacci"), "a", 10, 20);
  const auto s = apply_pointing(c, PointingRule::all());
  EXPECT_EQ(s.discreteness, 1);
  EXPECT_EQ(s.covering_radius, 0);
  EXPECT_EQ(s.marks.size(), c.size());
}

TEST(Pointing, FibonacciLetterB) {
  const auto c = expand_certified(rule("fibonacci"), "a", 12, 20);
  const auto s = apply_pointing(c, PointingRule::symbols({"b"}));
  EXPECT_EQ(s.discreteness, 2);  // "bb" never occurs
  EXPECT_LE(s.covering_radius, 2);
  for (const Cell& m : s.marks) EXPECT_EQ(c.alphabet().name(c[m]), "b");
}

TEST(Pointing, EvenLattice) {
  const auto c = expand_certified(rule("thue_morse"), "0", 8, 12);
  const auto s = apply_pointing(c, PointingRule::lattice(2, 0));
  EXPECT_EQ(s.discreteness, 2);
  EXPECT_EQ(s.covering_radius, 1);
  for (const Cell& m : s.marks) EXPECT_EQ((m.x + c.origin().x) % 2, 0);
}

TEST(Pointing, UnionIdentities) {
  const auto c = expand_certified(rule("thue_morse"), "0", 8, 12);
  const auto zero = PointingRule::symbols({"0"}), one = PointingRule::symbols({"1"});
  const auto both = apply_pointing(c, union_pointing(zero, one));
  EXPECT_EQ(both.marks.size(), c.size());
  const auto self = apply_pointing(c, union_pointing(zero, zero));
  EXPECT_EQ(self.marks, apply_pointing(c, zero).marks);
  const auto t = PointingRule::table(1, {{"001", true}});
  EXPECT_EQ(union_pointing(zero, t).radius(), 1);
}

TEST(Pointing, TableRuleAndErrors) {
  const auto c = expand_certified(rule("fibonacci"), "a", 10, 20);
  const auto none = PointingRule::symbols({"c"});
  EXPECT_THROW(apply_pointing(c, none), NotRelativelyDenseError);
  const auto partial = PointingRule::table(1, {{"aba", true}});
  EXPECT_THROW(apply_pointing(c, partial), IncompleteTableError);
  const auto full = PointingRule::table(1, {{"aab", false}, {"aba", true}, {"baa", false}, {"bab", false}});
  const auto s = apply_pointing(c, full);
  for (const Cell& m : s.marks) EXPECT_EQ(patch_key(c, m, 1), "aba");
  EXPECT_THROW(apply_pointing(c.with_certified_radius(1), full), PreconditionError);
}

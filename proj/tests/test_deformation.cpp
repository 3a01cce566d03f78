#include <gtest/gtest.h>

#include <random>

#include "aplab/deformation.hpp"
#include "aplab/error.hpp"
#include "aplab/io.hpp"
#include "aplab/patch.hpp"

using namespace aplab;

namespace {

SubstitutionRule rule(const std::string& name) {
  return parse_rule(read_file(std::string(APLAB_FIXTURE_DIR) + "/rules/" + name + ".json"));
}

Configuration tm2d() { return expand_certified(rule("thue_morse_2d"), "0", 5, 6); }

VertexPotential random_potential(const Configuration& c, int radius, std::uint64_t seed,
                                 double scale = 0.2) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-scale, scale);
  VertexPotential s;
  s.radius = radius;
  const Box b = c.box().shrunk(radius, c.dimension());
  for (int y = b.y0; y < b.y1(); ++y)
    for (int x = b.x0; x < b.x1(); ++x) {
      const auto key = patch_key(c, {x, y}, radius);
      if (!s.table.count(key)) s.table[key] = {u(rng), u(rng)};
    }
  return s;
}

EdgeCocycle random_table(const Configuration& c, int radius, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1, 1);
  std::map<std::pair<int, std::string>, Vec2> t;
  const Box b = c.box().shrunk(radius, c.dimension());
  for (int y = b.y0; y < b.y1(); ++y)
    for (int x = b.x0; x < b.x1(); ++x)
      for (int axis = 0; axis < c.dimension(); ++axis) {
        const auto key = std::pair{axis, patch_key(c, {x, y}, radius)};
        if (!t.count(key)) t[key] = {u(rng), u(rng)};
      }
  return EdgeCocycle::table(radius, t);
}

}  // namespace

TEST(Cocycle, IdentityAndCoboundariesSumToZeroExactly) {
  const auto c = tm2d();
  const auto id = verify_cocycle(c, EdgeCocycle::identity(), 200, 1);
  EXPECT_TRUE(id.pass);
  EXPECT_EQ(id.worst_residual, 0);
  const auto cob = coboundary_from(random_potential(c, 1, 7));
  const auto v = verify_cocycle(c, cob, 200, 2);
  EXPECT_TRUE(v.pass);
  EXPECT_EQ(v.worst_residual, 0);
  const auto sum = verify_cocycle(c, cob + EdgeCocycle::linear({1, 0.5, 0, 1}), 200, 3);
  EXPECT_TRUE(sum.pass);
  EXPECT_EQ(sum.worst_residual, 0);
  EXPECT_GE(id.circuits, 31 * 31);
  EXPECT_LE(id.circuits, 31 * 31 + 200);
}

TEST(Cocycle, ConstantPotentialGivesZeroEdges) {
  const auto c = tm2d();
  auto s = random_potential(c, 0, 1);
  for (auto& [k, v] : s.table) v = {0.3, -0.7};
  const auto f = coboundary_from(s);
  EXPECT_EQ(f.radius(), 1);
  for (int axis = 0; axis < 2; ++axis) EXPECT_EQ(f.value(c, {5, 5}, axis), (Vec2{0, 0}));
}

TEST(Cocycle, Antisymmetric) {
  const auto c = tm2d();
  const auto f = random_table(c, 1, 5);
  for (int y = 3; y < 20; ++y)
    for (int x = 3; x < 20; ++x)
      for (int axis = 0; axis < 2; ++axis) {
        const Cell back = axis == 0 ? Cell{x - 1, y} : Cell{x, y - 1};
        EXPECT_EQ(f.value(c, {x, y}, axis, -1), -f.value(c, back, axis, 1));
      }
}

TEST(Cocycle, RandomTableIsRejected) {
  const auto c = tm2d();
  const auto f = random_table(c, 1, 11);
  const auto v = verify_cocycle(c, f, 50, 0);
  EXPECT_FALSE(v.pass);
  EXPECT_GT(v.worst_residual, 1e-9);
  EXPECT_GE(v.worst_length, 4);
  EXPECT_THROW(integrate(c, f, {16, 16}), CocycleError);
}

TEST(Cocycle, MissingTableEntry) {
  const auto c = tm2d();
  const auto f = EdgeCocycle::table(1, {});
  EXPECT_THROW(f.value(c, {5, 5}, 0), IncompleteTableError);
  EXPECT_THROW(f.value(c, {0, 0}, 0), PreconditionError);
}

TEST(Integrate, LinearCocycles) {
  const auto c = tm2d();
  const Cell base{10, 12};
  const auto P = integrate(c, EdgeCocycle::identity(), base);
  EXPECT_EQ(P.path_checks, 100);
  EXPECT_EQ(P.path_residual, 0);
  const Mat2 A{1.25, 0.5, -0.25, 0.75};
  const auto Q = integrate(c, EdgeCocycle::linear(A), base);
  for (int y = P.lattice.y0; y < P.lattice.y1(); ++y)
    for (int x = P.lattice.x0; x < P.lattice.x1(); ++x) {
      const Vec2 d{double(x - base.x), double(y - base.y)};
      EXPECT_EQ(P.at({x, y}), d);
      EXPECT_NEAR(distance(Q.at({x, y}), A * d), 0, 1e-12);
    }
  EXPECT_TRUE(nondegeneracy_check(Q).pass);
  EXPECT_THROW(integrate(c, EdgeCocycle::identity(), {-1, 0}), PreconditionError);
}

TEST(Integrate, CoboundaryIsBounded) {
  const auto c = tm2d();
  const auto s = random_potential(c, 1, 3);
  const auto f = coboundary_from(s);
  const Cell base{12, 12};
  const auto P = integrate(c, f, base);
  double smax = 0;
  for (const auto& [k, v] : s.table) smax = std::max(smax, v.norm());
  for (int y = P.lattice.y0; y < P.lattice.y1(); ++y)
    for (int x = P.lattice.x0; x < P.lattice.x1(); ++x) {
      const Vec2 expected = s.value(c, {x, y}) - s.value(c, base);
      EXPECT_NEAR(distance(P.at({x, y}), expected), 0, 1e-12);
      EXPECT_LE(P.at({x, y}).norm(), 2 * smax + 1e-12);
    }
}

TEST(Integrate, EnvelopeTracksOperatorNorm) {
  const auto c = expand_certified(rule("thue_morse_2d"), "0", 6, 6);
  const Mat2 A{1.5, 0.3, -0.2, 1.1};
  const auto f = EdgeCocycle::linear(A) + coboundary_from(random_potential(c, 1, 9, 0.1));
  const Cell base{32, 32};
  const auto P = integrate(c, f, base);
  std::vector<std::pair<Vec2, Vec2>> samples;
  for (int y = P.lattice.y0; y < P.lattice.y1(); ++y)
    for (int x = P.lattice.x0; x < P.lattice.x1(); ++x)
      samples.emplace_back(Vec2{double(x - base.x), double(y - base.y)}, P.at({x, y}));
  const auto env = growth_envelope(samples);
  EXPECT_NEAR(env.M, A.operator_norm(), 0.05 * A.operator_norm());
}

TEST(Nondegeneracy, OrientationReversal) {
  const auto c2 = tm2d();
  // -e in the plane is a rotation by pi and keeps orientation.
  EXPECT_TRUE(nondegeneracy_check(integrate(c2, EdgeCocycle::linear({-1, 0, 0, -1}), {8, 8})).pass);
  const auto refl = nondegeneracy_check(integrate(c2, EdgeCocycle::linear({-1, 0, 0, 1}), {8, 8}));
  EXPECT_FALSE(refl.pass);
  EXPECT_EQ(refl.failing_cells, refl.cells);
  const auto c1 = expand_certified(rule("thue_morse"), "0", 8, 6);
  const auto line = nondegeneracy_check(integrate(c1, EdgeCocycle::linear({-1, 0, 0, 1}), {4, 0}));
  EXPECT_FALSE(line.pass);
  EXPECT_EQ(line.failing_cells, line.cells);
  EXPECT_EQ(line.cells, long(c1.width() - 1));
}

TEST(DeformedDelaunay, SmallPerturbationStaysDelone) {
  const auto c = expand_certified(rule("thue_morse_2d"), "0", 6, 6);
  const auto f = EdgeCocycle::identity() + coboundary_from(random_potential(c, 1, 4, 0.15));
  const auto P = integrate(c, f, {32, 32});
  EXPECT_TRUE(nondegeneracy_check(P).pass);
  const auto D = deformed_delaunay(P);
  EXPECT_GE(D.min_distance, 1 - 4 * 0.15 * std::sqrt(2.0) - 1e-9);
  EXPECT_LE(D.covering_bound, 1.5);
  EXPECT_TRUE(D.dense);
}

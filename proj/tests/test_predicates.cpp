#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "aplab/predicates.hpp"
#include "oracles.hpp"

using namespace aplab;

TEST(Predicates, SimpleCases) {
  EXPECT_EQ(orient2d({0, 0}, {1, 0}, {0, 1}), 1);
  EXPECT_EQ(orient2d({0, 0}, {0, 1}, {1, 0}), -1);
  EXPECT_EQ(orient2d({0, 0}, {1, 1}, {2, 2}), 0);
  EXPECT_EQ(incircle({0, 0}, {1, 0}, {0, 1}, {0.5, 0.5}), 1);
  EXPECT_EQ(incircle({0, 0}, {1, 0}, {0, 1}, {1, 1}), 0);
  EXPECT_EQ(incircle({0, 0}, {1, 0}, {0, 1}, {2, 2}), -1);
}

// Nearly degenerate inputs where naive floating point evaluation is unreliable.
TEST(Predicates, AgreeWithRationalsNearDegeneracy) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 2000; ++i) {
    const Vec2 a{u(rng), u(rng)}, b{u(rng) * 1e3, u(rng) * 1e3};
    const double t = u(rng);
    // A point on the line through a and b, nudged by a few ulps.
    Vec2 c = a + t * (b - a);
    c.x = std::nextafter(c.x, (i % 3 == 0) ? c.x : (i % 3 == 1 ? 1e9 : -1e9));
    EXPECT_EQ(orient2d(a, b, c), oracle::orient_exact(a, b, c));
  }
  for (int i = 0; i < 2000; ++i) {
    // Points on a circle, rounded: incircle is decided by the rounding.
    const double r = 1 + u(rng) * 100;
    const Vec2 o{u(rng) * 10, u(rng) * 10};
    Vec2 p[4];
    for (auto& q : p) {
      const double th = u(rng) * 6.283185307179586;
      q = {o.x + r * std::cos(th), o.y + r * std::sin(th)};
    }
    if (oracle::orient_exact(p[0], p[1], p[2]) < 0) std::swap(p[1], p[2]);
    EXPECT_EQ(incircle(p[0], p[1], p[2], p[3]), oracle::incircle_exact(p[0], p[1], p[2], p[3]));
  }
}

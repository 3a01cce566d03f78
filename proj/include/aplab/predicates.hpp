#pragma once

#include "aplab/vec2.hpp"

namespace aplab {

/// Sign of the signed area of (a, b, c): +1 counter-clockwise, -1 clockwise,
/// 0 collinear. Exact: a floating-point filter falls back to rationals.
int orient2d(Vec2 a, Vec2 b, Vec2 c);

/// +1 if d lies strictly inside the circumcircle of the counter-clockwise
/// triangle (a, b, c), -1 outside, 0 on it. Exact.
int incircle(Vec2 a, Vec2 b, Vec2 c, Vec2 d);

}  // namespace aplab

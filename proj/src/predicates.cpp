#include "aplab/predicates.hpp"

#include <cfloat>
#include <cmath>

#include <gmpxx.h>

namespace aplab {

namespace {

int sign(const mpq_class& v) { return sgn(v); }

// Error bounds in the style of Shewchuk's static filters, loosened a little.
constexpr double kOrientBound = (3.0 + 16.0 * DBL_EPSILON) * DBL_EPSILON;
constexpr double kIncircleBound = (10.0 + 96.0 * DBL_EPSILON) * DBL_EPSILON;

}  // namespace

int orient2d(Vec2 a, Vec2 b, Vec2 c) {
  const double l = (a.x - c.x) * (b.y - c.y);
  const double r = (a.y - c.y) * (b.x - c.x);
  const double det = l - r;
  if (std::abs(det) > kOrientBound * (std::abs(l) + std::abs(r)) * 2)
    return det > 0 ? 1 : -1;
  const mpq_class ax(a.x), ay(a.y), bx(b.x), by(b.y), cx(c.x), cy(c.y);
  return sign((ax - cx) * (by - cy) - (ay - cy) * (bx - cx));
}

int incircle(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  const double adx = a.x - d.x, ady = a.y - d.y;
  const double bdx = b.x - d.x, bdy = b.y - d.y;
  const double cdx = c.x - d.x, cdy = c.y - d.y;
  const double alift = adx * adx + ady * ady;
  const double blift = bdx * bdx + bdy * bdy;
  const double clift = cdx * cdx + cdy * cdy;
  const double bc = bdx * cdy - cdx * bdy;
  const double ca = cdx * ady - adx * cdy;
  const double ab = adx * bdy - bdx * ady;
  const double det = alift * bc + blift * ca + clift * ab;
  const double permanent = (std::abs(bdx * cdy) + std::abs(cdx * bdy)) * alift +
                           (std::abs(cdx * ady) + std::abs(adx * cdy)) * blift +
                           (std::abs(adx * bdy) + std::abs(bdx * ady)) * clift;
  if (std::abs(det) > kIncircleBound * permanent * 2) return det > 0 ? 1 : -1;

  const mpq_class dx(d.x), dy(d.y);
  const mpq_class qax = mpq_class(a.x) - dx, qay = mpq_class(a.y) - dy;
  const mpq_class qbx = mpq_class(b.x) - dx, qby = mpq_class(b.y) - dy;
  const mpq_class qcx = mpq_class(c.x) - dx, qcy = mpq_class(c.y) - dy;
  const mpq_class e = (qax * qax + qay * qay) * (qbx * qcy - qcx * qby) +
                      (qbx * qbx + qby * qby) * (qcx * qay - qax * qcy) +
                      (qcx * qcx + qcy * qcy) * (qax * qby - qbx * qay);
  return sign(e);
}

}  // namespace aplab

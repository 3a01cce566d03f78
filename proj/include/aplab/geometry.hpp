#pragma once

#include <array>
#include <memory>
#include <optional>
#include <vector>

#include "aplab/vec2.hpp"

namespace aplab {

/// Closed axis-aligned rectangle; 1-D data uses y0 == y1 == 0.
struct Window {
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0;

  bool contains(Vec2 p) const { return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1; }
  double min_extent(int dimension) const {
    return dimension == 1 ? x1 - x0 : std::min(x1 - x0, y1 - y0);
  }
};

class PointIndex;

/// Point set with measured Delaunay radii (Euclidean).
struct DelaunayData {
  int dimension = 2;
  std::vector<Vec2> points;
  Window window;
  /// Smallest pairwise distance (infinity for a single point).
  double min_distance = 0;
  /// Largest distance from a grid sample of the window to the nearest point.
  double covering_radius = 0;
  /// Sample grid pitch used for covering_radius.
  double pitch = 0;
  /// covering_radius plus the worst sampling error: a rigorous upper bound.
  double covering_bound = 0;
  /// covering_radius at most `max_covering_fraction` of the smallest window side.
  bool dense = false;
  std::shared_ptr<const PointIndex> index;

  /// Index of the nearest point, ties broken by lexicographically smallest point.
  std::size_t nearest(Vec2 z) const;
};

struct RadiiOptions {
  double max_covering_fraction = 0.25;
  /// Covering samples are spaced min_distance * pitch_fraction apart.
  double pitch_fraction = 1.0 / 8;
};

/// Measures (m, R) of `points` over `window`. Throws PreconditionError for an
/// empty point list or an empty window.
DelaunayData delaunay_radii(std::vector<Vec2> points, const Window& window, int dimension = 2,
                            const RadiiOptions& options = {});

/// One step of the jump construction: the point of D nearest to
/// z = x + 2R (y - x)/|y - x|. Requires |x - y| >= 2R and y inside the window.
/// `radius` defaults to D.covering_bound.
Vec2 jump_step(const DelaunayData& D, Vec2 x, Vec2 y, std::optional<double> radius = {});

struct ReturnPath {
  std::vector<Vec2> waypoints;  // x_0 .. x_k, all in D
  double step_bound = 0;        // 3R
  double radius = 0;            // R used by the iteration

  std::size_t steps() const { return waypoints.empty() ? 0 : waypoints.size() - 1; }
  Vec2 step(std::size_t i) const { return waypoints[i + 1] - waypoints[i]; }
};

/// Iterates jump_step from x until the current point is closer than 2R to y.
ReturnPath jump_path(const DelaunayData& D, Vec2 x, Vec2 y, std::optional<double> radius = {});

struct Triangulation {
  int dimension = 2;
  std::vector<Vec2> points;
  /// Counter-clockwise triangles (d = 2) as indices into points.
  std::vector<std::array<int, 3>> triangles;
  /// Consecutive pairs in x order (d = 1).
  std::vector<std::array<int, 2>> segments;
  /// neighbors[t][i] is the triangle across the edge opposite vertex i, or -1.
  std::vector<std::array<int, 3>> neighbors;

  std::size_t simplex_count() const {
    return dimension == 1 ? segments.size() : triangles.size();
  }
};

/// Delaunay triangulation; cocircular quadruples use the diagonal whose sorted
/// vertex pair is lexicographically smallest. Independent of input order.
Triangulation delaunay_triangulate(const DelaunayData& D);
Triangulation delaunay_triangulate(const std::vector<Vec2>& points, int dimension = 2);

struct AffinePiece {
  Mat2 linear;
  Vec2 offset;  // g(p) = linear * p + offset on the simplex
  double lipschitz = 0;
  int orientation = 0;  // sign of det(linear)
};

/// Piecewise-affine extension of a vertex map over a triangulation.
struct PAMap {
  Triangulation triangulation;
  std::vector<Vec2> images;
  std::vector<AffinePiece> pieces;
  double lipschitz = 0;

  /// Simplex containing p, if any.
  std::optional<std::size_t> locate(Vec2 p) const;
  /// g(p) via barycentric coordinates; nullopt outside the triangulated region.
  std::optional<Vec2> evaluate(Vec2 p) const;
  std::size_t negative_count() const;
};

PAMap pa_extend(const Triangulation& tri, const std::vector<Vec2>& vertex_images);

struct GrowthEnvelope {
  double M = 0;
  double C = 0;
};

struct EnvelopeOptions {
  double step = 1.0 / 64;  // M grid: multiples of step
  double max_M = 64;
};

/// Dyadic-grid envelope |image| <= M |x| + C. M is the first grid value at
/// which the far half of the samples (|x| >= max|x| / 2) no longer binds the
/// constant; C is then the smallest constant valid for every sample.
GrowthEnvelope growth_envelope(const std::vector<std::pair<Vec2, Vec2>>& samples,
                               const EnvelopeOptions& options = {});

}  // namespace aplab

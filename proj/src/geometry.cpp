#include "aplab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "aplab/error.hpp"
#include "aplab/predicates.hpp"

namespace aplab {

/// Uniform bucket grid for nearest-point queries.
class PointIndex {
 public:
  explicit PointIndex(const std::vector<Vec2>& points) : points_(points) {
    lo_ = hi_ = points.front();
    for (const Vec2& p : points) {
      lo_.x = std::min(lo_.x, p.x);
      lo_.y = std::min(lo_.y, p.y);
      hi_.x = std::max(hi_.x, p.x);
      hi_.y = std::max(hi_.y, p.y);
    }
    const double w = hi_.x - lo_.x, h = hi_.y - lo_.y;
    const double n = double(points.size());
    if (w > 0 && h > 0)
      size_ = std::sqrt(w * h / n);
    else
      size_ = std::max(w, h) / n;
    if (!(size_ > 0)) size_ = 1;
    nx_ = int(std::min(4096.0, std::floor(w / size_))) + 1;
    ny_ = int(std::min(4096.0, std::floor(h / size_))) + 1;
    buckets_.resize(std::size_t(nx_) * ny_);
    for (std::size_t i = 0; i < points.size(); ++i)
      buckets_[std::size_t(by(points[i].y)) * nx_ + bx(points[i].x)].push_back(i);
  }

  std::size_t nearest(Vec2 z) const {
    const int cx = bucket_coord(z.x, lo_.x, nx_), cy = bucket_coord(z.y, lo_.y, ny_);
    // Distance from z to the bucket grid, so rings can be bounded from below.
    const double outside = std::max({lo_.x - z.x, z.x - (lo_.x + nx_ * size_), lo_.y - z.y,
                                     z.y - (lo_.y + ny_ * size_), 0.0});
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    const int max_ring = std::max({cx, nx_ - 1 - cx, cy, ny_ - 1 - cy});
    for (int k = 0; k <= max_ring; ++k) {
      for (int y = cy - k; y <= cy + k; ++y) {
        if (y < 0 || y >= ny_) continue;
        const bool edge_row = y == cy - k || y == cy + k;
        for (int x = cx - k; x <= cx + k; x += edge_row ? 1 : 2 * k) {
          if (x >= 0 && x < nx_)
            for (std::size_t i : buckets_[std::size_t(y) * nx_ + x]) {
              const double d = (points_[i] - z).norm2();
              if (d < best_d || (d == best_d && points_[i] < points_[best])) {
                best_d = d;
                best = i;
              }
            }
          if (k == 0) break;
        }
      }
      const double reach = std::max(outside, k * size_);
      if (best_d < reach * reach) break;
    }
    return best;
  }

 private:
  int bucket_coord(double v, double lo, int n) const {
    const double f = std::floor((v - lo) / size_);
    return int(std::clamp(f, 0.0, double(n - 1)));
  }
  int bx(double x) const { return bucket_coord(x, lo_.x, nx_); }
  int by(double y) const { return bucket_coord(y, lo_.y, ny_); }

  std::vector<Vec2> points_;
  Vec2 lo_, hi_;
  double size_ = 1;
  int nx_ = 1, ny_ = 1;
  std::vector<std::vector<std::size_t>> buckets_;
};

std::size_t DelaunayData::nearest(Vec2 z) const { return index->nearest(z); }

namespace {

void check_points(const std::vector<Vec2>& points, int dimension) {
  if (dimension != 1 && dimension != 2)
    throw UnsupportedDimensionError("dimension must be 1 or 2");
  for (const Vec2& p : points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      throw PreconditionError("point coordinates must be finite");
    if (dimension == 1 && p.y != 0)
      throw PreconditionError("one-dimensional points must have y = 0");
  }
}

double min_pairwise_distance(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end());
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size() && pts[j].x - pts[i].x < best; ++j)
      best = std::min(best, distance(pts[i], pts[j]));
  return best;
}

}  // namespace

DelaunayData delaunay_radii(std::vector<Vec2> points, const Window& window, int dimension,
                            const RadiiOptions& options) {
  check_points(points, dimension);
  if (points.empty()) throw PreconditionError("point set is empty");
  if (window.x1 < window.x0 || window.y1 < window.y0 || (dimension == 2 && window.y1 == window.y0) ||
      window.x1 == window.x0)
    throw PreconditionError("window is empty");

  DelaunayData D;
  D.dimension = dimension;
  D.window = window;
  D.min_distance = min_pairwise_distance(points);
  if (D.min_distance == 0) throw PreconditionError("point set has duplicate points");
  D.points = std::move(points);
  D.index = std::make_shared<PointIndex>(D.points);

  // Sample pitch: a fraction of m, but never finer than 1/4096 of the larger side.
  const double extent = std::max(window.x1 - window.x0, window.y1 - window.y0);
  double pitch = std::isfinite(D.min_distance) ? D.min_distance * options.pitch_fraction : extent / 64;
  pitch = std::max(pitch, extent / 4096);
  D.pitch = pitch;
  const auto samples = [&](double a, double b) {
    std::vector<double> s;
    const long n = long(std::ceil((b - a) / pitch));
    for (long i = 0; i <= n; ++i) s.push_back(std::min(b, a + double(i) * pitch));
    return s;
  };
  const std::vector<double> xs = samples(window.x0, window.x1);
  const std::vector<double> ys = dimension == 2 ? samples(window.y0, window.y1) : std::vector<double>{0.0};
  double worst = 0;
  for (double y : ys)
    for (double x : xs) {
      const Vec2 z{x, y};
      worst = std::max(worst, distance(z, D.points[D.nearest(z)]));
    }
  D.covering_radius = worst;
  D.covering_bound = worst + pitch * std::sqrt(double(dimension)) / 2;
  D.dense = D.covering_bound <= options.max_covering_fraction * window.min_extent(dimension);
  return D;
}

Vec2 jump_step(const DelaunayData& D, Vec2 x, Vec2 y, std::optional<double> radius) {
  const double R = radius.value_or(D.covering_bound);
  if (!(R > 0)) throw PreconditionError("jump radius must be positive");
  if (!D.window.contains(y)) throw PreconditionError("target lies outside the window");
  const double len = distance(x, y);
  if (len < 2 * R) throw PreconditionError("points are closer than 2R; no jump needed");
  const Vec2 z = x + (y - x) * (2 * R / len);
  return D.points[D.nearest(z)];
}

ReturnPath jump_path(const DelaunayData& D, Vec2 x, Vec2 y, std::optional<double> radius) {
  ReturnPath path;
  path.radius = radius.value_or(D.covering_bound);
  path.step_bound = 3 * path.radius;
  path.waypoints.push_back(x);
  // Each step gains at least R when the covering bound holds.
  const std::size_t cap = std::size_t(std::ceil(distance(x, y) / path.radius)) + 2;
  while (distance(path.waypoints.back(), y) >= 2 * path.radius) {
    if (path.steps() > cap)
      throw NotRelativelyDenseError("jump iteration does not approach the target; the "
                                    "covering radius does not hold along the path",
                                    long(path.steps()));
    path.waypoints.push_back(jump_step(D, path.waypoints.back(), y, path.radius));
  }
  return path;
}

namespace {

/// Flip-based triangulation over lexicographically sorted points.
class Builder {
 public:
  explicit Builder(const std::vector<Vec2>& pts) : p_(pts) {}

  std::vector<std::array<int, 3>> run() {
    const int n = int(p_.size());
    if (n < 3) return {};
    int k = 2;
    while (k < n && orient2d(p_[0], p_[1], p_[std::size_t(k)]) == 0) ++k;
    if (k == n) return {};
    const bool left = orient2d(p_[0], p_[1], p_[std::size_t(k)]) > 0;
    for (int i = 0; i + 1 < k; ++i) {
      if (left)
        add({i, i + 1, k});
      else
        add({i + 1, i, k});
    }
    if (left) {
      for (int i = 0; i < k; ++i) hull_.push_back(i);
      hull_.push_back(k);
    } else {
      hull_.push_back(0);
      hull_.push_back(k);
      for (int i = k - 1; i >= 1; --i) hull_.push_back(i);
    }
    for (int v = k + 1; v < n; ++v) insert(v);
    legalize();
    return tris_;
  }

 private:
  static std::uint64_t key(int u, int v) { return (std::uint64_t(std::uint32_t(u)) << 32) | std::uint32_t(v); }

  void add(std::array<int, 3> t) {
    const int id = int(tris_.size());
    tris_.push_back(t);
    link(id);
  }
  void link(int id) {
    const auto& t = tris_[std::size_t(id)];
    for (int i = 0; i < 3; ++i) edges_[key(t[std::size_t(i)], t[std::size_t((i + 1) % 3)])] = id;
  }
  void unlink(int id) {
    const auto& t = tris_[std::size_t(id)];
    for (int i = 0; i < 3; ++i) edges_.erase(key(t[std::size_t(i)], t[std::size_t((i + 1) % 3)]));
  }

  // v is lexicographically beyond every inserted point, so it lies outside the hull.
  void insert(int v) {
    const std::size_t h = hull_.size();
    std::vector<char> vis(h);
    for (std::size_t i = 0; i < h; ++i)
      vis[i] = orient2d(p_[std::size_t(hull_[i])], p_[std::size_t(hull_[(i + 1) % h])],
                        p_[std::size_t(v)]) < 0;
    std::size_t first = 0;
    while (first < h && !(vis[first] && !vis[(first + h - 1) % h])) ++first;
    if (first == h) throw Error("triangulation: inserted point sees no hull edge");
    std::size_t count = 0;
    while (vis[(first + count) % h]) {
      const int a = hull_[(first + count) % h], b = hull_[(first + count + 1) % h];
      add({b, a, v});
      ++count;
    }
    // Keep the hull from the end of the visible chain round to its start.
    std::vector<int> next;
    const std::size_t end = (first + count) % h;
    for (std::size_t j = 0; j + count <= h; ++j) next.push_back(hull_[(end + j) % h]);
    next.push_back(v);
    hull_ = std::move(next);
  }

  bool should_flip(int a, int b, int c, int d) const {
    const Vec2 pa = p_[std::size_t(a)], pb = p_[std::size_t(b)], pc = p_[std::size_t(c)],
               pd = p_[std::size_t(d)];
    const int s = incircle(pa, pb, pc, pd);
    if (s > 0) return true;
    if (s < 0) return false;
    // Cocircular: keep the diagonal whose sorted pair is smaller.
    const std::pair<int, int> cur = std::minmax(a, b), alt = std::minmax(c, d);
    return alt < cur && orient2d(pc, pa, pd) > 0 && orient2d(pd, pb, pc) > 0;
  }

  void legalize() {
    std::vector<std::pair<int, int>> stack;
    for (const auto& t : tris_)
      for (int i = 0; i < 3; ++i) stack.push_back({t[std::size_t(i)], t[std::size_t((i + 1) % 3)]});
    std::size_t guard = 0;
    const std::size_t cap = 64 * tris_.size() * tris_.size() + 1024;
    while (!stack.empty()) {
      if (++guard > cap) throw Error("triangulation flip loop did not terminate");
      const auto [a, b] = stack.back();
      stack.pop_back();
      const auto i1 = edges_.find(key(a, b));
      const auto i2 = edges_.find(key(b, a));
      if (i1 == edges_.end() || i2 == edges_.end()) continue;
      const int t1 = i1->second, t2 = i2->second;
      const int c = third(t1, a, b), d = third(t2, b, a);
      if (!should_flip(a, b, c, d)) continue;
      unlink(t1);
      unlink(t2);
      tris_[std::size_t(t1)] = {c, a, d};
      tris_[std::size_t(t2)] = {d, b, c};
      link(t1);
      link(t2);
      stack.push_back({a, d});
      stack.push_back({d, b});
      stack.push_back({b, c});
      stack.push_back({c, a});
    }
  }

  int third(int t, int a, int b) const {
    for (int v : tris_[std::size_t(t)])
      if (v != a && v != b) return v;
    return -1;
  }

  const std::vector<Vec2>& p_;
  std::vector<std::array<int, 3>> tris_;
  std::unordered_map<std::uint64_t, int> edges_;
  std::vector<int> hull_;
};

}  // namespace

Triangulation delaunay_triangulate(const std::vector<Vec2>& points, int dimension) {
  check_points(points, dimension);
  Triangulation T;
  T.dimension = dimension;
  T.points = points;
  std::vector<int> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return points[std::size_t(a)] < points[std::size_t(b)]; });
  for (std::size_t i = 1; i < order.size(); ++i)
    if (points[std::size_t(order[i])] == points[std::size_t(order[i - 1])])
      throw PreconditionError("point set has duplicate points");

  if (dimension == 1) {
    for (std::size_t i = 1; i < order.size(); ++i) T.segments.push_back({order[i - 1], order[i]});
    return T;
  }
  std::vector<Vec2> sorted;
  for (int i : order) sorted.push_back(points[std::size_t(i)]);
  auto tris = Builder(sorted).run();
  for (auto& t : tris) {
    for (int& v : t) v = order[std::size_t(v)];
    std::rotate(t.begin(), std::min_element(t.begin(), t.end()), t.end());
  }
  std::sort(tris.begin(), tris.end());
  T.triangles = std::move(tris);

  std::unordered_map<std::uint64_t, int> owner;
  const auto key = [](int u, int v) { return (std::uint64_t(std::uint32_t(u)) << 32) | std::uint32_t(v); };
  for (std::size_t t = 0; t < T.triangles.size(); ++t)
    for (int i = 0; i < 3; ++i)
      owner[key(T.triangles[t][std::size_t(i)], T.triangles[t][std::size_t((i + 1) % 3)])] = int(t);
  T.neighbors.resize(T.triangles.size());
  for (std::size_t t = 0; t < T.triangles.size(); ++t)
    for (int i = 0; i < 3; ++i) {
      const int b = T.triangles[t][std::size_t((i + 1) % 3)], c = T.triangles[t][std::size_t((i + 2) % 3)];
      const auto it = owner.find(key(c, b));
      T.neighbors[t][std::size_t(i)] = it == owner.end() ? -1 : it->second;
    }
  return T;
}

Triangulation delaunay_triangulate(const DelaunayData& D) {
  return delaunay_triangulate(D.points, D.dimension);
}

namespace {

// Twice the signed area; evaluated identically for the full simplex and for
// the sub-simplices, so barycentric weights are exact at the vertices.
double area2(Vec2 a, Vec2 b, Vec2 c) { return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x); }

}  // namespace

PAMap pa_extend(const Triangulation& tri, const std::vector<Vec2>& vertex_images) {
  if (vertex_images.size() != tri.points.size())
    throw PreconditionError("need one image per triangulation vertex");
  PAMap g;
  g.triangulation = tri;
  g.images = vertex_images;
  const auto& P = tri.points;
  const auto& Q = vertex_images;
  if (tri.dimension == 1) {
    for (const auto& s : tri.segments) {
      const Vec2 p0 = P[std::size_t(s[0])], p1 = P[std::size_t(s[1])];
      const Vec2 q0 = Q[std::size_t(s[0])], q1 = Q[std::size_t(s[1])];
      if (p1.x == p0.x) throw DegenerateSimplexError("segment has zero length");
      const double k = (q1.x - q0.x) / (p1.x - p0.x);
      AffinePiece piece;
      piece.linear = {k, 0, 0, 1};
      piece.offset = {q0.x - k * p0.x, 0};
      piece.lipschitz = std::abs(k);
      piece.orientation = (q1.x > q0.x) - (q1.x < q0.x);
      g.lipschitz = std::max(g.lipschitz, piece.lipschitz);
      g.pieces.push_back(piece);
    }
    return g;
  }
  for (const auto& t : tri.triangles) {
    const Vec2 p0 = P[std::size_t(t[0])], p1 = P[std::size_t(t[1])], p2 = P[std::size_t(t[2])];
    const Vec2 q0 = Q[std::size_t(t[0])], q1 = Q[std::size_t(t[1])], q2 = Q[std::size_t(t[2])];
    if (orient2d(p0, p1, p2) == 0) throw DegenerateSimplexError("triangle has zero area");
    const Mat2 E{p1.x - p0.x, p2.x - p0.x, p1.y - p0.y, p2.y - p0.y};
    const Mat2 F{q1.x - q0.x, q2.x - q0.x, q1.y - q0.y, q2.y - q0.y};
    AffinePiece piece;
    piece.linear = F * E.inverse();
    piece.offset = q0 - piece.linear * p0;
    piece.lipschitz = piece.linear.operator_norm();
    piece.orientation = orient2d(q0, q1, q2) * orient2d(p0, p1, p2);
    g.lipschitz = std::max(g.lipschitz, piece.lipschitz);
    g.pieces.push_back(piece);
  }
  return g;
}

std::optional<std::size_t> PAMap::locate(Vec2 p) const {
  const auto& P = triangulation.points;
  if (triangulation.dimension == 1) {
    if (p.y != 0) return std::nullopt;
    for (std::size_t i = 0; i < triangulation.segments.size(); ++i) {
      const auto& s = triangulation.segments[i];
      if (p.x >= P[std::size_t(s[0])].x && p.x <= P[std::size_t(s[1])].x) return i;
    }
    return std::nullopt;
  }
  for (std::size_t i = 0; i < triangulation.triangles.size(); ++i) {
    const auto& t = triangulation.triangles[i];
    const Vec2 a = P[std::size_t(t[0])], b = P[std::size_t(t[1])], c = P[std::size_t(t[2])];
    if (orient2d(a, b, p) >= 0 && orient2d(b, c, p) >= 0 && orient2d(c, a, p) >= 0) return i;
  }
  return std::nullopt;
}

std::optional<Vec2> PAMap::evaluate(Vec2 p) const {
  const auto i = locate(p);
  if (!i) return std::nullopt;
  const auto& P = triangulation.points;
  if (triangulation.dimension == 1) {
    const auto& s = triangulation.segments[*i];
    const Vec2 p0 = P[std::size_t(s[0])], p1 = P[std::size_t(s[1])];
    const double w1 = (p.x - p0.x) / (p1.x - p0.x), w0 = (p1.x - p.x) / (p1.x - p0.x);
    return Vec2{w0 * images[std::size_t(s[0])].x + w1 * images[std::size_t(s[1])].x, 0};
  }
  const auto& t = triangulation.triangles[*i];
  const Vec2 a = P[std::size_t(t[0])], b = P[std::size_t(t[1])], c = P[std::size_t(t[2])];
  const double total = area2(a, b, c);
  const double wa = area2(p, b, c) / total;
  const double wb = area2(a, p, c) / total;
  const double wc = area2(a, b, p) / total;
  return wa * images[std::size_t(t[0])] + wb * images[std::size_t(t[1])] + wc * images[std::size_t(t[2])];
}

std::size_t PAMap::negative_count() const {
  return std::size_t(std::count_if(pieces.begin(), pieces.end(),
                                   [](const AffinePiece& p) { return p.orientation < 0; }));
}

GrowthEnvelope growth_envelope(const std::vector<std::pair<Vec2, Vec2>>& samples,
                               const EnvelopeOptions& options) {
  if (samples.empty()) throw PreconditionError("growth envelope needs samples");
  double far = 0;
  for (const auto& s : samples) far = std::max(far, s.first.norm());
  far /= 2;
  const auto excess = [&](double M, bool far_half) {
    double e = -std::numeric_limits<double>::infinity();
    for (const auto& [x, img] : samples)
      if ((x.norm() >= far) == far_half) e = std::max(e, img.norm() - M * x.norm());
    return e;
  };
  GrowthEnvelope env;
  const long steps = long(std::llround(options.max_M / options.step));
  env.M = options.max_M;
  for (long k = 0; k <= steps; ++k) {
    const double M = double(k) * options.step;
    // Rounding noise on the far half must not push M one grid step up.
    const double base = std::max(0.0, excess(M, false));
    if (excess(M, true) <= base + 1e-12 * (1 + base)) {
      env.M = M;
      break;
    }
  }
  env.C = std::max({0.0, excess(env.M, true), excess(env.M, false)});
  return env;
}

}  // namespace aplab

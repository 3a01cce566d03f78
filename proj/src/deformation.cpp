#include "aplab/deformation.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>
#include <type_traits>

#include "aplab/error.hpp"
#include "aplab/patch.hpp"
#include "aplab/predicates.hpp"

namespace aplab {

namespace {

constexpr double kTolerance = 1e-9;

Cell unit(int axis, int sign = 1) { return axis == 0 ? Cell{sign, 0} : Cell{0, sign}; }

void require_inside(const Configuration& config, Cell v, int radius) {
  if (config.box().shrunk(radius, config.dimension()).contains(v)) return;
  throw PreconditionError("vertex (" + std::to_string(v.x) + "," + std::to_string(v.y) +
                          ") is closer than " + std::to_string(radius) + " to the border");
}

Vec2 column(const Mat2& m, int axis) { return axis == 0 ? Vec2{m.a, m.c} : Vec2{m.b, m.d}; }

}  // namespace

Vec2 VertexPotential::value(const Configuration& config, Cell v) const {
  require_inside(config, v, radius);
  const std::string key = patch_key(config, v, radius);
  const auto it = table.find(key);
  if (it == table.end()) throw IncompleteTableError("vertex potential", key);
  return it->second;
}

EdgeCocycle EdgeCocycle::table(int radius, std::map<std::pair<int, std::string>, Vec2> table) {
  if (radius < 0) throw PreconditionError("cocycle radius must be non-negative");
  return EdgeCocycle(radius, Table{std::move(table)});
}

EdgeCocycle EdgeCocycle::linear(const Mat2& matrix) { return EdgeCocycle(0, Linear{matrix}); }

EdgeCocycle coboundary_from(const VertexPotential& s) {
  return EdgeCocycle(s.radius + 1, EdgeCocycle::Coboundary{s});
}

EdgeCocycle operator+(const EdgeCocycle& f, const EdgeCocycle& g) {
  return EdgeCocycle(std::max(f.radius(), g.radius()),
                     EdgeCocycle::Sum{std::make_shared<EdgeCocycle>(f),
                                      std::make_shared<EdgeCocycle>(g)});
}

void EdgeCocycle::accumulate(const Configuration& config, Cell v, int axis, int sign,
                             ExactVecSum& sum) const {
  if (axis < 0 || axis >= config.dimension()) throw PreconditionError("edge axis out of range");
  // The edge v -> v - e is the reverse of (v - e) -> v.
  if (sign >= 0)
    add_forward(config, v, axis, 1, sum);
  else
    add_forward(config, v - unit(axis), axis, -1, sum);
}

void EdgeCocycle::add_forward(const Configuration& config, Cell v, int axis, int factor,
                              ExactVecSum& sum) const {
  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Table>) {
          require_inside(config, v, radius_);
          const std::string key = patch_key(config, v, radius_);
          const auto it = k.table.find({axis, key});
          if (it == k.table.end())
            throw IncompleteTableError("edge cocycle",
                                       "axis " + std::to_string(axis) + ": " + key);
          sum.add(it->second, factor);
        } else if constexpr (std::is_same_v<K, Linear>) {
          sum.add(column(k.matrix, axis), factor);
        } else if constexpr (std::is_same_v<K, Coboundary>) {
          sum.add(k.potential.value(config, v + unit(axis)), factor);
          sum.add(k.potential.value(config, v), -factor);
        } else {
          k.first->add_forward(config, v, axis, factor, sum);
          k.second->add_forward(config, v, axis, factor, sum);
        }
      },
      kind_);
}

Vec2 EdgeCocycle::value(const Configuration& config, Cell v, int axis, int sign) const {
  ExactVecSum s;
  accumulate(config, v, axis, sign, s);
  return s.value();
}

Box cocycle_domain(const Configuration& config, const EdgeCocycle& f) {
  return config.box().shrunk(f.radius(), config.dimension());
}

namespace {

struct Circuit {
  Cell start;
  std::vector<std::pair<int, int>> moves;  // (axis, sign)
};

double circuit_residual(const Configuration& config, const EdgeCocycle& f, const Circuit& c) {
  ExactVecSum sum;
  Cell v = c.start;
  for (const auto& [axis, sign] : c.moves) {
    f.accumulate(config, v, axis, sign, sum);
    v = v + unit(axis, sign);
  }
  return sum.is_zero() ? 0.0 : sum.value().norm();
}

Cell random_cell(std::mt19937_64& rng, const Box& b) {
  return {b.x0 + int(rng() % std::uint64_t(b.width)), b.y0 + int(rng() % std::uint64_t(b.height))};
}

/// Random walk inside `b` followed by a Manhattan return to its start.
Circuit random_circuit(std::mt19937_64& rng, const Box& b, int dimension) {
  Circuit c;
  c.start = random_cell(rng, b);
  Cell v = c.start;
  const int steps = 2 + int(rng() % 31);
  for (int i = 0; i < steps; ++i) {
    const int axis = dimension == 2 ? int(rng() % 2) : 0;
    const int sign = rng() % 2 ? 1 : -1;
    const Cell n = v + unit(axis, sign);
    if (!b.contains(n)) continue;
    c.moves.push_back({axis, sign});
    v = n;
  }
  while (v.x != c.start.x) {
    const int sign = v.x < c.start.x ? 1 : -1;
    c.moves.push_back({0, sign});
    v = v + unit(0, sign);
  }
  while (v.y != c.start.y) {
    const int sign = v.y < c.start.y ? 1 : -1;
    c.moves.push_back({1, sign});
    v = v + unit(1, sign);
  }
  return c;
}

void record(CocycleVerdict& out, const Circuit& c, double residual) {
  ++out.circuits;
  const int length = int(c.moves.size());
  if (residual > kTolerance * std::max(1, length)) out.pass = false;
  if (residual > out.worst_residual || out.circuits == 1) {
    out.worst_residual = residual;
    out.worst_start = c.start;
    out.worst_length = length;
  }
}

}  // namespace

CocycleVerdict verify_cocycle(const Configuration& config, const EdgeCocycle& f, int trials,
                              std::uint64_t seed) {
  const int d = config.dimension();
  const Box dom = cocycle_domain(config, f);
  if (dom.empty()) throw InsufficientWindowError("window is smaller than the cocycle radius");
  CocycleVerdict out;
  out.pass = true;
  if (d == 2)
    for (int y = dom.y0; y + 1 < dom.y1(); ++y)
      for (int x = dom.x0; x + 1 < dom.x1(); ++x) {
        const Circuit sq{{x, y}, {{0, 1}, {1, 1}, {0, -1}, {1, -1}}};
        record(out, sq, circuit_residual(config, f, sq));
      }
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + std::uint64_t(t));
    const Circuit c = random_circuit(rng, dom, d);
    if (c.moves.empty()) continue;
    record(out, c, circuit_residual(config, f, c));
  }
  return out;
}

DeformedPattern integrate(const Configuration& config, const EdgeCocycle& f, Cell base,
                          const IntegrationOptions& options) {
  const int d = config.dimension();
  const Box dom = cocycle_domain(config, f);
  if (!dom.contains(base)) throw PreconditionError("base vertex lies outside the cocycle domain");
  const CocycleVerdict verdict = verify_cocycle(config, f, options.verify_trials, options.seed);
  if (!verdict.pass)
    throw CocycleError("not a cocycle: circuit of length " + std::to_string(verdict.worst_length) +
                       " from (" + std::to_string(verdict.worst_start.x) + "," +
                       std::to_string(verdict.worst_start.y) + ") sums to " +
                       std::to_string(verdict.worst_residual));

  DeformedPattern P;
  P.dimension = d;
  P.lattice = dom;
  P.base = base;
  P.image = Grid<Vec2>(dom.width, dom.height);
  Grid<std::uint8_t> seen(dom.width, dom.height, 0);
  const auto local = [&](Cell v) { return Cell{v.x - dom.x0, v.y - dom.y0}; };
  std::deque<Cell> queue{base};
  seen[local(base)] = 1;
  while (!queue.empty()) {
    const Cell v = queue.front();
    queue.pop_front();
    for (int axis = 0; axis < d; ++axis)
      for (int sign : {1, -1}) {
        const Cell n = v + unit(axis, sign);
        if (!dom.contains(n) || seen[local(n)]) continue;
        seen[local(n)] = 1;
        P.image[local(n)] = P.image[local(v)] + f.value(config, v, axis, sign);
        queue.push_back(n);
      }
  }

  // Independent monotone staircase paths from the base.
  std::mt19937_64 rng(options.seed ^ 0xD1B54A32D192ED03ULL);
  for (int t = 0; t < options.path_checks; ++t) {
    const Cell target = random_cell(rng, dom);
    ExactVecSum sum;
    Cell v = base;
    while (v != target) {
      const bool can_x = v.x != target.x, can_y = v.y != target.y;
      const int axis = can_x && can_y ? int(rng() % 2) : (can_x ? 0 : 1);
      const int sign = axis == 0 ? (target.x > v.x ? 1 : -1) : (target.y > v.y ? 1 : -1);
      f.accumulate(config, v, axis, sign, sum);
      v = v + unit(axis, sign);
    }
    const double residual = (sum.value() - P.at(target)).norm();
    P.path_residual = std::max(P.path_residual, residual);
    ++P.path_checks;
    if (residual > kTolerance)
      throw CocycleError("path integral disagrees with the spanning tree by " +
                         std::to_string(residual));
  }
  return P;
}

NondegeneracyVerdict nondegeneracy_check(const DeformedPattern& P) {
  NondegeneracyVerdict out;
  const Box& L = P.lattice;
  const auto fail = [&](Cell c) {
    if (!out.failing_cell) out.failing_cell = c;
    ++out.failing_cells;
  };
  if (P.dimension == 1) {
    for (int x = L.x0; x + 1 < L.x1(); ++x) {
      ++out.cells;
      if (!(P.at({x + 1, 0}).x > P.at({x, 0}).x)) fail({x, 0});
    }
  } else {
    for (int y = L.y0; y + 1 < L.y1(); ++y)
      for (int x = L.x0; x + 1 < L.x1(); ++x) {
        ++out.cells;
        const Vec2 q0 = P.at({x, y}), q1 = P.at({x + 1, y}), q2 = P.at({x + 1, y + 1}),
                   q3 = P.at({x, y + 1});
        // Either diagonal splitting it into two positive triangles makes the
        // quadrilateral simple and positively oriented.
        const bool ok = (orient2d(q0, q1, q2) > 0 && orient2d(q0, q2, q3) > 0) ||
                        (orient2d(q1, q2, q3) > 0 && orient2d(q1, q3, q0) > 0);
        if (!ok) fail({x, y});
      }
  }
  out.pass = out.cells > 0 && out.failing_cells == 0;
  return out;
}

namespace {

bool inside_polygon(const std::vector<Vec2>& poly, Vec2 p) {
  bool in = false;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    const Vec2 a = poly[i], b = poly[j];
    if ((a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x)
      in = !in;
  }
  return in;
}

}  // namespace

DelaunayData deformed_delaunay(const DeformedPattern& P) {
  const Box& L = P.lattice;
  std::vector<Vec2> points(P.image.data());
  if (points.empty()) throw InsufficientWindowError("deformed pattern has no vertices");
  if (P.dimension == 1) {
    Window w;
    w.x0 = w.x1 = points.front().x;
    for (const Vec2& p : points) {
      w.x0 = std::min(w.x0, p.x);
      w.x1 = std::max(w.x1, p.x);
    }
    return delaunay_radii(points, w, 1);
  }
  if (L.width < 4 || L.height < 4) throw InsufficientWindowError("lattice too small to deform");

  // Boundary of the image of the lattice, counter-clockwise in the source.
  std::vector<Vec2> boundary;
  for (int x = L.x0; x < L.x1() - 1; ++x) boundary.push_back(P.at({x, L.y0}));
  for (int y = L.y0; y < L.y1() - 1; ++y) boundary.push_back(P.at({L.x1() - 1, y}));
  for (int x = L.x1() - 1; x > L.x0; --x) boundary.push_back(P.at({x, L.y1() - 1}));
  for (int y = L.y1() - 1; y > L.y0; --y) boundary.push_back(P.at({L.x0, y}));

  // Bounding box of the image of the central half of the lattice.
  const Box mid{L.x0 + L.width / 4, L.y0 + L.height / 4, std::max(1, L.width / 2),
                std::max(1, L.height / 2)};
  Window w{INFINITY, INFINITY, -INFINITY, -INFINITY};
  for (int y = mid.y0; y < mid.y1(); ++y)
    for (int x = mid.x0; x < mid.x1(); ++x) {
      const Vec2 p = P.at({x, y});
      w.x0 = std::min(w.x0, p.x);
      w.y0 = std::min(w.y0, p.y);
      w.x1 = std::max(w.x1, p.x);
      w.y1 = std::max(w.y1, p.y);
    }
  for (int attempt = 0; attempt < 40; ++attempt) {
    bool ok = true;
    for (int i = 0; i <= 16 && ok; ++i) {
      const double t = i / 16.0;
      const double x = w.x0 + t * (w.x1 - w.x0), y = w.y0 + t * (w.y1 - w.y0);
      ok = inside_polygon(boundary, {x, w.y0}) && inside_polygon(boundary, {x, w.y1}) &&
           inside_polygon(boundary, {w.x0, y}) && inside_polygon(boundary, {w.x1, y});
    }
    if (ok) return delaunay_radii(points, w, 2);
    const double sx = (w.x1 - w.x0) * 0.05, sy = (w.y1 - w.y0) * 0.05;
    w = {w.x0 + sx, w.y0 + sy, w.x1 - sx, w.y1 - sy};
  }
  throw InsufficientWindowError("no window fits inside the deformed lattice");
}

}  // namespace aplab

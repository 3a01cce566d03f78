#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "aplab/exact_sum.hpp"
#include "aplab/geometry.hpp"
#include "aplab/symbolic.hpp"

namespace aplab {

/// Pattern-equivariant vector assigned to vertices (cells of the cube lattice).
struct VertexPotential {
  int radius = 0;
  /// Keyed by patch_key of the centred side-(2R+1) patch.
  std::map<std::string, Vec2> table;

  Vec2 value(const Configuration& config, Cell v) const;
};

/// Pattern-equivariant function on oriented unit edges of the cube lattice.
/// The edge from v to v + e_axis is keyed by (axis, patch around v); the
/// reversed edge takes the negated value.
class EdgeCocycle {
 public:
  struct Table {
    std::map<std::pair<int, std::string>, Vec2> table;
  };
  /// f(e) = A e, independent of the pattern.
  struct Linear {
    Mat2 matrix;
  };
  struct Coboundary {
    VertexPotential potential;
  };
  struct Sum {
    std::shared_ptr<const EdgeCocycle> first, second;
  };

  static EdgeCocycle table(int radius, std::map<std::pair<int, std::string>, Vec2> table);
  static EdgeCocycle linear(const Mat2& matrix);
  static EdgeCocycle identity() { return linear(Mat2{}); }

  int radius() const { return radius_; }
  const auto& kind() const { return kind_; }

  /// Value on the edge from v to v + sign * e_axis.
  Vec2 value(const Configuration& config, Cell v, int axis, int sign = 1) const;
  /// Adds the value of that edge to an exact accumulator without rounding.
  void accumulate(const Configuration& config, Cell v, int axis, int sign,
                  ExactVecSum& sum) const;

  friend EdgeCocycle coboundary_from(const VertexPotential& s);
  friend EdgeCocycle operator+(const EdgeCocycle& f, const EdgeCocycle& g);

 private:
  EdgeCocycle(int radius, std::variant<Table, Linear, Coboundary, Sum> kind)
      : radius_(radius), kind_(std::move(kind)) {}
  void add_forward(const Configuration& config, Cell v, int axis, int factor,
                   ExactVecSum& sum) const;

  int radius_;
  std::variant<Table, Linear, Coboundary, Sum> kind_;
};

/// f(e) = s(e+) - s(e-); the result has radius s.radius + 1.
EdgeCocycle coboundary_from(const VertexPotential& s);
EdgeCocycle operator+(const EdgeCocycle& f, const EdgeCocycle& g);

/// Vertices carrying edge values: the window shrunk by the cocycle radius.
Box cocycle_domain(const Configuration& config, const EdgeCocycle& f);

struct CocycleVerdict {
  bool pass = false;
  double worst_residual = 0;
  /// Start vertex (local) and length of the worst circuit.
  Cell worst_start;
  int worst_length = 0;
  long circuits = 0;
};

/// Checks every elementary square of the domain (d = 2) plus `trials` random
/// closed lattice walks. A circuit passes when the exact norm of its sum is at
/// most 1e-9 times its length.
CocycleVerdict verify_cocycle(const Configuration& config, const EdgeCocycle& f, int trials,
                              std::uint64_t seed = 0);

struct DeformedPattern {
  int dimension = 1;
  Box lattice;  // local coordinates of the vertices
  Cell base;    // local coordinate of the base vertex
  /// F(v) for each vertex of `lattice`, row-major.
  Grid<Vec2> image;
  /// Largest |F(v) - sum along an independent random path| over the checks.
  double path_residual = 0;
  int path_checks = 0;

  Vec2 at(Cell v) const { return image(v.x - lattice.x0, v.y - lattice.y0); }
};

struct IntegrationOptions {
  int verify_trials = 64;
  int path_checks = 100;
  std::uint64_t seed = 0;
};

/// F(v) = sum of f along a spanning-tree path from `base`. Refuses (CocycleError)
/// when verify_cocycle fails, or when an independent path disagrees by > 1e-9.
DeformedPattern integrate(const Configuration& config, const EdgeCocycle& f, Cell base,
                          const IntegrationOptions& options = {});

struct NondegeneracyVerdict {
  bool pass = false;
  std::optional<Cell> failing_cell;
  long failing_cells = 0;
  long cells = 0;
};

/// Every unit cell of the lattice must map to a positively oriented simple
/// quadrilateral (d = 2) or a segment of positive length (d = 1).
NondegeneracyVerdict nondegeneracy_check(const DeformedPattern& pattern);

/// Delaunay radii of the image points over a window inside the image of the lattice.
DelaunayData deformed_delaunay(const DeformedPattern& pattern);

}  // namespace aplab

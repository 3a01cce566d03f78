#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "aplab/symbolic.hpp"

namespace aplab {

/// Cell-valued sliding block code: the output symbol at a cell is looked up
/// from the side-(2R+1) input patch centred on it.
struct BlockCode {
  std::string name;
  int dimension = 1;
  int radius = 0;
  AlphabetPtr output_alphabet;
  /// Keyed by patch_key of the centred input patch.
  std::map<std::string, SymbolId> table;
};

/// Local rule selecting marked cells.
class PointingRule {
 public:
  struct All {};
  /// Marks cells whose centred side-(2R+1) patch maps to true.
  struct Table {
    int radius = 0;
    std::map<std::string, bool> table;
  };
  /// Marks cells carrying one of the listed symbols (radius 0, total).
  struct Symbols {
    std::vector<std::string> symbols;
  };
  /// Pattern-independent: global x = rx mod mx (and y = ry mod my in 2-D).
  struct Lattice {
    int mx = 1, rx = 0, my = 1, ry = 0;
  };
  struct Union {
    std::shared_ptr<const PointingRule> first, second;
  };

  static PointingRule all();
  static PointingRule symbols(std::vector<std::string> marked);
  static PointingRule table(int radius, std::map<std::string, bool> table);
  static PointingRule lattice(int mx, int rx, int my = 1, int ry = 0);

  const std::string& name() const { return name_; }
  PointingRule named(std::string name) const;
  int radius() const;
  /// Whether local cell c is marked; c must be at least radius() from the border.
  bool marks(const Configuration& config, Cell c) const;
  const auto& kind() const { return kind_; }

  friend PointingRule union_pointing(const PointingRule& first, const PointingRule& second);

 private:
  PointingRule(std::string name, std::variant<All, Table, Symbols, Lattice, Union> kind)
      : name_(std::move(name)), kind_(std::move(kind)) {}

  std::string name_;
  std::variant<All, Table, Symbols, Lattice, Union> kind_;
};

/// Disjunction of two rules; the radius is the larger of the two.
PointingRule union_pointing(const PointingRule& first, const PointingRule& second);

/// Boolean mask of marked cells; cells closer than radius() to the border are
/// not evaluable and stay unmarked. `evaluable` receives the evaluable box.
Grid<std::uint8_t> mark_mask(const Configuration& config, const PointingRule& rule,
                             Box* evaluable = nullptr);

struct PointingOptions {
  /// Largest accepted l-infinity distance from an interior cell to a mark.
  int density_cap = 64;
};

struct PointedSet {
  Grid<std::uint8_t> mask;
  std::vector<Cell> marks;  // local coordinates, row-major order
  Box evaluable;
  /// Smallest l-infinity distance between two marks (INT_MAX for a single mark).
  int discreteness = 0;
  /// Largest l-infinity distance from a safe-interior cell to the nearest mark.
  int covering_radius = 0;
};

PointedSet apply_pointing(const Configuration& config, const PointingRule& rule,
                          const PointingOptions& options = {});

/// Output window is the input shrunk by the code radius on every side.
Configuration apply_code(const Configuration& config, const BlockCode& code);

struct MldResult {
  bool mld = false;
  /// Global coordinate of the first cell where inverse(code(x)) != x.
  std::optional<Cell> failing_cell;
};

MldResult mld_check(const Configuration& config, const BlockCode& code,
                    const BlockCode& candidate_inverse);

/// Tabulates code entries for every centred patch occurring in `config`.
BlockCode tabulate_code(const Configuration& config, std::string name, int radius,
                        AlphabetPtr output_alphabet,
                        const std::function<std::string(const Configuration&, Cell)>& output);

}  // namespace aplab

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "aplab/grid.hpp"

namespace aplab {

using SymbolId = std::uint16_t;

/// Ordered finite set of named symbols.
class Alphabet {
 public:
  explicit Alphabet(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(SymbolId id) const { return names_.at(id); }
  const std::vector<std::string>& names() const { return names_; }
  bool contains(const std::string& name) const { return index_.count(name) != 0; }
  /// Throws PreconditionError for unknown names.
  SymbolId id(const std::string& name) const;
  /// True when every name is one character long; patch keys then use no separator.
  bool single_char() const { return single_char_; }

  bool operator==(const Alphabet& o) const { return names_ == o.names_; }

 private:
  std::vector<std::string> names_;
  std::map<std::string, SymbolId> index_;
  bool single_char_ = true;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

/// A rectangular block of symbols; one-dimensional images have height 1.
struct SymbolBlock {
  int width = 0;
  int height = 0;
  std::vector<SymbolId> cells;  // row-major, row 0 first

  SymbolId at(int x, int y) const { return cells[std::size_t(y) * width + x]; }
};

/// Substitution over an alphabet. In dimension 2 all images share one block shape.
class SubstitutionRule {
 public:
  SubstitutionRule(std::string name, int dimension, AlphabetPtr alphabet,
                   std::vector<SymbolBlock> images);

  const std::string& name() const { return name_; }
  int dimension() const { return dimension_; }
  const AlphabetPtr& alphabet() const { return alphabet_; }
  const SymbolBlock& image(SymbolId s) const { return images_.at(s); }
  /// entry (i, j) counts occurrences of symbol i in the image of symbol j.
  const std::vector<std::vector<std::uint64_t>>& abelianization() const { return matrix_; }

 private:
  std::string name_;
  int dimension_;
  AlphabetPtr alphabet_;
  std::vector<SymbolBlock> images_;
  std::vector<std::vector<std::uint64_t>> matrix_;
};

struct Provenance {
  std::string rule_id;
  int level = 0;
  std::string seed;
  /// Block codes applied after expansion, in order.
  std::vector<std::string> derivations;
  /// Per-axis growth of the window between the last two expansion levels.
  std::array<double, 2> inflation{2.0, 2.0};
};

/// Finite window of a Z^d symbolic configuration (a tiling by unit d-cubes).
class Configuration {
 public:
  Configuration(int dimension, AlphabetPtr alphabet, Grid<SymbolId> cells,
                Cell origin = {}, Provenance provenance = {}, int certified_radius = 0);

  int dimension() const { return dimension_; }
  const Alphabet& alphabet() const { return *alphabet_; }
  const AlphabetPtr& alphabet_ptr() const { return alphabet_; }
  const Grid<SymbolId>& cells() const { return cells_; }
  int width() const { return cells_.width(); }
  int height() const { return cells_.height(); }
  std::size_t size() const { return cells_.size(); }
  SymbolId at(int x, int y = 0) const { return cells_(x, y); }
  SymbolId operator[](Cell c) const { return cells_[c]; }
  /// Local box [0, width) x [0, height).
  Box box() const { return {0, 0, width(), height()}; }
  /// Global coordinate of the local cell (0, 0).
  Cell origin() const { return origin_; }
  const Provenance& provenance() const { return provenance_; }
  /// Largest side r whose anchored patch set is certified complete.
  int certified_radius() const { return certified_radius_; }

  Configuration with_certified_radius(int r) const;
  /// Symbol names of a one-dimensional window concatenated (or space-joined).
  std::string word() const;

 private:
  int dimension_;
  AlphabetPtr alphabet_;
  Grid<SymbolId> cells_;
  Cell origin_;
  Provenance provenance_;
  int certified_radius_;
};

inline constexpr std::size_t kDefaultCellCap = 50'000'000;

/// Level-fold image of `seed`, origin at the minimal corner.
Configuration expand(const SubstitutionRule& rule, const std::string& seed, int levels,
                     std::size_t cell_cap = kDefaultCellCap);

/// Largest r <= rmax such that the anchored side-s patch sets of the window and
/// of the next expansion level agree for every s <= r. Returns 0 if none does.
int certify_language(const SubstitutionRule& rule, const Configuration& config, int rmax,
                     std::size_t cell_cap = kDefaultCellCap);

/// expand followed by certify_language, with the result stored on the window.
Configuration expand_certified(const SubstitutionRule& rule, const std::string& seed,
                               int levels, int rmax,
                               std::size_t cell_cap = kDefaultCellCap);

struct PrimitivityResult {
  bool primitive = false;
  std::optional<int> power;
};

PrimitivityResult primitivity_check(const SubstitutionRule& rule);

/// Sub-window given in local coordinates. A sub-window may miss patches of the
/// full window, so the certified radius is whatever the caller vouches for.
Configuration crop(const Configuration& config, const Box& box, int certified_radius = 0);

/// Image of every cell of `config` under one substitution step.
Configuration substitute(const SubstitutionRule& rule, const Configuration& config,
                         std::size_t cell_cap = kDefaultCellCap);

}  // namespace aplab

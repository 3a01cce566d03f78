#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aplab/symbolic.hpp"

namespace aplab {

/// Anchored cube patch: side^d symbols, minimal corner at the anchor.
struct Patch {
  int dimension = 1;
  int side = 0;
  std::vector<SymbolId> symbols;  // row-major

  std::uint64_t hash() const;
  auto operator<=>(const Patch&) const = default;
};

/// Patch whose minimal corner is `anchor`; the whole patch must fit the window.
Patch extract_patch(const Configuration& config, Cell anchor, int side);

/// Flattened key of the side-(2*radius+1) patch centred on `center`. Symbol
/// names are concatenated when all are single characters and joined by ','
/// otherwise; rows of a 2-D patch are separated by '/', first row first.
std::string patch_key(const Configuration& config, Cell center, int radius);

/// Exact equivalence classes of anchored side-r patches, refined one side at a
/// time: a side-(r+1) patch is determined by the side-r patches anchored at its
/// 2^d corners offset by 0 or 1, so labels never rely on hashing.
class PatchClassifier {
 public:
  explicit PatchClassifier(const Configuration& config);
  /// The classifier keeps a pointer to the window.
  explicit PatchClassifier(Configuration&&) = delete;

  int side() const { return side_; }
  /// Advances to side + 1. Requires anchors() to be non-empty afterwards.
  void grow();
  /// Anchors whose side-r patch fits the window.
  Box anchors() const;
  /// Label of the patch anchored at c (c must lie in anchors()). Labels are
  /// numbered in row-major order of first occurrence.
  int label(Cell c) const { return labels_[c]; }
  int label_count() const { return count_; }

 private:
  const Configuration* config_;
  int side_ = 1;
  int count_ = 0;
  Grid<int> labels_;
};

}  // namespace aplab

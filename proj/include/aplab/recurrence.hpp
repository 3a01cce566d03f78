#pragma once

#include <map>
#include <optional>

#include "aplab/derivation.hpp"
#include "aplab/equivalence.hpp"
#include "aplab/series.hpp"

namespace aplab {

/// R(r) for r = 1..rmax: the largest, over safe-interior marked anchors x and
/// pointed side-r patches P, of the l-infinity distance from x to the nearest
/// marked anchor carrying P. An anchor is safe when that whole ball is visible.
RepetitivitySeries repetitivity(const Configuration& config, int rmax,
                                const std::optional<PointingRule>& pointing = std::nullopt);

struct LinearRepetitivityReport {
  double lambda_hat = 0;
  /// Least-squares slope of R(r)/r over the last quartile of certified radii.
  double slope = 0;
  bool consistent = false;
};

LinearRepetitivityReport linear_repetitivity_check(const RepetitivitySeries& R);

/// Forms: Multiplicative or Offset.
EquivalenceWitness repetitivity_equivalence(const RepetitivitySeries& R1,
                                            const RepetitivitySeries& R2, int rmin, int rmax,
                                            WitnessForm form,
                                            const WitnessSearchOptions& options = {});

struct ReturnVectorSet {
  int radius = 0;
  int bound = 0;  // lambda: largest l-infinity length scanned
  /// Return vector -> number of witnessing anchor pairs.
  std::map<Cell, long> vectors;

  bool contains(Cell v) const { return vectors.count(v) != 0; }
};

ReturnVectorSet return_vectors(const Configuration& config,
                               const std::optional<PointingRule>& pointing, int r,
                               int bound);

}  // namespace aplab

#pragma once

#include <optional>
#include <vector>

#include "aplab/derivation.hpp"
#include "aplab/equivalence.hpp"
#include "aplab/series.hpp"

namespace aplab {

/// Number of distinct side-r anchored patches at marked cells, r = 1..rmax.
ComplexitySeries complexity(const Configuration& config, int rmax,
                            const std::optional<PointingRule>& pointing = std::nullopt);

/// Forms: Multiplicative or Additive.
EquivalenceWitness check_equivalence(const ComplexitySeries& p1, const ComplexitySeries& p2,
                                     int rmin, int rmax, WitnessForm form,
                                     const WitnessSearchOptions& options = {});

struct EntropyEstimate {
  int r = 0;
  double value = 0;
  /// (r, log p(r) / r^d) over the last quartile of certified radii.
  std::vector<std::pair<int, double>> trend;
  bool decreasing() const;
};

EntropyEstimate entropy_estimate(const ComplexitySeries& p, int dimension);

/// Least-squares slope of log p(r) against log r over certified r in [rmin, rmax].
double exponent_estimate(const ComplexitySeries& p, int rmin, int rmax);

struct MorseHedlundVerdict {
  /// Smallest certified n with p(n) <= n.
  std::optional<int> witness;
  int checked_up_to = 0;
};

MorseHedlundVerdict morse_hedlund_check(const ComplexitySeries& p);

}  // namespace aplab

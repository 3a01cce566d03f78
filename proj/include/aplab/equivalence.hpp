#pragma once

#include <string>
#include <vector>

#include "aplab/series.hpp"

namespace aplab {

/// Shape of the sandwich inequality being certified for series p1, p2.
enum class WitnessForm {
  /// C1 p2(floor(m r)) <= p1(r) <= C2 p2(ceil(M r))
  Multiplicative,
  /// m p2(r - a) <= p1(r) <= M p2(r + b)
  Additive,
  /// p2(r - a) - K <= p1(r) <= p2(r + b) + K
  Offset,
};

std::string to_string(WitnessForm form);
WitnessForm witness_form_from_string(const std::string& s);

struct WitnessResidual {
  int r = 0;
  /// p1(r) minus the lower bound; negative means violated. NaN if not evaluable.
  double lower_slack = 0;
  /// Upper bound minus p1(r).
  double upper_slack = 0;
};

struct EquivalenceWitness {
  WitnessForm form = WitnessForm::Multiplicative;
  double C1 = 1, C2 = 1;  // multiplicative constants
  double m = 1, M = 1;    // scale factors (multiplicative) or constants (additive)
  int a = 0, b = 0;       // shifts (additive, offset)
  double K = 0;           // offset constant
  int rmin = 0, rmax = 0;
  std::vector<WitnessResidual> residuals;
  bool pass = false;

  /// Witness for (p2, p1) obtained by inverting the inequalities of a
  /// multiplicative witness for (p1, p2); valid for non-decreasing series.
  EquivalenceWitness swapped() const;
};

struct WitnessSearchOptions {
  int scale_exponent = 6;     // m, M in {2^-6 .. 2^6}
  int constant_exponent = 10; // C in {2^-10 .. 2^10}
  int max_shift = 16;         // a, b in {0 .. 16}
  int max_offset = 16;        // K in {0 .. 16}
};

/// Searches the dyadic grid for the preferred witness. Throws RangeError when
/// the certified radii of p1 and p2 do not overlap [rmin, rmax].
EquivalenceWitness search_witness(const SampledSeries& p1, const SampledSeries& p2,
                                  int rmin, int rmax, WitnessForm form,
                                  const WitnessSearchOptions& options = {});

/// Re-evaluates fixed witness parameters on [rmin, rmax]; fills residuals and pass.
EquivalenceWitness evaluate_witness(const SampledSeries& p1, const SampledSeries& p2,
                                    EquivalenceWitness witness, int rmin, int rmax);

}  // namespace aplab

#include "aplab/counting.hpp"

#include <cmath>

#include "aplab/error.hpp"
#include "aplab/patch.hpp"

namespace aplab {

ComplexitySeries complexity(const Configuration& config, int rmax,
                            const std::optional<PointingRule>& pointing) {
  if (rmax < 1) throw PreconditionError("rmax must be at least 1");
  const int d = config.dimension();
  const int rho = pointing ? pointing->radius() : 0;
  Box evaluable = config.box();
  Grid<std::uint8_t> mask = pointing ? mark_mask(config, *pointing, &evaluable)
                                     : Grid<std::uint8_t>(config.width(), config.height(), 1);

  ComplexitySeries series;
  series.dimension = d;
  series.pointing = pointing ? pointing->name() : "full";
  series.source = config.provenance().rule_id;

  PatchClassifier classes(config);
  std::vector<char> seen;
  for (int r = 1; r <= rmax; ++r) {
    const bool fits = config.width() - r + 1 > 0 && (d == 1 || config.height() - r + 1 > 0);
    if (!fits) {
      series.set(r, 0, false);
      continue;
    }
    if (r > 1) classes.grow();
    const Box anchors = classes.anchors().intersect(evaluable);
    seen.assign(std::size_t(classes.label_count()), 0);
    std::int64_t count = 0;
    for (int y = anchors.y0; y < anchors.y1(); ++y)
      for (int x = anchors.x0; x < anchors.x1(); ++x) {
        if (!mask(x, y)) continue;
        char& s = seen[std::size_t(classes.label({x, y}))];
        if (!s) {
          s = 1;
          ++count;
        }
      }
    // The mark at x and the patch at x are both read off a side-(r + 2 rho) patch.
    const bool certified = count > 0 && r + 2 * rho <= config.certified_radius();
    series.set(r, count, certified);
  }
  return series;
}

EquivalenceWitness check_equivalence(const ComplexitySeries& p1, const ComplexitySeries& p2,
                                     int rmin, int rmax, WitnessForm form,
                                     const WitnessSearchOptions& options) {
  if (form == WitnessForm::Offset)
    throw PreconditionError("complexity equivalence uses multiplicative or additive form");
  return search_witness(p1, p2, rmin, rmax, form, options);
}

bool EntropyEstimate::decreasing() const {
  for (std::size_t i = 1; i < trend.size(); ++i)
    if (!(trend[i].second < trend[i - 1].second)) return false;
  return trend.size() >= 2;
}

EntropyEstimate entropy_estimate(const ComplexitySeries& p, int dimension) {
  const auto radii = p.certified_radii();
  if (radii.size() < 4)
    throw InsufficientDataError("entropy needs at least 4 certified entries, got " +
                                std::to_string(radii.size()));
  auto h = [&](int r) {
    return std::log(double(*p.certified_value(r))) / std::pow(double(r), dimension);
  };
  EntropyEstimate e;
  e.r = radii.back();
  e.value = h(e.r);
  const std::size_t quartile = std::max<std::size_t>(2, (radii.size() + 3) / 4);
  for (std::size_t i = radii.size() - quartile; i < radii.size(); ++i)
    e.trend.emplace_back(radii[i], h(radii[i]));
  return e;
}

double exponent_estimate(const ComplexitySeries& p, int rmin, int rmax) {
  std::vector<double> xs, ys;
  for (int r : p.certified_radii()) {
    if (r < rmin || r > rmax) continue;
    const auto v = *p.certified_value(r);
    if (v < 1) throw InsufficientDataError("exponent needs positive counts");
    xs.push_back(std::log(double(r)));
    ys.push_back(std::log(double(v)));
  }
  if (xs.size() < 8)
    throw InsufficientDataError("exponent needs at least 8 certified entries in range, got " +
                                std::to_string(xs.size()));
  const double n = double(xs.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

MorseHedlundVerdict morse_hedlund_check(const ComplexitySeries& p) {
  if (p.dimension != 1)
    throw UnsupportedDimensionError("Morse-Hedlund criterion applies to 1-D series only");
  MorseHedlundVerdict v;
  for (int n : p.certified_radii()) {
    v.checked_up_to = n;
    if (*p.certified_value(n) <= n) {
      v.witness = n;
      return v;
    }
  }
  return v;
}

}  // namespace aplab

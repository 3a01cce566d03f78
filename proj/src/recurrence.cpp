#include "aplab/recurrence.hpp"

#include <cmath>

#include "aplab/error.hpp"
#include "aplab/parallel.hpp"
#include "aplab/patch.hpp"
#include "distance.hpp"

namespace aplab {

namespace {

struct Pointed {
  Grid<std::uint8_t> mask;
  Box evaluable;
  int radius = 0;
};

Pointed pointed_cells(const Configuration& config, const std::optional<PointingRule>& pointing) {
  Pointed p;
  p.evaluable = config.box();
  if (pointing) {
    p.mask = mark_mask(config, *pointing, &p.evaluable);
    p.radius = pointing->radius();
  } else {
    p.mask = Grid<std::uint8_t>(config.width(), config.height(), 1);
  }
  return p;
}

/// Largest return distance over anchors of `box` whose value is trusted.
struct Scan {
  int value = -1;
  long anchors = 0;
};

}  // namespace

RepetitivitySeries repetitivity(const Configuration& config, int rmax,
                                const std::optional<PointingRule>& pointing) {
  if (rmax < 1) throw PreconditionError("rmax must be at least 1");
  if (rmax > config.certified_radius())
    throw PreconditionError("rmax " + std::to_string(rmax) + " exceeds the certified radius " +
                            std::to_string(config.certified_radius()));
  const int d = config.dimension();
  const Pointed pt = pointed_cells(config, pointing);

  RepetitivitySeries series;
  series.dimension = d;
  series.pointing = pointing ? pointing->name() : "full";
  series.source = config.provenance().rule_id;

  PatchClassifier classes(config);
  for (int r = 1; r <= rmax; ++r) {
    if (r > 1) classes.grow();
    const Box A = classes.anchors().intersect(pt.evaluable);
    if (A.empty()) throw InsufficientWindowError("no anchor fits a side-" + std::to_string(r) + " patch");

    // Compact labels of the pointed patches.
    std::vector<int> compact(std::size_t(classes.label_count()), -1);
    std::vector<std::vector<Cell>> occurrences;
    for (int y = A.y0; y < A.y1(); ++y)
      for (int x = A.x0; x < A.x1(); ++x) {
        if (!pt.mask(x, y)) continue;
        int& c = compact[std::size_t(classes.label({x, y}))];
        if (c < 0) {
          c = int(occurrences.size());
          occurrences.emplace_back();
        }
        occurrences[std::size_t(c)].push_back({x, y});
      }
    if (occurrences.empty()) throw InsufficientWindowError("no marked anchor in the window");

    // D(x) = max over patches of the distance from x to the nearest occurrence.
    const int workers = worker_count();
    std::vector<Grid<int>> worst(std::size_t(workers), Grid<int>(config.width(), config.height(), 0));
    parallel_chunks(occurrences.size(), [&](int w, std::size_t begin, std::size_t end) {
      Grid<std::uint8_t> src(config.width(), config.height(), 0);
      Grid<int> dist;
      Grid<int>& acc = worst[std::size_t(w)];
      for (std::size_t k = begin; k < end; ++k) {
        for (const Cell& c : occurrences[k]) src[c] = 1;
        detail::chebyshev_distance(src, A, d, dist);
        for (const Cell& c : occurrences[k]) src[c] = 0;
        for (int y = A.y0; y < A.y1(); ++y)
          for (int x = A.x0; x < A.x1(); ++x) {
            const int v = dist(x, y) < 0 ? INT32_MAX : dist(x, y);
            if (v > acc(x, y)) acc(x, y) = v;
          }
      }
    });
    for (std::size_t w = 1; w < worst.size(); ++w)
      for (std::size_t i = 0; i < worst[0].size(); ++i)
        worst[0].data()[i] = std::max(worst[0].data()[i], worst[w].data()[i]);
    const Grid<int>& D = worst[0];

    // The same maximum over the sub-window one substitution level smaller.
    const auto& infl = config.provenance().inflation;
    const Box sub{A.x0, A.y0, int(std::ceil(A.width / std::max(1.0, infl[0]))),
                  d == 2 ? int(std::ceil(A.height / std::max(1.0, infl[1]))) : 1};
    Scan full, small;
    for (int y = A.y0; y < A.y1(); ++y)
      for (int x = A.x0; x < A.x1(); ++x) {
        if (!pt.mask(x, y)) continue;
        const int v = D(x, y);
        if (v > A.inner_margin({x, y}, d)) continue;
        full.value = std::max(full.value, v);
        ++full.anchors;
        if (sub.contains({x, y})) {
          small.value = std::max(small.value, v);
          ++small.anchors;
        }
      }
    if (full.anchors == 0)
      throw InsufficientWindowError("window too small for a safe interior at side " +
                                    std::to_string(r));
    const bool certified = small.anchors > 0 && small.value == full.value &&
                           r + 2 * pt.radius <= config.certified_radius();
    series.set(r, full.value, certified);
  }
  return series;
}

LinearRepetitivityReport linear_repetitivity_check(const RepetitivitySeries& R) {
  std::vector<int> radii;
  for (int r : R.certified_radii())
    if (r >= 1) radii.push_back(r);
  if (radii.size() < 4)
    throw InsufficientDataError("linear repetitivity needs at least 4 certified entries");
  LinearRepetitivityReport rep;
  std::vector<double> ratio;
  for (int r : radii) {
    ratio.push_back(double(*R.certified_value(r)) / r);
    rep.lambda_hat = std::max(rep.lambda_hat, ratio.back());
  }
  const std::size_t q = std::max<std::size_t>(2, (radii.size() + 3) / 4);
  const std::size_t start = radii.size() - q;
  double mx = 0, my = 0;
  for (std::size_t i = start; i < radii.size(); ++i) {
    mx += radii[i];
    my += ratio[i];
  }
  mx /= double(q);
  my /= double(q);
  double sxy = 0, sxx = 0;
  for (std::size_t i = start; i < radii.size(); ++i) {
    sxy += (radii[i] - mx) * (ratio[i] - my);
    sxx += (radii[i] - mx) * (radii[i] - mx);
  }
  rep.slope = sxy / sxx;
  double earlier = 0, late = 0;
  for (std::size_t i = 0; i < radii.size(); ++i)
    (i < start ? earlier : late) = std::max(i < start ? earlier : late, ratio[i]);
  // Growing: the ratio climbs over the last quartile to a new maximum.
  const bool growing = rep.slope > 0 && late > earlier * (1 + 1e-12);
  rep.consistent = !growing;
  return rep;
}

EquivalenceWitness repetitivity_equivalence(const RepetitivitySeries& R1,
                                            const RepetitivitySeries& R2, int rmin, int rmax,
                                            WitnessForm form,
                                            const WitnessSearchOptions& options) {
  if (form == WitnessForm::Additive) form = WitnessForm::Offset;
  return search_witness(R1, R2, rmin, rmax, form, options);
}

ReturnVectorSet return_vectors(const Configuration& config,
                               const std::optional<PointingRule>& pointing, int r, int bound) {
  if (r < 1) throw PreconditionError("patch side must be at least 1");
  if (r > config.certified_radius())
    throw PreconditionError("patch side exceeds the certified radius");
  const int d = config.dimension();
  const Pointed pt = pointed_cells(config, pointing);
  PatchClassifier classes(config);
  for (int s = 1; s < r; ++s) classes.grow();
  const Box A = classes.anchors().intersect(pt.evaluable);

  ReturnVectorSet out;
  out.radius = r;
  out.bound = bound;
  const int by = d == 2 ? bound : 0;
  for (int y = A.y0; y < A.y1(); ++y)
    for (int x = A.x0; x < A.x1(); ++x) {
      if (!pt.mask(x, y)) continue;
      const int l = classes.label({x, y});
      for (int dy = -by; dy <= by; ++dy)
        for (int dx = -bound; dx <= bound; ++dx) {
          if (!dx && !dy) continue;
          const Cell n{x + dx, y + dy};
          if (A.contains(n) && pt.mask[n] && classes.label(n) == l) ++out.vectors[{dx, dy}];
        }
    }
  return out;
}

}  // namespace aplab

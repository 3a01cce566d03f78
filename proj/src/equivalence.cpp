#include "aplab/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "aplab/error.hpp"

namespace aplab {

std::string to_string(WitnessForm form) {
  switch (form) {
    case WitnessForm::Multiplicative: return "multiplicative";
    case WitnessForm::Additive: return "additive";
    case WitnessForm::Offset: return "offset";
  }
  return "?";
}

WitnessForm witness_form_from_string(const std::string& s) {
  if (s == "multiplicative") return WitnessForm::Multiplicative;
  if (s == "additive") return WitnessForm::Additive;
  if (s == "offset") return WitnessForm::Offset;
  throw PreconditionError("unknown witness form '" + s + "'");
}

EquivalenceWitness EquivalenceWitness::swapped() const {
  EquivalenceWitness w = *this;
  w.residuals.clear();
  switch (form) {
    case WitnessForm::Multiplicative:
      // C1 p2(mr) <= p1(r) gives p2(s) <= p1(s/m) / C1, and symmetrically.
      w.m = 1 / M;
      w.C1 = 1 / C2;
      w.M = 1 / m;
      w.C2 = 1 / C1;
      break;
    case WitnessForm::Additive:
      w.a = b;
      w.m = 1 / M;
      w.b = a;
      w.M = 1 / m;
      break;
    case WitnessForm::Offset:
      w.a = b;
      w.b = a;
      break;
  }
  return w;
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Evaluation {
  std::vector<double> slack;
  int violations = 0;
  double worst = 0;  // most negative slack, as a positive magnitude

  bool feasible() const { return violations == 0; }
  bool better_than(const Evaluation& o) const {
    if (violations != o.violations) return violations < o.violations;
    return worst < o.worst;
  }
};

template <class Bound>
Evaluation evaluate_side(const SampledSeries& p1, const std::vector<int>& radii, Bound bound) {
  Evaluation e;
  e.slack.reserve(radii.size());
  for (int r : radii) {
    const double lhs = double(*p1.certified_value(r));
    const double s = bound(r, lhs);
    e.slack.push_back(s);
    if (std::isnan(s)) {
      ++e.violations;
      e.worst = std::numeric_limits<double>::infinity();
    } else if (s < 0) {
      ++e.violations;
      e.worst = std::max(e.worst, -s);
    }
  }
  return e;
}

double value_at(const SampledSeries& p, long s) {
  if (s < 1 || s > std::numeric_limits<int>::max()) return kNaN;
  const auto v = p.certified_value(int(s));
  return v ? double(*v) : kNaN;
}

std::vector<int> tested_radii(const SampledSeries& p1, const SampledSeries& p2, int rmin,
                              int rmax) {
  std::vector<int> radii;
  for (int r = std::max(rmin, 1); r <= rmax; ++r)
    if (p1.certified_value(r) && p2.certified_value(r)) radii.push_back(r);
  if (radii.empty())
    throw RangeError("no certified radius common to both series in [" + std::to_string(rmin) +
                     ", " + std::to_string(rmax) + "]");
  return radii;
}

// Lower-bound slack p1(r) - bound and upper-bound slack bound - p1(r) for each form.
auto lower_mult(const SampledSeries& p2, double m, double C1) {
  return [&p2, m, C1](int r, double lhs) {
    const double v = value_at(p2, long(std::floor(m * r)));
    return lhs - C1 * v;
  };
}
auto upper_mult(const SampledSeries& p2, double M, double C2) {
  return [&p2, M, C2](int r, double lhs) {
    const double v = value_at(p2, long(std::ceil(M * r)));
    return C2 * v - lhs;
  };
}
auto lower_add(const SampledSeries& p2, int a, double m) {
  return [&p2, a, m](int r, double lhs) { return lhs - m * value_at(p2, long(r) - a); };
}
auto upper_add(const SampledSeries& p2, int b, double M) {
  return [&p2, b, M](int r, double lhs) { return M * value_at(p2, long(r) + b) - lhs; };
}
auto lower_off(const SampledSeries& p2, int a, double K) {
  return [&p2, a, K](int r, double lhs) { return lhs - (value_at(p2, long(r) - a) - K); };
}
auto upper_off(const SampledSeries& p2, int b, double K) {
  return [&p2, b, K](int r, double lhs) { return value_at(p2, long(r) + b) + K - lhs; };
}

std::vector<int> exponents_by_closeness(int e, bool prefer_small) {
  std::vector<int> ks;
  for (int k = -e; k <= e; ++k) ks.push_back(k);
  std::stable_sort(ks.begin(), ks.end(), [prefer_small](int x, int y) {
    if (std::abs(x) != std::abs(y)) return std::abs(x) < std::abs(y);
    return prefer_small ? x < y : x > y;
  });
  return ks;
}

/// Smallest integer K >= 0 making offset bound hold, or NaN if p2 is not evaluable.
double required_offset(const SampledSeries& p1, const SampledSeries& p2,
                       const std::vector<int>& radii, int shift, bool lower) {
  double K = 0;
  for (int r : radii) {
    const double v = value_at(p2, long(r) + shift);
    if (std::isnan(v)) return kNaN;
    const double lhs = double(*p1.certified_value(r));
    K = std::max(K, lower ? v - lhs : lhs - v);
  }
  return K;
}

void fill_residuals(EquivalenceWitness& w, const std::vector<int>& radii,
                    const Evaluation& lower, const Evaluation& upper) {
  w.residuals.clear();
  for (std::size_t i = 0; i < radii.size(); ++i)
    w.residuals.push_back({radii[i], lower.slack[i], upper.slack[i]});
  w.pass = lower.feasible() && upper.feasible();
}

}  // namespace

EquivalenceWitness evaluate_witness(const SampledSeries& p1, const SampledSeries& p2,
                                    EquivalenceWitness w, int rmin, int rmax) {
  const auto radii = tested_radii(p1, p2, rmin, rmax);
  w.rmin = rmin;
  w.rmax = rmax;
  Evaluation lower, upper;
  switch (w.form) {
    case WitnessForm::Multiplicative:
      lower = evaluate_side(p1, radii, lower_mult(p2, w.m, w.C1));
      upper = evaluate_side(p1, radii, upper_mult(p2, w.M, w.C2));
      break;
    case WitnessForm::Additive:
      lower = evaluate_side(p1, radii, lower_add(p2, w.a, w.m));
      upper = evaluate_side(p1, radii, upper_add(p2, w.b, w.M));
      break;
    case WitnessForm::Offset:
      lower = evaluate_side(p1, radii, lower_off(p2, w.a, w.K));
      upper = evaluate_side(p1, radii, upper_off(p2, w.b, w.K));
      break;
  }
  fill_residuals(w, radii, lower, upper);
  return w;
}

EquivalenceWitness search_witness(const SampledSeries& p1, const SampledSeries& p2, int rmin,
                                  int rmax, WitnessForm form,
                                  const WitnessSearchOptions& options) {
  const auto radii = tested_radii(p1, p2, rmin, rmax);
  EquivalenceWitness w;
  w.form = form;
  w.rmin = rmin;
  w.rmax = rmax;

  // Each side is searched independently; the first feasible candidate in
  // preference order wins, otherwise the least-violating one is kept.
  auto search = [&](auto&& candidates, auto&& make_bound, auto&& accept) {
    Evaluation best;
    bool have = false;
    for (const auto& c : candidates) {
      Evaluation e = evaluate_side(p1, radii, make_bound(c));
      if (!have || e.better_than(best)) {
        best = e;
        accept(c);
        have = true;
      }
      if (e.feasible()) break;
    }
    return best;
  };

  std::vector<double> constants_up, constants_down;
  for (int k = -options.constant_exponent; k <= options.constant_exponent; ++k)
    constants_up.push_back(std::ldexp(1.0, k));
  constants_down.assign(constants_up.rbegin(), constants_up.rend());

  Evaluation lower, upper;
  if (form == WitnessForm::Multiplicative) {
    // Scale factors closest to 1 first; then the tightest constant.
    std::vector<std::pair<double, double>> lower_c, upper_c;
    for (int k : exponents_by_closeness(options.scale_exponent, false))
      for (double c : constants_down) lower_c.emplace_back(std::ldexp(1.0, k), c);
    for (int k : exponents_by_closeness(options.scale_exponent, true))
      for (double c : constants_up) upper_c.emplace_back(std::ldexp(1.0, k), c);
    lower = search(lower_c, [&](auto c) { return lower_mult(p2, c.first, c.second); },
                   [&](auto c) { w.m = c.first; w.C1 = c.second; });
    upper = search(upper_c, [&](auto c) { return upper_mult(p2, c.first, c.second); },
                   [&](auto c) { w.M = c.first; w.C2 = c.second; });
  } else if (form == WitnessForm::Additive) {
    // Smallest shift first; then the tightest constant.
    std::vector<std::pair<int, double>> lower_c, upper_c;
    for (int s = 0; s <= options.max_shift; ++s) {
      for (double c : constants_down) lower_c.emplace_back(s, c);
      for (double c : constants_up) upper_c.emplace_back(s, c);
    }
    lower = search(lower_c, [&](auto c) { return lower_add(p2, c.first, c.second); },
                   [&](auto c) { w.a = c.first; w.m = c.second; });
    upper = search(upper_c, [&](auto c) { return upper_add(p2, c.first, c.second); },
                   [&](auto c) { w.b = c.first; w.M = c.second; });
  } else {
    // Smallest shift whose required offset fits the cap; K is shared by both sides.
    int a = 0, b = 0;
    double Kl = kNaN, Ku = kNaN;
    for (int s = 0; s <= options.max_shift; ++s) {
      const double K = required_offset(p1, p2, radii, -s, true);
      if (!std::isnan(K) && K <= options.max_offset) {
        a = s;
        Kl = K;
        break;
      }
    }
    for (int s = 0; s <= options.max_shift; ++s) {
      const double K = required_offset(p1, p2, radii, s, false);
      if (!std::isnan(K) && K <= options.max_offset) {
        b = s;
        Ku = K;
        break;
      }
    }
    w.a = a;
    w.b = b;
    if (std::isnan(Kl) || std::isnan(Ku)) {
      w.K = options.max_offset;
    } else {
      w.K = std::max(Kl, Ku);
    }
    lower = evaluate_side(p1, radii, lower_off(p2, w.a, w.K));
    upper = evaluate_side(p1, radii, upper_off(p2, w.b, w.K));
  }
  fill_residuals(w, radii, lower, upper);
  return w;
}

}  // namespace aplab

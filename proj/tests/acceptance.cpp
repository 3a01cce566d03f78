// Runs the eleven acceptance criteria and prints one PASS/FAIL line each.
// Values are recomputed here with the library entry points and cross-checked
// against the brute-force oracles; the certify suites are not consulted.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "aplab/counting.hpp"
#include "aplab/deformation.hpp"
#include "aplab/io.hpp"
#include "aplab/patch.hpp"
#include "aplab/recurrence.hpp"
#include "oracles.hpp"

using namespace aplab;

namespace {

std::string fixture(const std::string& rel) {
  return read_file(std::string(APLAB_FIXTURE_DIR) + "/" + rel);
}
SubstitutionRule rule(const std::string& name) { return parse_rule(fixture("rules/" + name + ".json")); }
BlockCode code(const std::string& name) { return parse_code(fixture("codes/" + name + ".json")); }
PointingRule pointing(const std::string& name) { return parse_pointing(fixture("pointing/" + name + ".json")); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

Configuration word_config(const std::string& w, int certified) {
  auto alpha = std::make_shared<const Alphabet>(std::vector<std::string>{"a", "b", "c"});
  Grid<SymbolId> g(int(w.size()), 1);
  for (std::size_t i = 0; i < w.size(); ++i) g(int(i), 0) = alpha->id(std::string(1, w[i]));
  return Configuration(1, alpha, std::move(g), {}, {}, certified);
}

Outcome fibonacci_complexity() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto c = expand_certified(rule("fibonacci"), "a", 16, 40);
  const auto p = complexity(c, 30);
  const double elapsed = seconds_since(t0);
  // Factor enumeration on the level-16 prefix, stable against level 17.
  const std::string w16 = oracle::fibonacci_word(std::size_t(c.width()));
  const std::string w17 = oracle::fibonacci_word(w16.size() + 1);
  for (int n = 1; n <= 30; ++n) {
    const auto v = p.certified_value(n);
    const std::size_t f16 = oracle::factor_count(w16, std::size_t(n));
    const std::size_t f17 = oracle::factor_count(w17, std::size_t(n));
    if (!v || *v != n + 1 || f16 != std::size_t(n + 1) || f17 != f16)
      return {false, "n=" + std::to_string(n)};
  }
  return {elapsed < 1.0, "p(n)=n+1 for n<=30, " + std::to_string(elapsed) + " s"};
}

Outcome thue_morse_complexity() {
  const auto c = expand_certified(rule("thue_morse"), "0", 10, 24);
  const auto p = complexity(c, 20);
  for (int n = 1; n <= 20; ++n) {
    const auto v = p.certified_value(n);
    if (!v || std::size_t(*v) != oracle::pairwise_patch_count(c, n)) return {false, "n=" + std::to_string(n)};
  }
  return {true, "matches pairwise oracle for n<=20"};
}

Outcome morse_hedlund() {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 50; ++t) {
    const int period = 2 + t % 9;
    std::string u;
    do {
      u.clear();
      for (int i = 0; i < period; ++i) u += char('a' + rng() % 3);
      // Keep the least period equal to `period`.
    } while ([&] {
      for (int q = 1; q < period; ++q)
        if (period % q == 0 && u.substr(0, std::size_t(period - q)) == u.substr(std::size_t(q))) return true;
      return false;
    }());
    std::string w;
    while (w.size() < 300) w += u;
    const auto v = morse_hedlund_check(complexity(word_config(w, 40), 40));
    if (!v.witness || *v.witness > period) return {false, "word " + u};
  }
  const auto fib = morse_hedlund_check(complexity(expand_certified(rule("fibonacci"), "a", 14, 40), 30));
  const auto tm = morse_hedlund_check(complexity(expand_certified(rule("thue_morse"), "0", 11, 40), 30));
  const bool ok = !fib.witness && fib.checked_up_to >= 30 && !tm.witness && tm.checked_up_to >= 30;
  return {ok, "50 periodic words flagged; aperiodic clean to n=30"};
}

Outcome transversal() {
  const auto c = expand_certified(rule("thue_morse"), "0", 11, 40);
  const auto m0 = pointing("mark0"), m1 = pointing("mark1");
  const auto p0 = complexity(c, 40, m0), p1 = complexity(c, 40, m1);
  // Shift bound from the largest gap of either marked set.
  const int gap = std::max(apply_pointing(c, m0).covering_radius, apply_pointing(c, m1).covering_radius);
  for (int r = 5; r <= 25; ++r)
    if (std::size_t(p0.entries.at(r).value) !=
        oracle::pairwise_patch_count(c, r, [&](int x, int) { return c.at(x) == 0; }))
      return {false, "pointed count mismatch at r=" + std::to_string(r)};
  WitnessSearchOptions opts;
  opts.max_shift = 4;
  const auto a = check_equivalence(p0, p1, 5, 25, WitnessForm::Additive, opts);
  const auto b = check_equivalence(p1, p0, 5, 25, WitnessForm::Additive, opts);
  const bool ok = a.pass && b.pass && a.a <= 4 && a.b <= 4 && b.a <= 4 && b.b <= 4 && gap <= 4;
  return {ok, "a=" + std::to_string(a.a) + " b=" + std::to_string(a.b) + " gap=" + std::to_string(gap)};
}

Outcome mld() {
  const auto c = expand_certified(rule("fibonacci"), "a", 16, 40);
  const auto k = code("fibonacci_2gram");
  if (!mld_check(c, k, code("fibonacci_2gram_inverse")).mld) return {false, "recode is not MLD"};
  const auto y = apply_code(c, k);
  // The recode reads x[i] x[i+1].
  const std::string w = oracle::word_of(c);
  for (int i = 0; i < y.width(); ++i)
    if (y.alphabet().name(y.at(i)) != w.substr(std::size_t(i + 1), 2)) return {false, "recode mismatch"};
  const auto p = complexity(c, 30), q = complexity(y, 30);
  WitnessSearchOptions opts;
  opts.max_shift = 2;
  const auto a = check_equivalence(q, p, 5, 25, WitnessForm::Additive, opts);
  const auto b = check_equivalence(p, q, 5, 25, WitnessForm::Additive, opts);
  const bool ok = a.pass && b.pass && std::max({a.a, a.b, b.a, b.b}) <= 2;
  return {ok, "a=" + std::to_string(a.a) + " b=" + std::to_string(a.b)};
}

Outcome repetitivity_criterion() {
  const auto per = expand_certified(rule("period_ab"), "a", 8, 32);
  const auto Rp = repetitivity(per, 30);
  if (Rp.certified_radii().empty()) return {false, "periodic series uncertified"};
  for (int r : Rp.certified_radii())
    if (*Rp.certified_value(r) != 1) return {false, "periodic R != 1"};
  const auto fib = expand_certified(rule("fibonacci"), "a", 16, 40);
  const auto R = repetitivity(fib, 30);
  const auto small = expand(rule("fibonacci"), "a", 11);
  for (int r = 2; r <= 25; ++r) {
    const auto v = R.certified_value(r);
    if (!v) return {false, "uncertified r=" + std::to_string(r)};
    const double ratio = double(*v) / r;
    if (ratio < 0.5 || ratio > 6) return {false, "ratio " + std::to_string(ratio)};
    if (r <= 8 && *v != oracle::brute_repetitivity(small, r)) return {false, "oracle mismatch"};
  }
  const auto lr = linear_repetitivity_check(R);
  const auto y = apply_code(fib, code("fibonacci_2gram"));
  const auto w = repetitivity_equivalence(repetitivity(y, 30), R, 2, 25, WitnessForm::Multiplicative);
  return {lr.consistent && w.pass, "lambda_hat=" + std::to_string(lr.lambda_hat)};
}

Outcome jump_lemma() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0, 1);
  RadiiOptions coarse;
  coarse.pitch_fraction = 0.5;
  int done = 0;
  for (int t = 0; t < 1000; ++t) {
    const double s = 3 + 2 * u(rng);
    auto pts = oracle::perturbed_grid(rng, 50, s, 0.3 * s * u(rng));
    const auto D = delaunay_radii(pts, {0, 0, 50, 50}, 2, coarse);
    const double R = D.covering_bound;
    Vec2 x, y;
    do {
      x = pts[rng() % pts.size()];
      y = pts[rng() % pts.size()];
    } while (distance(x, y) < 2 * R);
    const Vec2 xp = jump_step(D, x, y);
    // The step lands on a point nearest to z.
    const Vec2 z = x + (2 * R / distance(x, y)) * (y - x);
    double best = INFINITY;
    for (const auto& p : pts) best = std::min(best, distance(p, z));
    if (distance(xp, z) != best) return {false, "not the nearest point"};
    if (distance(xp, x) > 3 * R + 1e-9) return {false, "step exceeds 3R"};
    if (distance(xp, y) > distance(x, y) - R + 1e-9) return {false, "no progress of R"};
    const auto path = jump_path(D, x, y);
    if (double(path.steps()) > std::ceil(distance(x, y) / R)) return {false, "path too long"};
    ++done;
  }
  const double elapsed = seconds_since(t0);
  return {done == 1000 && elapsed < 5.0, std::to_string(done) + " trials, " + std::to_string(elapsed) + " s"};
}

Outcome extension() {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0, 1);
  const auto pts = oracle::perturbed_grid(rng, 30, 3, 0.4);
  const auto T = delaunay_triangulate(pts);
  std::vector<Vec2> twice, wobble;
  for (const auto& p : pts) {
    twice.push_back(2 * p);
    wobble.push_back(p + Vec2{0.6 * u(rng) - 0.3, 0.6 * u(rng) - 0.3});
  }
  const auto gi = pa_extend(T, pts), g2 = pa_extend(T, twice), gw = pa_extend(T, wobble);
  if (std::abs(gi.lipschitz - 1) > 1e-9 || std::abs(g2.lipschitz - 2) > 1e-9) return {false, "Lipschitz constants"};
  std::uniform_real_distribution<double> in(0, 30);
  int pairs = 0;
  while (pairs < 1000) {
    const Vec2 p{in(rng), in(rng)}, q{in(rng), in(rng)};
    const auto gp = gw.evaluate(p), gq = gw.evaluate(q);
    if (!gp || !gq) continue;
    ++pairs;
    if (distance(*gp, *gq) > gw.lipschitz * distance(p, q) * (1 + 1e-9) + 1e-12) return {false, "two-point bound"};
  }
  const Mat2 A{1.5, 0, 0, 1.5};
  const Vec2 c{0.75, -1};
  std::vector<std::pair<Vec2, Vec2>> samples;
  // Rays through the direction of c make the constant sharp.
  const Vec2 dir = c * (1 / c.norm());
  for (int i = 0; i <= 40; ++i) {
    samples.push_back({dir * (2.5 * i), A * (dir * (2.5 * i)) + c});
    for (int k = 0; k < 8; ++k) {
      const Vec2 x{2.5 * i * std::cos(k * 0.785398), 2.5 * i * std::sin(k * 0.785398)};
      samples.push_back({x, A * x + c});
    }
  }
  const auto env = growth_envelope(samples);
  const bool ok = std::abs(env.M - 1.5) <= 1.0 / 64 && std::abs(env.C - c.norm()) <= 1e-6;
  return {ok, "M=" + std::to_string(env.M) + " C=" + std::to_string(env.C)};
}

Outcome cocycles() {
  const auto c = expand(rule("thue_morse_2d"), "0", 5);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-0.1, 0.1), big(-1, 1);
  VertexPotential s;
  s.radius = 1;
  const Box in = c.box().shrunk(1, 2);
  for (int y = in.y0; y < in.y1(); ++y)
    for (int x = in.x0; x < in.x1(); ++x) s.table.emplace(patch_key(c, {x, y}, 1), Vec2{u(rng), u(rng)});
  const auto cob = coboundary_from(s);
  const auto v = verify_cocycle(c, cob, 200, 1);
  if (!v.pass || v.worst_residual != 0) return {false, "coboundary sum nonzero"};
  std::map<std::pair<int, std::string>, Vec2> t;
  for (int axis = 0; axis < 2; ++axis)
    for (const char* k : {"0", "1"}) t[{axis, k}] = {big(rng), big(rng)};
  const auto bad = verify_cocycle(c, EdgeCocycle::table(0, t), 0, 1);
  if (bad.pass || bad.worst_length != 4 || !(bad.worst_residual > 0)) return {false, "random table accepted"};
  const auto P = integrate(c, EdgeCocycle::identity() + cob, {16, 16});
  // Independent check: F(v) = v - base + s(v) - s(base).
  for (int y = P.lattice.y0; y < P.lattice.y1(); ++y)
    for (int x = P.lattice.x0; x < P.lattice.x1(); ++x) {
      const Vec2 want = Vec2{double(x - 16), double(y - 16)} + s.value(c, {x, y}) - s.value(c, {16, 16});
      if (distance(P.at({x, y}), want) > 1e-9) return {false, "integration mismatch"};
    }
  if (P.path_checks != 100 || P.path_residual > 1e-9) return {false, "path checks"};
  const auto line = expand(rule("thue_morse"), "0", 8);
  const auto neg = nondegeneracy_check(integrate(line, EdgeCocycle::linear({-1, 0, 0, -1}), {10, 0}));
  const auto refl = nondegeneracy_check(integrate(c, EdgeCocycle::linear({-1, 0, 0, 1}), {16, 16}));
  const bool ok = neg.cells > 0 && neg.failing_cells == neg.cells && refl.failing_cells == refl.cells;
  return {ok, "-e fails " + std::to_string(neg.failing_cells) + "/" + std::to_string(neg.cells) +
                  " cells (d=1); reflection " + std::to_string(refl.failing_cells) + "/" +
                  std::to_string(refl.cells) + " (d=2)"};
}

Outcome exponent() {
  const auto sq = synthetic_series<ComplexitySeries>(1, 256, [](int r) { return std::int64_t(r + 1) * (r + 1); });
  const double a_sq = exponent_estimate(sq, 32, 256);
  const auto chair = expand_certified(rule("chair"), "NE", 8, 24);
  if (chair.certified_radius() < 16) return {false, "chair certified to " + std::to_string(chair.certified_radius())};
  const int rmax = std::min(chair.certified_radius(), 24);
  const auto pc = complexity(chair, rmax);
  // A sub-window never shows more patches than the certified window.
  const auto corner = crop(chair, {0, 0, 64, 64});
  for (int r = 1; r <= 4; ++r)
    if (std::size_t(pc.entries.at(r).value) < oracle::pairwise_patch_count(corner, r))
      return {false, "chair count below a sub-window"};
  const double a_chair = exponent_estimate(pc, rmax / 4, rmax);
  const double a_fib = exponent_estimate(complexity(expand_certified(rule("fibonacci"), "a", 16, 40), 30), 8, 30);
  const bool ok = a_sq >= 1.95 && a_sq <= 2.05 && a_chair >= 1.8 && a_chair <= 2.2 && a_fib >= 0.9 && a_fib <= 1.1;
  return {ok, "square " + std::to_string(a_sq) + ", chair " + std::to_string(a_chair) + " (rmax " +
                  std::to_string(rmax) + "), fibonacci " + std::to_string(a_fib)};
}

Outcome entropy() {
  const auto full = synthetic_series<ComplexitySeries>(1, 40, [](int r) { return std::int64_t(1) << r; });
  const auto h = entropy_estimate(full, 1);
  const auto fib = entropy_estimate(complexity(expand_certified(rule("fibonacci"), "a", 16, 40), 30), 1);
  const bool ok = h.r == 40 && std::abs(h.value - std::log(2.0)) <= 1e-6 && fib.decreasing() &&
                  fib.value < 0.15;
  return {ok, "H=" + std::to_string(h.value) + ", fibonacci " + std::to_string(fib.value)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"fibonacci complexity", fibonacci_complexity},
      {"thue-morse complexity", thue_morse_complexity},
      {"morse-hedlund detector", morse_hedlund},
      {"transversal independence", transversal},
      {"mld invariance", mld},
      {"repetitivity", repetitivity_criterion},
      {"jump lemma", jump_lemma},
      {"piecewise-affine extension", extension},
      {"deformation cocycles", cocycles},
      {"exponent", exponent},
      {"entropy", entropy},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
  }
  return failures ? 1 : 0;
}

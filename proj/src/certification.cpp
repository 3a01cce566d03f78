#include "aplab/certification.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>
#include <sstream>

#include "aplab/counting.hpp"
#include "aplab/deformation.hpp"
#include "aplab/geometry.hpp"
#include "aplab/io.hpp"
#include "aplab/patch.hpp"
#include "aplab/recurrence.hpp"

namespace aplab {

using ojson = nlohmann::ordered_json;

bool RunReport::pass() const {
  if (assertions.empty()) return false;
  for (const auto& a : assertions)
    if (!a.pass) return false;
  return true;
}

void RunReport::check(std::string name, bool ok, std::string detail) {
  assertions.push_back({std::move(name), ok, std::move(detail)});
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"transversal", "mld", "repetitivity", "geometry",
                                              "deformation"};
  return names;
}

namespace {

class Fixtures {
 public:
  Fixtures(std::string dir, RunReport& report) : dir_(std::move(dir)), report_(report) {}

  std::string text(const std::string& name) {
    const std::filesystem::path p = std::filesystem::path(dir_) / name;
    if (!std::filesystem::is_regular_file(p))
      throw FixtureMissingError("fixture missing: " + p.string());
    std::string body = read_file(p.string());
    report_.inputs.push_back({name, sha256_hex(body)});
    return body;
  }
  SubstitutionRule rule(const std::string& name) { return parse_rule(text("rules/" + name + ".json")); }
  BlockCode code(const std::string& name) { return parse_code(text("codes/" + name + ".json")); }
  PointingRule pointing(const std::string& name) {
    return parse_pointing(text("pointing/" + name + ".json"));
  }

 private:
  std::string dir_;
  RunReport& report_;
};

class Stopwatch {
 public:
  explicit Stopwatch(RunReport& r) : report_(r), start_(std::chrono::steady_clock::now()) {}
  void lap(const std::string& stage) {
    const auto now = std::chrono::steady_clock::now();
    report_.timings.push_back({stage, std::chrono::duration<double, std::milli>(now - start_).count()});
    start_ = now;
  }

 private:
  RunReport& report_;
  std::chrono::steady_clock::time_point start_;
};

std::string num(double v) {
  std::ostringstream s;
  s.precision(12);
  s << v;
  return s.str();
}

ojson witness(const EquivalenceWitness& w) { return ojson::parse(format_witness_json(w)); }

std::string shifts(const EquivalenceWitness& w) {
  return "a=" + std::to_string(w.a) + " b=" + std::to_string(w.b) + " m=" + num(w.m) +
         " M=" + num(w.M);
}

ojson series_json(const SampledSeries& s) {
  ojson out = ojson::array();
  for (const auto& [r, e] : s.entries) out.push_back({r, e.value, e.certified});
  return out;
}

void transversal(RunReport& rep, Fixtures& fx) {
  Stopwatch clock(rep);
  const auto rule = fx.rule("thue_morse");
  const auto mark0 = fx.pointing("mark0");
  const auto mark1 = fx.pointing("mark1");
  const Configuration tm = expand_certified(rule, "0", 11, 40);
  rep.check("window certified to r >= 29", tm.certified_radius() >= 29,
            "certified radius " + std::to_string(tm.certified_radius()));
  const auto p0 = complexity(tm, 35, mark0);
  const auto p1 = complexity(tm, 35, mark1);
  clock.lap("complexity");

  const PointedSet s0 = apply_pointing(tm, mark0), s1 = apply_pointing(tm, mark1);
  const int gap = std::max(s0.covering_radius, s1.covering_radius);
  rep.results["gap"] = {{"mark0", s0.covering_radius}, {"mark1", s1.covering_radius}};
  for (const auto& [p, q, label] : {std::tuple{&p0, &p1, "mark0 vs mark1"},
                                    std::tuple{&p1, &p0, "mark1 vs mark0"}}) {
    const auto w = check_equivalence(*p, *q, 5, 25, WitnessForm::Additive);
    rep.results[label] = witness(w);
    rep.check(std::string("additive witness ") + label + " on [5,25]", w.pass, shifts(w));
    rep.check(std::string("shifts within 4 (") + label + ")", w.a <= 4 && w.b <= 4,
              shifts(w) + " gap=" + std::to_string(gap));
  }
  rep.results["p_mark0"] = series_json(p0);
  rep.results["p_mark1"] = series_json(p1);
  clock.lap("witness");
}

void mld(RunReport& rep, Fixtures& fx) {
  Stopwatch clock(rep);
  const auto fib = fx.rule("fibonacci");
  const auto code = fx.code("fibonacci_2gram");
  const auto inverse = fx.code("fibonacci_2gram_inverse");
  const Configuration x = expand_certified(fib, "a", 16, 40);
  const MldResult m = mld_check(x, code, inverse);
  rep.check("2-gram recode is MLD", m.mld,
            m.failing_cell ? "fails at " + std::to_string(m.failing_cell->x) : "");
  const Configuration y = apply_code(x, code);
  rep.check("recode certified to r >= 27", y.certified_radius() >= 27,
            "certified radius " + std::to_string(y.certified_radius()));
  const auto p = complexity(x, 35), q = complexity(y, 35);
  clock.lap("complexity");
  for (const auto& [a, b, label] :
       {std::tuple{&q, &p, "recode vs fibonacci"}, std::tuple{&p, &q, "fibonacci vs recode"}}) {
    const auto w = check_equivalence(*a, *b, 5, 25, WitnessForm::Additive);
    rep.results[label] = witness(w);
    rep.check(std::string("additive witness ") + label + " on [5,25]", w.pass, shifts(w));
    rep.check(std::string("shifts within 2 (") + label + ")", w.a <= 2 && w.b <= 2, shifts(w));
  }

  const auto tm_rule = fx.rule("thue_morse");
  const auto flip = fx.code("thue_morse_flip");
  const Configuration tm = expand_certified(tm_rule, "0", 9, 20);
  rep.check("Thue-Morse bit flip is MLD with itself as inverse", mld_check(tm, flip, flip).mld);
  const auto pt = complexity(tm, 16), pf = complexity(apply_code(tm, flip), 16);
  rep.check("bit flip preserves complexity", pt == pf);
  clock.lap("witness");
}

void repetitivity_suite(RunReport& rep, Fixtures& fx) {
  Stopwatch clock(rep);
  const auto periodic = expand_certified(fx.rule("period_ab"), "a", 8, 32);
  const auto Rp = repetitivity(periodic, 30);
  bool all_one = !Rp.certified_radii().empty();
  for (int r : Rp.certified_radii()) all_one = all_one && *Rp.certified_value(r) == 1;
  rep.check("(ab)^inf has R(r) = 1 at every certified r", all_one,
            std::to_string(Rp.certified_radii().size()) + " certified radii");
  rep.results["periodic"] = series_json(Rp);
  clock.lap("periodic");

  const Configuration fib = expand_certified(fx.rule("fibonacci"), "a", 16, 40);
  const auto R = repetitivity(fib, 30);
  bool bounded = true;
  std::string worst;
  for (int r = 2; r <= 25; ++r) {
    const auto v = R.certified_value(r);
    const double ratio = v ? double(*v) / r : -1;
    if (!v || ratio < 0.5 || ratio > 6) {
      bounded = false;
      worst = "r=" + std::to_string(r) + (v ? " ratio " + num(ratio) : " uncertified");
      break;
    }
  }
  rep.check("Fibonacci R(r)/r in [0.5, 6] for r in [2,25]", bounded, worst);
  const auto lr = linear_repetitivity_check(R);
  rep.check("Fibonacci linearly repetitive trend", lr.consistent,
            "lambda_hat=" + num(lr.lambda_hat) + " slope=" + num(lr.slope));
  rep.results["fibonacci"] = series_json(R);
  rep.results["lambda_hat"] = lr.lambda_hat;
  clock.lap("fibonacci");

  const Configuration y = apply_code(fib, fx.code("fibonacci_2gram"));
  const auto Ry = repetitivity(y, 30);
  const auto w = repetitivity_equivalence(Ry, R, 2, 25, WitnessForm::Multiplicative);
  rep.results["recode vs fibonacci"] = witness(w);
  rep.check("repetitivity witness recode vs fibonacci on [2,25]", w.pass,
            "C1=" + num(w.C1) + " C2=" + num(w.C2) + " m=" + num(w.m) + " M=" + num(w.M));
  clock.lap("recode");
}

std::vector<Vec2> perturbed_grid(std::mt19937_64& rng, double side, double spacing,
                                 double perturbation, double deletion) {
  std::uniform_real_distribution<double> unit(0, 1);
  std::vector<Vec2> pts;
  const Vec2 offset{unit(rng) * spacing, unit(rng) * spacing};
  for (double y = offset.y - spacing; y <= side + spacing; y += spacing)
    for (double x = offset.x - spacing; x <= side + spacing; x += spacing) {
      const Vec2 p{x + (2 * unit(rng) - 1) * perturbation, y + (2 * unit(rng) - 1) * perturbation};
      if (unit(rng) < deletion) continue;
      if (p.x >= 0 && p.x <= side && p.y >= 0 && p.y <= side) pts.push_back(p);
    }
  return pts;
}

void geometry_suite(RunReport& rep, std::uint64_t seed) {
  Stopwatch clock(rep);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0, 1);
  const Window box{0, 0, 50, 50};
  RadiiOptions coarse;
  coarse.pitch_fraction = 0.5;

  int trials = 0, step_ok = 0, gain_ok = 0, path_ok = 0;
  double worst_step = 0;
  for (int t = 0; t < 1000; ++t) {
    const double s = 3 + 2 * unit(rng);
    auto pts = perturbed_grid(rng, 50, s, 0.15 * s * unit(rng), 0.1 * unit(rng));
    const DelaunayData D = delaunay_radii(std::move(pts), box, 2, coarse);
    const double R = D.covering_bound;
    Vec2 x, y;
    for (int attempt = 0; attempt < 100; ++attempt) {
      x = D.points[rng() % D.points.size()];
      y = D.points[rng() % D.points.size()];
      if (distance(x, y) >= 2 * R) break;
    }
    if (distance(x, y) < 2 * R) continue;
    ++trials;
    const Vec2 xp = jump_step(D, x, y);
    worst_step = std::max(worst_step, distance(xp, x) / R);
    step_ok += distance(xp, x) <= 3 * R + 1e-9;
    gain_ok += distance(xp, y) <= distance(x, y) - R + 1e-9;
    const ReturnPath path = jump_path(D, x, y);
    bool ok = double(path.steps()) <= std::ceil(distance(x, y) / R);
    for (std::size_t i = 0; i < path.steps(); ++i) ok = ok && path.step(i).norm() <= 3 * R + 1e-9;
    path_ok += ok;
  }
  clock.lap("jump");
  rep.check("1000 jump trials ran", trials == 1000, std::to_string(trials));
  rep.check("jump step at most 3R", step_ok == trials, "worst |x'-x|/R = " + num(worst_step));
  rep.check("distance to target drops by at least R", gain_ok == trials);
  rep.check("jump path length at most ceil(|x-y|/R)", path_ok == trials);
  rep.results["jump_trials"] = trials;
  rep.results["worst_step_over_R"] = worst_step;

  // Piecewise-affine extension on a perturbed grid.
  const auto pts = perturbed_grid(rng, 30, 3, 0.4, 0.05);
  const Triangulation T = delaunay_triangulate(pts, 2);
  std::vector<Vec2> id(pts), twice, wobble;
  for (const Vec2& p : pts) {
    twice.push_back(2 * p);
    wobble.push_back(p + Vec2{0.6 * unit(rng) - 0.3, 0.6 * unit(rng) - 0.3});
  }
  const PAMap gi = pa_extend(T, id), g2 = pa_extend(T, twice), gw = pa_extend(T, wobble);
  rep.check("identity map has Lipschitz constant 1", std::abs(gi.lipschitz - 1) <= 1e-9, num(gi.lipschitz));
  rep.check("scaling by 2 has Lipschitz constant 2", std::abs(g2.lipschitz - 2) <= 1e-9, num(g2.lipschitz));
  const auto sample = [&] {
    const auto& t = T.triangles[rng() % T.triangles.size()];
    double a = unit(rng), b = unit(rng);
    if (a + b > 1) {
      a = 1 - a;
      b = 1 - b;
    }
    const Vec2 p0 = pts[std::size_t(t[0])], p1 = pts[std::size_t(t[1])], p2 = pts[std::size_t(t[2])];
    return p0 + a * (p1 - p0) + b * (p2 - p0);
  };
  int lip_ok = 0;
  double worst_ratio = 0;
  for (int i = 0; i < 1000; ++i) {
    const Vec2 p = sample(), q = sample();
    const auto gp = gw.evaluate(p), gq = gw.evaluate(q);
    if (!gp || !gq) continue;
    const double lhs = distance(*gp, *gq), rhs = gw.lipschitz * distance(p, q);
    if (distance(p, q) > 0) worst_ratio = std::max(worst_ratio, lhs / distance(p, q));
    lip_ok += lhs <= rhs * (1 + 1e-9) + 1e-9;
  }
  rep.check("two-point Lipschitz inequality on 1000 pairs", lip_ok == 1000,
            "L=" + num(gw.lipschitz) + " worst ratio " + num(worst_ratio));

  // Growth envelope of x -> s Rot(theta) x + c.
  const double s = 1.5, theta = 0.7;
  const Vec2 c{2.0, -1.25};
  const Mat2 A{s * std::cos(theta), -s * std::sin(theta), s * std::sin(theta), s * std::cos(theta)};
  std::vector<std::pair<Vec2, Vec2>> samples;
  const Vec2 aligned = A.inverse() * (c * (1 / c.norm())) * s;  // unit vector mapped onto c
  for (int i = 0; i <= 40; ++i) {
    const double radius = 2.5 * i;
    samples.push_back({aligned * radius, A * (aligned * radius) + c});
    for (int k = 0; k < 8; ++k) {
      const double phi = k * std::numbers::pi / 4;
      const Vec2 x{radius * std::cos(phi), radius * std::sin(phi)};
      samples.push_back({x, A * x + c});
    }
  }
  const GrowthEnvelope env = growth_envelope(samples);
  rep.check("envelope slope within one grid step", std::abs(env.M - s) <= 1.0 / 64, num(env.M));
  rep.check("envelope constant within 1e-6", std::abs(env.C - c.norm()) <= 1e-6, num(env.C));
  rep.results["envelope"] = {{"M", env.M}, {"C", env.C}};
  clock.lap("extension");
}

void deformation_suite(RunReport& rep, Fixtures& fx, std::uint64_t seed) {
  Stopwatch clock(rep);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> small(-0.1, 0.1), big(-1, 1);
  const Configuration tm2 = expand(fx.rule("thue_morse_2d"), "0", 5);

  VertexPotential pot;
  pot.radius = 1;
  const Box inner = tm2.box().shrunk(1, 2);
  for (int y = inner.y0; y < inner.y1(); ++y)
    for (int x = inner.x0; x < inner.x1(); ++x) {
      const std::string key = patch_key(tm2, {x, y}, 1);
      if (!pot.table.count(key)) pot.table[key] = {small(rng), small(rng)};
    }
  const EdgeCocycle cob = coboundary_from(pot);
  const auto v = verify_cocycle(tm2, cob, 200, seed);
  rep.check("coboundary circuits sum to exactly zero", v.pass && v.worst_residual == 0,
            std::to_string(v.circuits) + " circuits");

  std::map<std::pair<int, std::string>, Vec2> random_table;
  for (int axis = 0; axis < 2; ++axis)
    for (const std::string sym : {"0", "1"}) random_table[{axis, sym}] = {big(rng), big(rng)};
  const EdgeCocycle bad = EdgeCocycle::table(0, random_table);
  const auto vb = verify_cocycle(tm2, bad, 0, seed);
  rep.check("random edge table rejected on an elementary square",
            !vb.pass && vb.worst_residual > 0 && vb.worst_length == 4, "residual " + num(vb.worst_residual));
  bool refused = false;
  try {
    integrate(tm2, bad, {16, 16});
  } catch (const CocycleError&) {
    refused = true;
  }
  rep.check("integration refuses a non-cocycle", refused);
  clock.lap("cocycles");

  IntegrationOptions opts;
  opts.seed = seed;
  const DeformedPattern P = integrate(tm2, EdgeCocycle::identity() + cob, {16, 16}, opts);
  rep.check("spanning tree agrees with 100 random paths", P.path_checks == 100 && P.path_residual <= 1e-9,
            "residual " + num(P.path_residual));
  rep.check("small deformation stays non-degenerate", nondegeneracy_check(P).pass);
  const DelaunayData D = deformed_delaunay(P);
  rep.results["deformed"] = {{"min_distance", D.min_distance}, {"covering_bound", D.covering_bound}};
  rep.check("deformed vertices form a Delaunay set", D.min_distance > 0 && D.dense,
            "m=" + num(D.min_distance) + " R=" + num(D.covering_bound));

  const Configuration tm1 = expand(fx.rule("thue_morse"), "0", 8);
  const auto neg1 = nondegeneracy_check(integrate(tm1, EdgeCocycle::linear({-1, 0, 0, -1}), {100, 0}));
  rep.check("f(e) = -e fails on every cell (d = 1)", neg1.failing_cells == neg1.cells && neg1.cells > 0,
            std::to_string(neg1.failing_cells) + "/" + std::to_string(neg1.cells));
  const auto refl = nondegeneracy_check(integrate(tm2, EdgeCocycle::linear({-1, 0, 0, 1}), {16, 16}));
  rep.check("reflection fails on every cell (d = 2)", refl.failing_cells == refl.cells && refl.cells > 0,
            std::to_string(refl.failing_cells) + "/" + std::to_string(refl.cells));
  const auto rot = nondegeneracy_check(integrate(tm2, EdgeCocycle::linear({-1, 0, 0, -1}), {16, 16}));
  rep.check("f(e) = -e in d = 2 is a rotation and keeps orientation", rot.pass);
  clock.lap("integration");
}

}  // namespace

RunReport run_suite(const std::string& suite, const std::string& fixture_dir, std::uint64_t seed) {
  RunReport rep;
  rep.suite = suite;
  rep.seed = seed;
  Fixtures fx(fixture_dir, rep);
  if (suite == "transversal")
    transversal(rep, fx);
  else if (suite == "mld")
    mld(rep, fx);
  else if (suite == "repetitivity")
    repetitivity_suite(rep, fx);
  else if (suite == "geometry")
    geometry_suite(rep, seed);
  else if (suite == "deformation")
    deformation_suite(rep, fx, seed);
  else
    throw UnknownSuiteError("unknown suite '" + suite + "'");
  return rep;
}

std::string format_report_json(const RunReport& r, bool with_timings) {
  ojson j;
  j["suite"] = r.suite;
  j["version"] = APLAB_VERSION;
  j["seed"] = r.seed;
  ojson inputs = ojson::array();
  for (const auto& in : r.inputs) inputs.push_back({{"name", in.name}, {"sha256", in.sha256}});
  j["inputs"] = inputs;
  ojson asserts = ojson::array();
  for (const auto& a : r.assertions)
    asserts.push_back({{"name", a.name}, {"pass", a.pass}, {"detail", a.detail}});
  j["assertions"] = asserts;
  j["pass"] = r.pass();
  j["results"] = r.results;
  if (with_timings) {
    ojson t = ojson::object();
    for (const auto& [stage, ms] : r.timings) t[stage] = ms;
    j["timings_ms"] = t;
  }
  return j.dump(2) + "\n";
}

}  // namespace aplab

// aperiodic-lab: generate substitution windows, analyse them, compare series
// and run the bundled certification suites.
#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "aplab/certification.hpp"
#include "aplab/counting.hpp"
#include "aplab/deformation.hpp"
#include "aplab/geometry.hpp"
#include "aplab/io.hpp"
#include "aplab/recurrence.hpp"

using namespace aplab;

namespace {

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kData = 3, kFixtures = 4, kInternal = 5 };

struct UsageError : Error {
  using Error::Error;
};

// Domain errors are data errors; a bare Error or anything else is internal.
int classify(const std::exception& e) {
  if (dynamic_cast<const UsageError*>(&e)) return kUsage;
  if (dynamic_cast<const FixtureMissingError*>(&e)) return kFixtures;
  if (dynamic_cast<const UnknownSuiteError*>(&e)) return kUsage;
  if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const PreconditionError*>(&e) ||
      dynamic_cast<const CapacityError*>(&e) || dynamic_cast<const InsufficientDataError*>(&e) ||
      dynamic_cast<const RangeError*>(&e) || dynamic_cast<const UnsupportedDimensionError*>(&e) ||
      dynamic_cast<const IncompleteTableError*>(&e) ||
      dynamic_cast<const NotRelativelyDenseError*>(&e) ||
      dynamic_cast<const InsufficientWindowError*>(&e) ||
      dynamic_cast<const DegenerateSimplexError*>(&e) || dynamic_cast<const CocycleError*>(&e) ||
      dynamic_cast<const FileError*>(&e))
    return kData;
  return kInternal;
}

const char* error_kind(const std::exception& e) {
  if (dynamic_cast<const InsufficientDataError*>(&e)) return "insufficient-data";
  if (dynamic_cast<const RangeError*>(&e)) return "range";
  if (dynamic_cast<const UnsupportedDimensionError*>(&e)) return "unsupported-dimension";
  if (dynamic_cast<const InsufficientWindowError*>(&e)) return "insufficient-window";
  if (dynamic_cast<const IncompleteTableError*>(&e)) return "incomplete-table";
  if (dynamic_cast<const ParseError*>(&e)) return "parse";
  if (dynamic_cast<const PreconditionError*>(&e)) return "precondition";
  return classify(e) == kInternal ? "internal" : "data";
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty())
    std::cout << text;
  else
    write_file(out, text);
}

std::string one_line(std::string s) {
  for (char& c : s)
    if (c == '\n' || c == ',') c = ';';
  return s;
}

struct Input {
  std::string name;
  std::string text;
  std::string digest;
};

Input load(const std::string& path) {
  Input in{std::filesystem::path(path).filename().string(), read_file(path), {}};
  in.digest = sha256_hex(in.text);
  return in;
}

bool looks_like_series(const std::string& text) {
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    return line.rfind("r,", 0) == 0;
  }
  return false;
}

// --- generate ---------------------------------------------------------------

struct GenerateArgs {
  std::string rule, seed, out;
  int levels = 0;
  int rmax = 32;
  bool certify = true;
};

int cmd_generate(const GenerateArgs& a) {
  const SubstitutionRule rule = parse_rule(load(a.rule).text);
  if (!rule.alphabet()->contains(a.seed))
    throw UsageError("seed symbol '" + a.seed + "' is not in the alphabet of " + rule.name());
  if (a.levels < 0) throw UsageError("--levels must be non-negative");
  const Configuration c = a.certify ? expand_certified(rule, a.seed, a.levels, a.rmax)
                                    : expand(rule, a.seed, a.levels);
  emit(a.out, format_configuration(c));
  std::cerr << "generated " << c.width() << "x" << c.height() << " window, certified radius "
            << c.certified_radius() << "\n";
  return kOk;
}

// --- analyze ----------------------------------------------------------------

struct AnalyzeArgs {
  std::string input, pointing, code, out;
  int complexity = 0, repetitivity = 0;
  bool entropy = false, exponent = false, mh = false, json = false;
  std::vector<int> exponent_range;
};

struct Section {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::optional<std::string> error_kind, error;
  int code = kOk;
};

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(12);
  s << v;
  return s.str();
}

template <class F>
Section run_section(const std::string& name, F&& body) {
  Section s;
  s.name = name;
  try {
    body(s);
  } catch (const std::exception& e) {
    s.header.clear();
    s.rows.clear();
    s.error_kind = error_kind(e);
    s.error = e.what();
    s.code = classify(e);
  }
  return s;
}

std::vector<std::vector<std::string>> series_rows(const SampledSeries& s) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& [r, e] : s.entries)
    rows.push_back({std::to_string(r), std::to_string(e.value), e.certified ? "1" : "0"});
  return rows;
}

int cmd_analyze(const AnalyzeArgs& a) {
  const Input in = load(a.input);
  std::vector<Input> inputs{in};
  const bool series_input = looks_like_series(in.text);
  std::optional<Configuration> config;
  std::optional<ComplexitySeries> p;
  int dimension = 1;
  if (series_input) {
    if (a.complexity || a.repetitivity || !a.pointing.empty() || !a.code.empty())
      throw UsageError("a series input supports only --entropy, --exponent and --mh");
    SeriesDocument doc = parse_series_csv(in.text);
    if (doc.repetitivity) throw UsageError("analyze expects a complexity series");
    p = ComplexitySeries{doc.series};
    dimension = doc.series.dimension;
  } else {
    config = parse_configuration(in.text);
    if (!a.code.empty()) {
      inputs.push_back(load(a.code));
      config = apply_code(*config, parse_code(inputs.back().text));
    }
    dimension = config->dimension();
  }
  std::optional<PointingRule> pointing;
  if (!a.pointing.empty()) {
    inputs.push_back(load(a.pointing));
    pointing = parse_pointing(inputs.back().text);
  }
  if (!a.complexity && !a.repetitivity && !a.entropy && !a.exponent && !a.mh)
    throw UsageError("nothing to do: pass --complexity, --repetitivity, --entropy, --exponent or --mh");

  std::vector<Section> sections;
  // Entropy, exponent and the Morse-Hedlund test read the complexity series.
  const bool need_p = a.complexity || a.entropy || a.exponent || a.mh;
  if (config && need_p) {
    const int rmax = a.complexity ? a.complexity : std::min(30, config->certified_radius());
    Section s = run_section("complexity", [&](Section& sec) {
      p = complexity(*config, rmax, pointing);
      sec.header = {"r", "count", "certified"};
      sec.rows = series_rows(*p);
    });
    if (a.complexity || s.error) sections.push_back(s);
  }
  if (a.repetitivity)
    sections.push_back(run_section("repetitivity", [&](Section& sec) {
      if (!config) throw UsageError("repetitivity needs a configuration");
      const auto R = repetitivity(*config, a.repetitivity, pointing);
      sec.header = {"r", "value", "certified"};
      sec.rows = series_rows(R);
      const auto lr = linear_repetitivity_check(R);
      sec.rows.push_back({"# lambda_hat", fmt(lr.lambda_hat), lr.consistent ? "lr-consistent" : "lr-violated"});
    }));
  const auto need = [&]() -> const ComplexitySeries& {
    if (!p) throw InsufficientDataError("complexity series unavailable");
    return *p;
  };
  if (a.mh)
    sections.push_back(run_section("mh", [&](Section& sec) {
      const auto v = morse_hedlund_check(need());
      sec.header = {"result", "n"};
      if (v.witness)
        sec.rows.push_back({"witness", std::to_string(*v.witness)});
      else
        sec.rows.push_back({"no-witness", std::to_string(v.checked_up_to)});
    }));
  if (a.entropy)
    sections.push_back(run_section("entropy", [&](Section& sec) {
      const auto h = entropy_estimate(need(), dimension);
      sec.header = {"r", "value"};
      for (const auto& [r, v] : h.trend) sec.rows.push_back({std::to_string(r), fmt(v)});
      sec.rows.push_back({"# estimate", fmt(h.value)});
      sec.rows.push_back({"# trend", h.decreasing() ? "decreasing" : "not-decreasing"});
    }));
  if (a.exponent)
    sections.push_back(run_section("exponent", [&](Section& sec) {
      const auto& series = need();
      const auto radii = series.certified_radii();
      if (radii.empty()) throw InsufficientDataError("no certified entries");
      int lo = std::max(1, radii.back() / 4), hi = radii.back();
      if (a.exponent_range.size() == 2) {
        lo = a.exponent_range[0];
        hi = a.exponent_range[1];
      }
      const double alpha = exponent_estimate(series, lo, hi);
      sec.header = {"alpha", "rmin", "rmax"};
      sec.rows.push_back({fmt(alpha), std::to_string(lo), std::to_string(hi)});
    }));

  std::ostringstream out;
  if (a.json) {
    nlohmann::ordered_json j;
    j["version"] = APLAB_VERSION;
    nlohmann::ordered_json ins = nlohmann::ordered_json::array();
    for (const auto& i : inputs) ins.push_back({{"name", i.name}, {"sha256", i.digest}});
    j["inputs"] = ins;
    nlohmann::ordered_json secs = nlohmann::ordered_json::object();
    for (const auto& s : sections) {
      nlohmann::ordered_json o;
      if (s.error) {
        o["error"] = {{"kind", *s.error_kind}, {"message", *s.error}};
      } else {
        o["columns"] = s.header;
        o["rows"] = s.rows;
      }
      secs[s.name] = o;
    }
    j["sections"] = secs;
    out << j.dump(2) << "\n";
  } else {
    out << "# aperiodic-lab " << APLAB_VERSION << "\n";
    for (const auto& i : inputs) out << "# input " << i.name << " sha256 " << i.digest << "\n";
    for (const auto& s : sections) {
      out << "# section " << s.name << "\n";
      if (s.error) {
        out << "error," << *s.error_kind << "," << one_line(*s.error) << "\n";
        continue;
      }
      for (std::size_t i = 0; i < s.header.size(); ++i) out << (i ? "," : "") << s.header[i];
      out << "\n";
      for (const auto& row : s.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << "\n";
      }
    }
  }
  emit(a.out, out.str());
  int code = kOk;
  for (const auto& s : sections)
    if (s.code != kOk) {
      std::cerr << "section " << s.name << " failed: " << *s.error << "\n";
      if (code == kOk) code = s.code;
    }
  return code;
}

// --- compare ----------------------------------------------------------------

struct CompareArgs {
  std::string first, second, form = "multiplicative", out;
  std::vector<int> range;
};

int cmd_compare(const CompareArgs& a) {
  const Input i1 = load(a.first), i2 = load(a.second);
  const SeriesDocument s1 = parse_series_csv(i1.text), s2 = parse_series_csv(i2.text);
  if (s1.repetitivity != s2.repetitivity)
    throw UsageError("cannot compare a complexity series with a repetitivity series");
  WitnessForm form;
  try {
    form = witness_form_from_string(a.form);
  } catch (const Error&) {
    throw UsageError("unknown --form '" + a.form + "'");
  }
  int lo = 0, hi = 0;
  if (a.range.size() == 2) {
    lo = a.range[0];
    hi = a.range[1];
  } else {
    const auto r1 = s1.series.certified_radii(), r2 = s2.series.certified_radii();
    if (r1.empty() || r2.empty()) throw RangeError("series without certified entries");
    lo = std::max(r1.front(), r2.front());
    hi = std::min(r1.back(), r2.back());
  }
  if (lo > hi || lo < 0) throw UsageError("--range needs 0 <= a <= b");
  EquivalenceWitness w;
  if (s1.repetitivity) {
    if (form == WitnessForm::Additive) throw UsageError("repetitivity uses multiplicative or offset form");
    w = repetitivity_equivalence(RepetitivitySeries{s1.series}, RepetitivitySeries{s2.series}, lo, hi, form);
  } else {
    if (form == WitnessForm::Offset) throw UsageError("complexity uses multiplicative or additive form");
    w = check_equivalence(ComplexitySeries{s1.series}, ComplexitySeries{s2.series}, lo, hi, form);
  }
  nlohmann::ordered_json j;
  j["version"] = APLAB_VERSION;
  j["inputs"] = {{{"name", i1.name}, {"sha256", i1.digest}}, {{"name", i2.name}, {"sha256", i2.digest}}};
  j["kind"] = s1.repetitivity ? "repetitivity" : "complexity";
  j["witness"] = nlohmann::ordered_json::parse(format_witness_json(w));
  emit(a.out, j.dump(2) + "\n");
  return kOk;
}

// --- certify ----------------------------------------------------------------

struct CertifyArgs {
  std::string suite, fixtures = APLAB_FIXTURE_DIR, out;
  std::uint64_t seed = 0;
  bool timings = false;
};

int cmd_certify(const CertifyArgs& a) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), a.suite) == names.end())
    throw UsageError("unknown suite '" + a.suite + "'");
  if (!std::filesystem::is_directory(a.fixtures))
    throw FixtureMissingError("fixture directory missing: " + a.fixtures);
  const RunReport rep = run_suite(a.suite, a.fixtures, a.seed);
  emit(a.out, format_report_json(rep, a.timings));
  for (const auto& as : rep.assertions)
    std::cerr << (as.pass ? "PASS " : "FAIL ") << as.name
              << (as.detail.empty() ? "" : " (" + as.detail + ")") << "\n";
  return rep.pass() ? kOk : kFailed;
}

// --- triangulate / deform ---------------------------------------------------

int cmd_triangulate(const std::string& points, int dimension, const std::string& out) {
  const auto pts = parse_points_csv(load(points).text, dimension);
  emit(out, format_triangulation_json(delaunay_triangulate(pts, dimension)));
  return kOk;
}

int cmd_deform(const std::string& config_path, const std::string& cocycle, std::vector<int> base,
               const std::string& out) {
  const Configuration c = parse_configuration(load(config_path).text);
  const EdgeCocycle f = parse_cocycle(load(cocycle).text);
  const Box dom = cocycle_domain(c, f);
  Cell b{dom.x0 + dom.width / 2, dom.y0 + dom.height / 2};
  if (base.size() == 2) b = {base[0], base[1]};
  const DeformedPattern P = integrate(c, f, b);
  const auto nd = nondegeneracy_check(P);
  std::cerr << "non-degenerate: " << (nd.pass ? "yes" : "no") << " (" << nd.failing_cells << "/"
            << nd.cells << " cells fail)\n";
  emit(out, format_points_csv(P.image.data(), c.dimension()));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"aperiodic-lab: complexity, repetitivity and deformation experiments on substitution tilings"};
  app.set_version_flag("--version", std::string(APLAB_VERSION));
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "expand a substitution rule into a configuration file");
  g->add_option("rule", gen.rule, "rule JSON")->required();
  g->add_option("--seed", gen.seed, "seed symbol")->required();
  g->add_option("--levels", gen.levels, "substitution levels")->required();
  g->add_option("--out,-o", gen.out, "output file (default stdout)");
  g->add_option("--rmax", gen.rmax, "largest radius to certify")->check(CLI::PositiveNumber);
  g->add_flag("!--no-certify", gen.certify, "skip language certification");

  AnalyzeArgs an;
  auto* z = app.add_subcommand("analyze", "complexity / repetitivity report for a configuration or series");
  z->add_option("input", an.input, "configuration file or complexity series CSV")->required();
  z->add_option("--complexity", an.complexity, "p(r) for r = 1..rmax")->check(CLI::PositiveNumber);
  z->add_option("--repetitivity", an.repetitivity, "R(r) for r = 1..rmax")->check(CLI::PositiveNumber);
  z->add_option("--pointing", an.pointing, "pointing rule JSON");
  z->add_option("--code", an.code, "block code JSON applied before the analysis");
  z->add_flag("--entropy", an.entropy, "patch-counting entropy estimate");
  z->add_flag("--exponent", an.exponent, "growth exponent of p(r)");
  z->add_option("--exponent-range", an.exponent_range, "radius range for --exponent")->expected(2);
  z->add_flag("--mh", an.mh, "Morse-Hedlund periodicity test");
  z->add_flag("--json", an.json, "JSON instead of CSV");
  z->add_option("--out,-o", an.out, "output file (default stdout)");

  CompareArgs cmp;
  auto* c = app.add_subcommand("compare", "search for an equivalence witness between two series");
  c->add_option("series1", cmp.first)->required();
  c->add_option("series2", cmp.second)->required();
  c->add_option("--form", cmp.form, "multiplicative | additive | offset");
  c->add_option("--range", cmp.range, "radius range a b")->expected(2);
  c->add_option("--out,-o", cmp.out, "output file (default stdout)");

  CertifyArgs cert;
  auto* k = app.add_subcommand("certify", "run a bundled certification suite");
  k->add_option("suite", cert.suite, "transversal | mld | repetitivity | geometry | deformation")->required();
  k->add_option("--seed", cert.seed, "random seed");
  k->add_option("--fixtures", cert.fixtures, "fixture directory");
  k->add_option("--out,-o", cert.out, "report file (default stdout)");
  k->add_flag("--timings", cert.timings, "include wall-clock timings in the report");

  std::string points, tri_out;
  int tri_dim = 2;
  auto* t = app.add_subcommand("triangulate", "Delaunay triangulation of a point CSV");
  t->add_option("points", points)->required();
  t->add_option("--dimension", tri_dim)->check(CLI::Range(1, 2));
  t->add_option("--out,-o", tri_out);

  std::string def_config, def_cocycle, def_out;
  std::vector<int> def_base;
  auto* d = app.add_subcommand("deform", "integrate an edge cocycle and export the vertex images");
  d->add_option("config", def_config)->required();
  d->add_option("--cocycle", def_cocycle, "cocycle JSON")->required();
  d->add_option("--base", def_base, "base vertex (local x y)")->expected(2);
  d->add_option("--out,-o", def_out, "points CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*g) return cmd_generate(gen);
    if (*z) return cmd_analyze(an);
    if (*c) return cmd_compare(cmp);
    if (*k) return cmd_certify(cert);
    if (*t) return cmd_triangulate(points, tri_dim, tri_out);
    if (*d) return cmd_deform(def_config, def_cocycle, def_base, def_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return classify(e);
  }
  return kUsage;
}

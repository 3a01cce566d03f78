#include "aplab/io.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace aplab {

using nlohmann::json;

namespace {

json parse_json(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

// Reads a field with a type check, turning nlohmann errors into ParseError.
template <class T>
T field(const json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key))
    throw ParseError(std::string(what) + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ParseError(std::string(what) + ": field '" + key + "' has the wrong type");
  }
}

template <class T>
T field_or(const json& j, const char* key, T fallback, const char* what) {
  return j.is_object() && j.contains(key) ? field<T>(j, key, what) : fallback;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  return s.substr(a, s.find_last_not_of(" \t\r\n") - a + 1);
}

int to_int(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const long v = std::stol(s, &used);
    if (used != s.size() || v < INT32_MIN || v > INT32_MAX) throw std::invalid_argument(s);
    return int(v);
  } catch (const std::exception&) {
    throw ParseError(std::string(what) + ": '" + s + "' is not an integer");
  }
}

double to_double(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(std::string(what) + ": '" + s + "' is not a number");
  }
}

// Symbols of a one-dimensional row: a string of single characters or an array.
std::vector<std::string> row_symbols(const json& j, const Alphabet& alphabet, const char* what) {
  std::vector<std::string> out;
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (!alphabet.single_char())
      throw ParseError(std::string(what) + ": string images need single-character symbols");
    for (char c : s) out.emplace_back(1, c);
  } else if (j.is_array()) {
    for (const auto& e : j) {
      if (!e.is_string()) throw ParseError(std::string(what) + ": symbols must be strings");
      out.push_back(e.get<std::string>());
    }
  } else {
    throw ParseError(std::string(what) + ": image must be a string or an array");
  }
  return out;
}

SymbolId symbol(const Alphabet& alphabet, const std::string& name, const char* what) {
  if (!alphabet.contains(name))
    throw ParseError(std::string(what) + ": unknown symbol '" + name + "'");
  return alphabet.id(name);
}

std::string join_symbols(const Alphabet& a, const std::vector<SymbolId>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i && !a.single_char()) out += ' ';
    out += a.name(ids[i]);
  }
  return out;
}

Vec2 vec_from(const json& j, const char* what) {
  if (!j.is_array() || j.size() < 1 || j.size() > 2)
    throw ParseError(std::string(what) + ": vectors are [x] or [x, y]");
  try {
    return {j[0].get<double>(), j.size() == 2 ? j[1].get<double>() : 0.0};
  } catch (const json::exception&) {
    throw ParseError(std::string(what) + ": vector entries must be numbers");
  }
}

std::string fmt_double(double v) {
  std::ostringstream out;
  out << std::setprecision(17) << v;
  return out.str();
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FileError("cannot write " + path);
  out << contents;
  if (!out) throw FileError("write failed for " + path);
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr))
    throw Error("SHA-256 digest failed");
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return out.str();
}

SubstitutionRule parse_rule(const std::string& text) {
  constexpr const char* what = "substitution rule";
  const json j = parse_json(text, what);
  const int d = field<int>(j, "dimension", what);
  if (d != 1 && d != 2) throw UnsupportedDimensionError("dimension must be 1 or 2");
  auto names = field<std::vector<std::string>>(j, "alphabet", what);
  if (names.empty()) throw ParseError("substitution rule: empty alphabet");
  auto alphabet = std::make_shared<const Alphabet>(names);
  const json images = j.contains("images") ? j["images"] : json();
  if (!images.is_object()) throw ParseError("substitution rule: 'images' must be an object");

  std::vector<SymbolBlock> blocks;
  for (const auto& name : names) {
    if (!images.contains(name)) throw ParseError("substitution rule: no image for '" + name + "'");
    const json& img = images[name];
    SymbolBlock b;
    if (d == 1) {
      for (const auto& s : row_symbols(img, *alphabet, what)) b.cells.push_back(symbol(*alphabet, s, what));
      b.width = int(b.cells.size());
      b.height = 1;
    } else {
      if (!img.is_array() || img.empty())
        throw ParseError("substitution rule: 2-D image of '" + name + "' must be a list of rows");
      for (const auto& row : img) {
        const auto syms = row_symbols(row, *alphabet, what);
        if (b.height == 0) b.width = int(syms.size());
        if (int(syms.size()) != b.width || syms.empty())
          throw ParseError("substitution rule: ragged 2-D image for '" + name + "'");
        for (const auto& s : syms) b.cells.push_back(symbol(*alphabet, s, what));
        ++b.height;
      }
    }
    if (b.cells.empty()) throw ParseError("substitution rule: empty image for '" + name + "'");
    blocks.push_back(std::move(b));
  }
  if (d == 2)
    for (const auto& b : blocks)
      if (b.width != blocks[0].width || b.height != blocks[0].height)
        throw ParseError("substitution rule: 2-D images must share one block shape");
  return SubstitutionRule(field_or<std::string>(j, "name", "rule", what), d, alphabet,
                          std::move(blocks));
}

std::string format_rule(const SubstitutionRule& rule) {
  const Alphabet& a = *rule.alphabet();
  json j;
  j["name"] = rule.name();
  j["dimension"] = rule.dimension();
  j["alphabet"] = a.names();
  json images = json::object();
  for (std::size_t s = 0; s < a.size(); ++s) {
    const SymbolBlock& b = rule.image(SymbolId(s));
    json rows = json::array();
    for (int y = 0; y < b.height; ++y) {
      json row = json::array();
      for (int x = 0; x < b.width; ++x) row.push_back(a.name(b.at(x, y)));
      rows.push_back(row);
    }
    images[a.name(SymbolId(s))] = rule.dimension() == 1 ? rows[0] : rows;
  }
  j["images"] = images;
  return j.dump(2) + "\n";
}

Configuration parse_configuration(const std::string& text) {
  constexpr const char* what = "configuration";
  std::istringstream in(text);
  int d = 0, width = -1, height = -1, certified = 0;
  std::vector<std::string> names;
  Cell origin;
  Provenance prov;
  std::string line;
  bool cells = false;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto t = split_ws(line);
    const std::string& key = t[0];
    const auto need = [&](std::size_t n) {
      if (t.size() != n + 1) throw ParseError("configuration: bad '" + key + "' line");
    };
    if (key == "cells") {
      cells = true;
      break;
    } else if (key == "dimension") {
      need(1);
      d = to_int(t[1], what);
    } else if (key == "size") {
      need(2);
      width = to_int(t[1], what);
      height = to_int(t[2], what);
    } else if (key == "alphabet") {
      names.assign(t.begin() + 1, t.end());
    } else if (key == "origin") {
      need(2);
      origin = {to_int(t[1], what), to_int(t[2], what)};
    } else if (key == "rule") {
      need(1);
      prov.rule_id = t[1];
    } else if (key == "level") {
      need(1);
      prov.level = to_int(t[1], what);
    } else if (key == "seed") {
      need(1);
      prov.seed = t[1];
    } else if (key == "certified_radius") {
      need(1);
      certified = to_int(t[1], what);
    } else if (key == "inflation") {
      need(2);
      prov.inflation = {to_double(t[1], what), to_double(t[2], what)};
    } else if (key == "derivations") {
      prov.derivations.assign(t.begin() + 1, t.end());
    } else {
      throw ParseError("configuration: unknown header '" + key + "'");
    }
  }
  if (!cells) throw ParseError("configuration: missing 'cells' section");
  if (d != 1 && d != 2) throw UnsupportedDimensionError("configuration dimension must be 1 or 2");
  if (width <= 0 || height <= 0 || (d == 1 && height != 1))
    throw ParseError("configuration: bad size");
  if (names.empty()) throw ParseError("configuration: missing alphabet");
  if (certified < 0) throw ParseError("configuration: negative certified radius");
  auto alphabet = std::make_shared<const Alphabet>(names);

  Grid<SymbolId> grid(width, height);
  int y = 0;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    if (y >= height) throw ParseError("configuration: more rows than declared");
    auto syms = split_ws(line);
    if (int(syms.size()) != width && syms.size() == 1 && alphabet->single_char()) {
      const std::string row = syms[0];
      syms.clear();
      for (char c : row) syms.emplace_back(1, c);
    }
    if (int(syms.size()) != width)
      throw ParseError("configuration: row " + std::to_string(y) + " has " +
                       std::to_string(syms.size()) + " symbols, expected " + std::to_string(width));
    for (int x = 0; x < width; ++x) grid(x, y) = symbol(*alphabet, syms[std::size_t(x)], what);
    ++y;
  }
  if (y != height) throw ParseError("configuration: fewer rows than declared");
  return Configuration(d, alphabet, std::move(grid), origin, prov, certified);
}

std::string format_configuration(const Configuration& c) {
  const Provenance& p = c.provenance();
  std::ostringstream out;
  out << "# aperiodic-lab configuration\n";
  out << "dimension " << c.dimension() << "\n";
  out << "size " << c.width() << " " << c.height() << "\n";
  out << "alphabet";
  for (const auto& n : c.alphabet().names()) out << " " << n;
  out << "\n";
  out << "origin " << c.origin().x << " " << c.origin().y << "\n";
  if (!p.rule_id.empty()) out << "rule " << p.rule_id << "\n";
  out << "level " << p.level << "\n";
  if (!p.seed.empty()) out << "seed " << p.seed << "\n";
  out << "certified_radius " << c.certified_radius() << "\n";
  out << "inflation " << fmt_double(p.inflation[0]) << " " << fmt_double(p.inflation[1]) << "\n";
  if (!p.derivations.empty()) {
    out << "derivations";
    for (const auto& dname : p.derivations) out << " " << dname;
    out << "\n";
  }
  out << "cells\n";
  for (int y = 0; y < c.height(); ++y) {
    std::vector<SymbolId> row;
    for (int x = 0; x < c.width(); ++x) row.push_back(c.at(x, y));
    out << join_symbols(c.alphabet(), row) << "\n";
  }
  return out.str();
}

std::string format_series_csv(const SampledSeries& s, bool repetitivity) {
  std::ostringstream out;
  if (!s.source.empty()) out << "# source " << s.source << "\n";
  out << "# dimension " << s.dimension << "\n";
  out << "# pointing " << s.pointing << "\n";
  out << (repetitivity ? "r,value,certified\n" : "r,count,certified\n");
  for (const auto& [r, e] : s.entries) out << r << "," << e.value << "," << (e.certified ? 1 : 0) << "\n";
  return out.str();
}

SeriesDocument parse_series_csv(const std::string& text) {
  constexpr const char* what = "series CSV";
  SeriesDocument doc;
  std::istringstream in(text);
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto t = split_ws(line.substr(1));
      if (t.size() == 2 && t[0] == "dimension") doc.series.dimension = to_int(t[1], what);
      if (t.size() == 2 && t[0] == "pointing") doc.series.pointing = t[1];
      if (t.size() == 2 && t[0] == "source") doc.series.source = t[1];
      continue;
    }
    if (!header) {
      std::string h;
      for (char c : line)
        if (c != ' ') h += c;
      if (h == "r,count,certified")
        doc.repetitivity = false;
      else if (h == "r,value,certified")
        doc.repetitivity = true;
      else
        throw ParseError("series CSV: header must be r,count,certified or r,value,certified");
      header = true;
      continue;
    }
    std::vector<std::string> cols;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cols.push_back(trim(c));
    if (cols.size() != 3) throw ParseError("series CSV: expected 3 columns in '" + line + "'");
    const int r = to_int(cols[0], what);
    if (r < 0) throw ParseError("series CSV: negative radius");
    std::int64_t v = 0;
    try {
      std::size_t used = 0;
      v = std::stoll(cols[1], &used);
      if (used != cols[1].size()) throw std::invalid_argument(cols[1]);
    } catch (const std::exception&) {
      throw ParseError("series CSV: '" + cols[1] + "' is not an integer");
    }
    bool cert;
    if (cols[2] == "1" || cols[2] == "true")
      cert = true;
    else if (cols[2] == "0" || cols[2] == "false")
      cert = false;
    else
      throw ParseError("series CSV: certified must be 0/1 or true/false");
    if (doc.series.entries.count(r)) throw ParseError("series CSV: duplicate radius " + cols[0]);
    doc.series.set(r, v, cert);
  }
  if (!header) throw ParseError("series CSV: missing header");
  return doc;
}

BlockCode parse_code(const std::string& text) {
  constexpr const char* what = "block code";
  const json j = parse_json(text, what);
  BlockCode code;
  code.name = field_or<std::string>(j, "name", "code", what);
  code.dimension = field<int>(j, "dimension", what);
  if (code.dimension != 1 && code.dimension != 2)
    throw UnsupportedDimensionError("code dimension must be 1 or 2");
  code.radius = field<int>(j, "radius", what);
  if (code.radius < 0) throw ParseError("block code: negative radius");
  code.output_alphabet = std::make_shared<const Alphabet>(
      field<std::vector<std::string>>(j, "output_alphabet", what));
  for (const auto& [key, val] : field<std::map<std::string, std::string>>(j, "table", what))
    code.table[key] = symbol(*code.output_alphabet, val, what);
  return code;
}

std::string format_code(const BlockCode& code) {
  json j;
  j["name"] = code.name;
  j["dimension"] = code.dimension;
  j["radius"] = code.radius;
  j["output_alphabet"] = code.output_alphabet->names();
  json table = json::object();
  for (const auto& [k, v] : code.table) table[k] = code.output_alphabet->name(v);
  j["table"] = table;
  return j.dump(2) + "\n";
}

namespace {

PointingRule pointing_from(const json& j) {
  constexpr const char* what = "pointing rule";
  const std::string kind = field<std::string>(j, "kind", what);
  PointingRule rule = PointingRule::all();
  if (kind == "all") {
  } else if (kind == "symbols") {
    rule = PointingRule::symbols(field<std::vector<std::string>>(j, "symbols", what));
  } else if (kind == "table") {
    const int radius = field<int>(j, "radius", what);
    if (radius < 0) throw ParseError("pointing rule: negative radius");
    rule = PointingRule::table(radius, field<std::map<std::string, bool>>(j, "table", what));
  } else if (kind == "lattice") {
    const auto mod = field<std::vector<int>>(j, "modulus", what);
    const auto res = field_or<std::vector<int>>(j, "residue", {0, 0}, what);
    if (mod.empty() || mod.size() > 2 || res.size() != mod.size())
      throw ParseError("pointing rule: modulus and residue need 1 or 2 entries");
    if (mod[0] < 1 || (mod.size() == 2 && mod[1] < 1))
      throw ParseError("pointing rule: lattice modulus must be positive");
    rule = mod.size() == 1 ? PointingRule::lattice(mod[0], res[0])
                           : PointingRule::lattice(mod[0], res[0], mod[1], res[1]);
  } else if (kind == "union") {
    const json rules = j.contains("rules") ? j["rules"] : json();
    if (!rules.is_array() || rules.size() != 2)
      throw ParseError("pointing rule: union needs exactly two 'rules'");
    rule = union_pointing(pointing_from(rules[0]), pointing_from(rules[1]));
  } else {
    throw ParseError("pointing rule: unknown kind '" + kind + "'");
  }
  if (j.contains("name")) rule = rule.named(field<std::string>(j, "name", what));
  return rule;
}

json pointing_to(const PointingRule& rule) {
  json j;
  j["name"] = rule.name();
  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, PointingRule::All>) {
          j["kind"] = "all";
        } else if constexpr (std::is_same_v<K, PointingRule::Symbols>) {
          j["kind"] = "symbols";
          j["symbols"] = k.symbols;
        } else if constexpr (std::is_same_v<K, PointingRule::Table>) {
          j["kind"] = "table";
          j["radius"] = k.radius;
          j["table"] = k.table;
        } else if constexpr (std::is_same_v<K, PointingRule::Lattice>) {
          j["kind"] = "lattice";
          j["modulus"] = {k.mx, k.my};
          j["residue"] = {k.rx, k.ry};
        } else {
          j["kind"] = "union";
          j["rules"] = {pointing_to(*k.first), pointing_to(*k.second)};
        }
      },
      rule.kind());
  return j;
}

VertexPotential potential_from(const json& j) {
  constexpr const char* what = "vertex potential";
  VertexPotential s;
  s.radius = field<int>(j, "radius", what);
  if (s.radius < 0) throw ParseError("vertex potential: negative radius");
  const json table = j.contains("table") ? j["table"] : json();
  if (!table.is_object()) throw ParseError("vertex potential: 'table' must be an object");
  for (const auto& [key, v] : table.items()) s.table[key] = vec_from(v, what);
  return s;
}

}  // namespace

PointingRule parse_pointing(const std::string& text) {
  return pointing_from(parse_json(text, "pointing rule"));
}

std::string format_pointing(const PointingRule& rule) { return pointing_to(rule).dump(2) + "\n"; }

VertexPotential parse_potential(const std::string& text) {
  return potential_from(parse_json(text, "vertex potential"));
}

EdgeCocycle parse_cocycle(const std::string& text) {
  constexpr const char* what = "edge cocycle";
  const json j = parse_json(text, what);
  const std::string kind = field<std::string>(j, "kind", what);
  if (kind == "linear") {
    const auto m = field<std::vector<std::vector<double>>>(j, "matrix", what);
    if (m.size() != 2 || m[0].size() != 2 || m[1].size() != 2)
      throw ParseError("edge cocycle: matrix must be 2x2");
    return EdgeCocycle::linear({m[0][0], m[0][1], m[1][0], m[1][1]});
  }
  if (kind == "coboundary") {
    if (!j.contains("potential")) throw ParseError("edge cocycle: missing 'potential'");
    return coboundary_from(potential_from(j["potential"]));
  }
  if (kind != "table") throw ParseError("edge cocycle: unknown kind '" + kind + "'");
  const int radius = field<int>(j, "radius", what);
  if (radius < 0) throw ParseError("edge cocycle: negative radius");
  const json edges = j.contains("edges") ? j["edges"] : json();
  if (!edges.is_object()) throw ParseError("edge cocycle: 'edges' must be an object");
  std::map<std::pair<int, std::string>, Vec2> table;
  for (const auto& [axis_name, entries] : edges.items()) {
    int axis;
    if (axis_name == "x")
      axis = 0;
    else if (axis_name == "y")
      axis = 1;
    else
      throw ParseError("edge cocycle: axis must be 'x' or 'y'");
    if (!entries.is_object()) throw ParseError("edge cocycle: axis table must be an object");
    for (const auto& [key, v] : entries.items()) table[{axis, key}] = vec_from(v, what);
  }
  return EdgeCocycle::table(radius, std::move(table));
}

std::vector<Vec2> parse_points_csv(const std::string& text, int dimension) {
  constexpr const char* what = "points CSV";
  std::vector<Vec2> pts;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cols.push_back(trim(c));
    if (first && (cols[0] == "x")) {
      first = false;
      continue;
    }
    first = false;
    if (cols.empty() || cols.size() > 2 || (dimension == 2 && cols.size() != 2))
      throw ParseError("points CSV: bad line '" + line + "'");
    pts.push_back({to_double(cols[0], what), cols.size() == 2 ? to_double(cols[1], what) : 0.0});
  }
  return pts;
}

std::string format_points_csv(const std::vector<Vec2>& points, int dimension) {
  std::ostringstream out;
  out << (dimension == 1 ? "x\n" : "x,y\n");
  for (const Vec2& p : points) {
    out << fmt_double(p.x);
    if (dimension == 2) out << "," << fmt_double(p.y);
    out << "\n";
  }
  return out.str();
}

std::string format_triangulation_json(const Triangulation& tri) {
  json j;
  j["dimension"] = tri.dimension;
  json pts = json::array();
  for (const Vec2& p : tri.points) pts.push_back(tri.dimension == 1 ? json{p.x} : json{p.x, p.y});
  j["points"] = pts;
  json simplices = json::array();
  if (tri.dimension == 1)
    for (const auto& s : tri.segments) simplices.push_back({s[0], s[1]});
  else
    for (const auto& t : tri.triangles) simplices.push_back({t[0], t[1], t[2]});
  j["simplices"] = simplices;
  return j.dump(2) + "\n";
}

namespace {

json number_or_null(double v) { return std::isnan(v) ? json(nullptr) : json(v); }

}  // namespace

std::string format_witness_json(const EquivalenceWitness& w) {
  json j;
  j["form"] = to_string(w.form);
  j["pass"] = w.pass;
  j["range"] = {w.rmin, w.rmax};
  switch (w.form) {
    case WitnessForm::Multiplicative:
      j["C1"] = w.C1;
      j["C2"] = w.C2;
      j["m"] = w.m;
      j["M"] = w.M;
      break;
    case WitnessForm::Additive:
      j["m"] = w.m;
      j["M"] = w.M;
      j["a"] = w.a;
      j["b"] = w.b;
      break;
    case WitnessForm::Offset:
      j["a"] = w.a;
      j["b"] = w.b;
      j["K"] = w.K;
      break;
  }
  json res = json::array();
  for (const auto& r : w.residuals)
    res.push_back({{"r", r.r},
                   {"lower_slack", number_or_null(r.lower_slack)},
                   {"upper_slack", number_or_null(r.upper_slack)}});
  j["residuals"] = res;
  return j.dump(2) + "\n";
}

std::string format_return_vectors_json(const ReturnVectorSet& set) {
  json j;
  j["radius"] = set.radius;
  j["bound"] = set.bound;
  json vs = json::array();
  for (const auto& [v, n] : set.vectors) vs.push_back({v.x, v.y});
  j["vectors"] = vs;
  return j.dump(2) + "\n";
}

}  // namespace aplab

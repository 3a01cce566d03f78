#include "aplab/symbolic.hpp"

#include <limits>
#include <set>

#include "aplab/error.hpp"
#include "aplab/patch.hpp"

namespace aplab {

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) throw PreconditionError("alphabet is empty");
  if (names_.size() > 0xFFFF) throw PreconditionError("alphabet too large");
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) throw PreconditionError("empty symbol name");
    if (!index_.emplace(names_[i], SymbolId(i)).second)
      throw PreconditionError("duplicate symbol '" + names_[i] + "'");
    if (names_[i].size() != 1) single_char_ = false;
  }
}

SymbolId Alphabet::id(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw PreconditionError("unknown symbol '" + name + "'");
  return it->second;
}

SubstitutionRule::SubstitutionRule(std::string name, int dimension, AlphabetPtr alphabet,
                                   std::vector<SymbolBlock> images)
    : name_(std::move(name)),
      dimension_(dimension),
      alphabet_(std::move(alphabet)),
      images_(std::move(images)) {
  if (dimension_ != 1 && dimension_ != 2)
    throw PreconditionError("substitution dimension must be 1 or 2");
  if (!alphabet_) throw PreconditionError("substitution without alphabet");
  const std::size_t n = alphabet_->size();
  if (images_.size() != n) throw PreconditionError("one image per symbol required");
  for (const auto& img : images_) {
    if (img.width <= 0 || img.height <= 0 || img.cells.empty())
      throw PreconditionError("empty substitution image");
    if (img.cells.size() != std::size_t(img.width) * img.height)
      throw PreconditionError("image block size mismatch");
    if (dimension_ == 1 && img.height != 1)
      throw PreconditionError("1-D images must have height 1");
    if (dimension_ == 2 && (img.width != images_[0].width || img.height != images_[0].height))
      throw PreconditionError("2-D substitution images must share one block shape");
    for (SymbolId s : img.cells)
      if (s >= n) throw PreconditionError("image uses a symbol outside the alphabet");
  }
  matrix_.assign(n, std::vector<std::uint64_t>(n, 0));
  for (std::size_t j = 0; j < n; ++j)
    for (SymbolId s : images_[j].cells) ++matrix_[s][j];
}

Configuration::Configuration(int dimension, AlphabetPtr alphabet, Grid<SymbolId> cells,
                             Cell origin, Provenance provenance, int certified_radius)
    : dimension_(dimension),
      alphabet_(std::move(alphabet)),
      cells_(std::move(cells)),
      origin_(origin),
      provenance_(std::move(provenance)),
      certified_radius_(certified_radius) {
  if (dimension_ != 1 && dimension_ != 2)
    throw PreconditionError("configuration dimension must be 1 or 2");
  if (!alphabet_) throw PreconditionError("configuration without alphabet");
  if (cells_.size() == 0) throw PreconditionError("configuration window is empty");
  if (dimension_ == 1 && cells_.height() != 1)
    throw PreconditionError("1-D configuration must have height 1");
  if (certified_radius_ < 0) throw PreconditionError("negative certified radius");
  for (SymbolId s : cells_.data())
    if (s >= alphabet_->size()) throw PreconditionError("cell symbol outside the alphabet");
}

Configuration Configuration::with_certified_radius(int r) const {
  Configuration c = *this;
  if (r < 0) throw PreconditionError("negative certified radius");
  c.certified_radius_ = r;
  return c;
}

std::string Configuration::word() const {
  std::string out;
  const bool compact = alphabet_->single_char();
  for (int y = 0; y < height(); ++y) {
    if (y > 0) out += '\n';
    for (int x = 0; x < width(); ++x) {
      if (!compact && x > 0) out += ' ';
      out += alphabet_->name(at(x, y));
    }
  }
  return out;
}

namespace {

std::size_t image_size(const SubstitutionRule& rule, const std::vector<std::uint64_t>& counts) {
  // Saturates at SIZE_MAX instead of overflowing.
  constexpr std::size_t kMax = std::numeric_limits<std::size_t>::max();
  std::size_t total = 0;
  for (std::size_t s = 0; s < counts.size(); ++s) {
    const std::size_t cells = rule.image(SymbolId(s)).cells.size();
    if (counts[s] != 0 && cells > kMax / counts[s]) return kMax;
    const std::size_t part = counts[s] * cells;
    if (part > kMax - total) return kMax;
    total += part;
  }
  return total;
}

}  // namespace

Configuration substitute(const SubstitutionRule& rule, const Configuration& config,
                         std::size_t cell_cap) {
  if (config.dimension() != rule.dimension())
    throw PreconditionError("rule and configuration dimensions differ");
  if (!(config.alphabet() == *rule.alphabet()))
    throw PreconditionError("rule and configuration alphabets differ");
  std::vector<std::uint64_t> counts(rule.alphabet()->size(), 0);
  for (SymbolId s : config.cells().data()) ++counts[s];
  const std::size_t total = image_size(rule, counts);
  if (total > cell_cap) throw CapacityError(total, cell_cap);

  Provenance prov = config.provenance();
  prov.level += 1;
  if (rule.dimension() == 1) {
    std::vector<SymbolId> out;
    out.reserve(total);
    for (SymbolId s : config.cells().data()) {
      const auto& img = rule.image(s).cells;
      out.insert(out.end(), img.begin(), img.end());
    }
    Grid<SymbolId> g(int(out.size()), 1);
    g.data() = std::move(out);
    prov.inflation = {double(g.width()) / config.width(), 1.0};
    return Configuration(1, rule.alphabet(), std::move(g), {}, prov, 0);
  }
  const int bw = rule.image(0).width, bh = rule.image(0).height;
  Grid<SymbolId> g(config.width() * bw, config.height() * bh);
  for (int y = 0; y < config.height(); ++y)
    for (int x = 0; x < config.width(); ++x) {
      const auto& img = rule.image(config.at(x, y));
      for (int j = 0; j < bh; ++j)
        for (int i = 0; i < bw; ++i) g(x * bw + i, y * bh + j) = img.at(i, j);
    }
  prov.inflation = {double(bw), double(bh)};
  return Configuration(2, rule.alphabet(), std::move(g), {}, prov, 0);
}

Configuration expand(const SubstitutionRule& rule, const std::string& seed, int levels,
                     std::size_t cell_cap) {
  if (levels < 1) throw PreconditionError("expansion needs at least one level");
  const SymbolId s = rule.alphabet()->id(seed);
  Grid<SymbolId> g(1, 1, s);
  Provenance prov;
  prov.rule_id = rule.name();
  prov.seed = seed;
  prov.level = 0;
  Configuration config(rule.dimension(), rule.alphabet(), std::move(g), {}, prov, 0);
  for (int k = 0; k < levels; ++k) config = substitute(rule, config, cell_cap);
  return config;
}

namespace {

/// Distinct side-r patches of the window, for r = 1..rmax (stops early when
/// the window is too small).
std::vector<std::set<Patch>> patch_languages(const Configuration& config, int rmax) {
  std::vector<std::set<Patch>> out;
  PatchClassifier classes(config);
  for (int r = 1; r <= rmax; ++r) {
    if (r > 1) {
      const Box next{0, 0, config.width() - r + 1,
                     config.dimension() == 2 ? config.height() - r + 1 : 1};
      if (next.empty()) break;
      classes.grow();
    }
    const Box anchors = classes.anchors();
    std::vector<char> seen(classes.label_count(), 0);
    std::set<Patch> language;
    for (int y = anchors.y0; y < anchors.y1(); ++y)
      for (int x = anchors.x0; x < anchors.x1(); ++x) {
        const int l = classes.label({x, y});
        if (!seen[l]) {
          seen[l] = 1;
          language.insert(extract_patch(config, {x, y}, r));
        }
      }
    out.push_back(std::move(language));
  }
  return out;
}

}  // namespace

int certify_language(const SubstitutionRule& rule, const Configuration& config, int rmax,
                     std::size_t cell_cap) {
  if (config.provenance().rule_id != rule.name())
    throw PreconditionError("configuration was not produced by rule '" + rule.name() + "'");
  if (rmax < 1) return 0;
  const Configuration next = substitute(rule, config, cell_cap);
  const auto here = patch_languages(config, rmax);
  const auto there = patch_languages(next, rmax);
  int certified = 0;
  for (std::size_t i = 0; i < here.size() && i < there.size(); ++i) {
    if (here[i] != there[i]) break;
    certified = int(i) + 1;
  }
  return certified;
}

Configuration expand_certified(const SubstitutionRule& rule, const std::string& seed,
                               int levels, int rmax, std::size_t cell_cap) {
  Configuration c = expand(rule, seed, levels, cell_cap);
  return c.with_certified_radius(certify_language(rule, c, rmax, cell_cap));
}

PrimitivityResult primitivity_check(const SubstitutionRule& rule) {
  const auto& m = rule.abelianization();
  const std::size_t n = m.size();
  using Pattern = std::vector<std::vector<char>>;
  Pattern base(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) base[i][j] = m[i][j] > 0;
  Pattern power = base;
  auto positive = [](const Pattern& p) {
    for (const auto& row : p)
      for (char v : row)
        if (!v) return false;
    return true;
  };
  for (std::size_t k = 1; k <= n * n; ++k) {
    if (positive(power)) return {true, int(k)};
    Pattern next(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l)
        if (power[i][l])
          for (std::size_t j = 0; j < n; ++j)
            if (base[l][j]) next[i][j] = 1;
    power = std::move(next);
  }
  return {false, std::nullopt};
}

Configuration crop(const Configuration& config, const Box& box, int certified_radius) {
  const Box b = box.intersect(config.box());
  if (b.empty() || !(b == box)) throw PreconditionError("crop box leaves the window");
  Grid<SymbolId> g(b.width, b.height);
  for (int y = 0; y < b.height; ++y)
    for (int x = 0; x < b.width; ++x) g(x, y) = config.at(b.x0 + x, b.y0 + y);
  return Configuration(config.dimension(), config.alphabet_ptr(), std::move(g),
                       config.origin() + Cell{b.x0, b.y0}, config.provenance(),
                       certified_radius);
}

}  // namespace aplab

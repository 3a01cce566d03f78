#include "aplab/derivation.hpp"

#include <climits>

#include "aplab/error.hpp"
#include "distance.hpp"
#include "aplab/patch.hpp"

namespace aplab {

PointingRule PointingRule::all() { return PointingRule("all", All{}); }

PointingRule PointingRule::symbols(std::vector<std::string> marked) {
  std::string name = "symbols:";
  for (std::size_t i = 0; i < marked.size(); ++i) name += (i ? "," : "") + marked[i];
  return PointingRule(name, Symbols{std::move(marked)});
}

PointingRule PointingRule::table(int radius, std::map<std::string, bool> table) {
  if (radius < 0) throw PreconditionError("negative pointing radius");
  return PointingRule("table:r" + std::to_string(radius), Table{radius, std::move(table)});
}

PointingRule PointingRule::lattice(int mx, int rx, int my, int ry) {
  if (mx < 1 || my < 1) throw PreconditionError("lattice modulus must be positive");
  return PointingRule("lattice:" + std::to_string(mx) + "," + std::to_string(rx) + "," +
                          std::to_string(my) + "," + std::to_string(ry),
                      Lattice{mx, ((rx % mx) + mx) % mx, my, ((ry % my) + my) % my});
}

PointingRule PointingRule::named(std::string name) const {
  PointingRule r = *this;
  r.name_ = std::move(name);
  return r;
}

int PointingRule::radius() const {
  return std::visit(
      [](const auto& k) -> int {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Table>) return k.radius;
        else if constexpr (std::is_same_v<K, Union>)
          return std::max(k.first->radius(), k.second->radius());
        else return 0;
      },
      kind_);
}

bool PointingRule::marks(const Configuration& config, Cell c) const {
  return std::visit(
      [&](const auto& k) -> bool {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, All>) {
          return true;
        } else if constexpr (std::is_same_v<K, Symbols>) {
          const std::string& s = config.alphabet().name(config[c]);
          for (const auto& m : k.symbols)
            if (m == s) return true;
          return false;
        } else if constexpr (std::is_same_v<K, Table>) {
          const std::string key = patch_key(config, c, k.radius);
          auto it = k.table.find(key);
          if (it == k.table.end()) throw IncompleteTableError("pointing rule " + name_, key);
          return it->second;
        } else if constexpr (std::is_same_v<K, Lattice>) {
          const Cell g = config.origin() + c;
          auto mod = [](int v, int m) { return ((v % m) + m) % m; };
          return mod(g.x, k.mx) == k.rx && (config.dimension() == 1 || mod(g.y, k.my) == k.ry);
        } else {
          return k.first->marks(config, c) || k.second->marks(config, c);
        }
      },
      kind_);
}

PointingRule union_pointing(const PointingRule& first, const PointingRule& second) {
  return PointingRule("union(" + first.name() + "," + second.name() + ")",
                      PointingRule::Union{std::make_shared<const PointingRule>(first),
                                          std::make_shared<const PointingRule>(second)});
}

Grid<std::uint8_t> mark_mask(const Configuration& config, const PointingRule& rule,
                             Box* evaluable) {
  const Box e = config.box().shrunk(rule.radius(), config.dimension());
  if (evaluable) *evaluable = e;
  Grid<std::uint8_t> mask(config.width(), config.height(), 0);
  for (int y = e.y0; y < e.y1(); ++y)
    for (int x = e.x0; x < e.x1(); ++x) mask(x, y) = rule.marks(config, {x, y}) ? 1 : 0;
  return mask;
}


PointedSet apply_pointing(const Configuration& config, const PointingRule& rule,
                          const PointingOptions& options) {
  if (config.certified_radius() <= rule.radius())
    throw PreconditionError("certified radius must exceed the pointing radius");
  PointedSet out;
  out.mask = mark_mask(config, rule, &out.evaluable);
  const int d = config.dimension();
  for (int y = 0; y < config.height(); ++y)
    for (int x = 0; x < config.width(); ++x)
      if (out.mask(x, y)) out.marks.push_back({x, y});
  if (out.marks.empty()) throw NotRelativelyDenseError("pointing rule marks no cell", -1);

  Grid<int> dist;
  detail::chebyshev_distance(out.mask, out.evaluable, d, dist);
  long worst_gap = 0;
  int cover = -1;
  for (int y = out.evaluable.y0; y < out.evaluable.y1(); ++y)
    for (int x = out.evaluable.x0; x < out.evaluable.x1(); ++x) {
      const int v = dist(x, y);
      worst_gap = std::max<long>(worst_gap, v);
      // Safe: the ball reaching the nearest mark lies in the evaluable box.
      if (v <= out.evaluable.inner_margin({x, y}, d)) cover = std::max(cover, v);
    }
  if (worst_gap > options.density_cap)
    throw NotRelativelyDenseError("gap of " + std::to_string(worst_gap) +
                                      " cells exceeds the density cap " +
                                      std::to_string(options.density_cap),
                                  worst_gap);
  if (cover < 0) throw InsufficientWindowError("no safe interior cell for the covering radius");
  out.covering_radius = cover;

  // Smallest distance between two distinct marks, scanning growing rings.
  int best = INT_MAX;
  for (const Cell& c : out.marks) {
    const int limit = std::min(best - 1, std::max(config.width(), config.height()));
    for (int r = 1; r <= limit; ++r) {
      bool found = false;
      const int ylo = d == 2 ? -r : 0, yhi = d == 2 ? r : 0;
      for (int dy = ylo; dy <= yhi && !found; ++dy)
        for (int dx = -r; dx <= r; ++dx) {
          if (std::max(std::abs(dx), std::abs(dy)) != r) continue;
          const Cell n{c.x + dx, c.y + dy};
          if (config.box().contains(n) && out.mask[n]) {
            found = true;
            break;
          }
        }
      if (found) {
        best = r;
        break;
      }
    }
  }
  out.discreteness = best;
  return out;
}

Configuration apply_code(const Configuration& config, const BlockCode& code) {
  const int d = config.dimension();
  if (code.dimension != d) throw PreconditionError("block code dimension mismatch");
  if (!code.output_alphabet) throw PreconditionError("block code without output alphabet");
  if (config.certified_radius() <= code.radius)
    throw PreconditionError("certified radius must exceed the code radius");
  const Box out_box = config.box().shrunk(code.radius, d);
  if (out_box.empty()) throw InsufficientWindowError("window smaller than the code support");
  Grid<SymbolId> out(out_box.width, out_box.height);
  for (int y = 0; y < out_box.height; ++y)
    for (int x = 0; x < out_box.width; ++x) {
      const std::string key = patch_key(config, {out_box.x0 + x, out_box.y0 + y}, code.radius);
      auto it = code.table.find(key);
      if (it == code.table.end()) throw IncompleteTableError("block code " + code.name, key);
      out(x, y) = it->second;
    }
  Provenance prov = config.provenance();
  prov.derivations.push_back(code.name);
  // An output side-s patch is read off an input side-(s + 2R) patch.
  const int certified = std::max(0, config.certified_radius() - 2 * code.radius);
  return Configuration(d, code.output_alphabet, std::move(out),
                       config.origin() + Cell{out_box.x0, out_box.y0}, prov, certified);
}

MldResult mld_check(const Configuration& config, const BlockCode& code,
                    const BlockCode& candidate_inverse) {
  if (!(*candidate_inverse.output_alphabet == config.alphabet()))
    throw PreconditionError("candidate inverse does not map back to the input alphabet");
  const Configuration coded = apply_code(config, code);
  if (coded.certified_radius() <= candidate_inverse.radius)
    throw PreconditionError("window too small for the candidate inverse");
  const Configuration back = apply_code(coded, candidate_inverse);
  MldResult r;
  const Cell shift = back.origin() - config.origin();
  for (int y = 0; y < back.height(); ++y)
    for (int x = 0; x < back.width(); ++x) {
      const std::string& got = back.alphabet().name(back.at(x, y));
      const std::string& want = config.alphabet().name(config.at(x + shift.x, y + shift.y));
      if (got != want) {
        r.failing_cell = back.origin() + Cell{x, y};
        return r;
      }
    }
  r.mld = true;
  return r;
}

BlockCode tabulate_code(const Configuration& config, std::string name, int radius,
                        AlphabetPtr output_alphabet,
                        const std::function<std::string(const Configuration&, Cell)>& output) {
  BlockCode code;
  code.name = std::move(name);
  code.dimension = config.dimension();
  code.radius = radius;
  code.output_alphabet = std::move(output_alphabet);
  const Box b = config.box().shrunk(radius, config.dimension());
  for (int y = b.y0; y < b.y1(); ++y)
    for (int x = b.x0; x < b.x1(); ++x)
      code.table.emplace(patch_key(config, {x, y}, radius),
                         code.output_alphabet->id(output(config, {x, y})));
  return code;
}

}  // namespace aplab

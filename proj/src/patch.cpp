#include "aplab/patch.hpp"

#include <array>
#include <unordered_map>

#include "aplab/error.hpp"

namespace aplab {

std::uint64_t Patch::hash() const {
  // FNV-1a over (side, symbols).
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xFF;
      h *= 1099511628211ull;
    }
  };
  mix(std::uint64_t(side));
  for (SymbolId s : symbols) mix(s);
  return h;
}

Patch extract_patch(const Configuration& config, Cell anchor, int side) {
  const int d = config.dimension();
  const int rows = d == 2 ? side : 1;
  if (side < 1 || anchor.x < 0 || anchor.y < 0 || anchor.x + side > config.width() ||
      anchor.y + rows > config.height())
    throw PreconditionError("patch leaves the window");
  Patch p;
  p.dimension = d;
  p.side = side;
  p.symbols.reserve(std::size_t(side) * rows);
  for (int j = 0; j < rows; ++j)
    for (int i = 0; i < side; ++i) p.symbols.push_back(config.at(anchor.x + i, anchor.y + j));
  return p;
}

std::string patch_key(const Configuration& config, Cell center, int radius) {
  const Alphabet& a = config.alphabet();
  const bool compact = a.single_char();
  const int d = config.dimension();
  std::string key;
  const int ylo = d == 2 ? center.y - radius : 0, yhi = d == 2 ? center.y + radius : 0;
  for (int y = ylo; y <= yhi; ++y) {
    if (y > ylo) key += '/';
    for (int x = center.x - radius; x <= center.x + radius; ++x) {
      if (!compact && x > center.x - radius) key += ',';
      key += a.name(config.at(x, y));
    }
  }
  return key;
}

namespace {

struct ArrayHash {
  std::size_t operator()(const std::array<int, 4>& k) const {
    std::uint64_t h = 0x9E3779B97F4A7C15ull;
    for (int v : k) {
      h ^= std::uint64_t(std::uint32_t(v)) + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    }
    return std::size_t(h);
  }
};

}  // namespace

PatchClassifier::PatchClassifier(const Configuration& config)
    : config_(&config), labels_(config.width(), config.height(), -1) {
  std::vector<int> first(config.alphabet().size(), -1);
  for (int y = 0; y < config.height(); ++y)
    for (int x = 0; x < config.width(); ++x) {
      int& l = first[config.at(x, y)];
      if (l < 0) l = count_++;
      labels_(x, y) = l;
    }
}

Box PatchClassifier::anchors() const {
  const int d = config_->dimension();
  return {0, 0, config_->width() - side_ + 1, d == 2 ? config_->height() - side_ + 1 : 1};
}

void PatchClassifier::grow() {
  const int d = config_->dimension();
  ++side_;
  const Box box = anchors();
  if (box.empty()) throw PreconditionError("patch side exceeds the window");
  Grid<int> next(config_->width(), config_->height(), -1);
  std::unordered_map<std::array<int, 4>, int, ArrayHash> ids;
  ids.reserve(std::size_t(count_) * 4 + 16);
  int count = 0;
  for (int y = box.y0; y < box.y1(); ++y)
    for (int x = box.x0; x < box.x1(); ++x) {
      std::array<int, 4> key{labels_(x, y), labels_(x + 1, y), -1, -1};
      if (d == 2) {
        key[2] = labels_(x, y + 1);
        key[3] = labels_(x + 1, y + 1);
      }
      auto [it, inserted] = ids.try_emplace(key, count);
      if (inserted) ++count;
      next(x, y) = it->second;
    }
  labels_ = std::move(next);
  count_ = count;
}

}  // namespace aplab

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace aplab {

struct SeriesEntry {
  std::int64_t value = 0;
  bool certified = false;
  bool operator==(const SeriesEntry&) const = default;
};

/// Function r -> value sampled on positive integers, with certification flags.
struct SampledSeries {
  std::map<int, SeriesEntry> entries;
  /// Pointing rule identifier, "full" for every cell.
  std::string pointing = "full";
  int dimension = 1;
  std::string source;

  /// Value at r if r is present and certified.
  std::optional<std::int64_t> certified_value(int r) const {
    auto it = entries.find(r);
    if (it == entries.end() || !it->second.certified) return std::nullopt;
    return it->second.value;
  }
  std::vector<int> certified_radii() const {
    std::vector<int> out;
    for (const auto& [r, e] : entries)
      if (e.certified) out.push_back(r);
    return out;
  }
  void set(int r, std::int64_t value, bool certified) { entries[r] = {value, certified}; }
  bool operator==(const SampledSeries& o) const { return entries == o.entries; }
};

/// r -> p(r), the number of distinct pointed side-r patches.
struct ComplexitySeries : SampledSeries {};

/// r -> R(r), the l-infinity return radius of every pointed side-r patch.
struct RepetitivitySeries : SampledSeries {};

/// Builds a fully certified series from f on [rmin, rmax].
template <class Series>
Series synthetic_series(int rmin, int rmax, const std::function<std::int64_t(int)>& f,
                        int dimension = 1) {
  Series s;
  s.dimension = dimension;
  s.source = "synthetic";
  for (int r = rmin; r <= rmax; ++r) s.set(r, f(r), true);
  return s;
}

}  // namespace aplab

#pragma once

#include <deque>

#include "aplab/grid.hpp"

namespace aplab::detail {

/// Chebyshev distance from every cell of `box` to the nearest cell with
/// sources(c) != 0, moving only inside the box; -1 where no source is reachable.
template <class T>
void chebyshev_distance(const Grid<T>& sources, const Box& box, int dimension, Grid<int>& dist) {
  if (dist.width() != sources.width() || dist.height() != sources.height())
    dist = Grid<int>(sources.width(), sources.height(), -1);
  if (dimension == 1) {
    // Two sweeps along the row.
    const int y = box.y0;
    int last = -1;
    for (int x = box.x0; x < box.x1(); ++x) {
      if (sources(x, y)) last = x;
      dist(x, y) = last < 0 ? -1 : x - last;
    }
    last = -1;
    for (int x = box.x1() - 1; x >= box.x0; --x) {
      if (sources(x, y)) last = x;
      if (last >= 0 && (dist(x, y) < 0 || last - x < dist(x, y))) dist(x, y) = last - x;
    }
    return;
  }
  for (int y = box.y0; y < box.y1(); ++y)
    for (int x = box.x0; x < box.x1(); ++x) dist(x, y) = -1;
  std::deque<Cell> queue;
  for (int y = box.y0; y < box.y1(); ++y)
    for (int x = box.x0; x < box.x1(); ++x)
      if (sources(x, y)) {
        dist(x, y) = 0;
        queue.push_back({x, y});
      }
  while (!queue.empty()) {
    const Cell c = queue.front();
    queue.pop_front();
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx) {
        const Cell n{c.x + dx, c.y + dy};
        if ((dx || dy) && box.contains(n) && dist[n] < 0) {
          dist[n] = dist[c] + 1;
          queue.push_back(n);
        }
      }
  }
}

}  // namespace aplab::detail

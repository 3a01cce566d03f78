#pragma once

#include <algorithm>
#include <compare>
#include <cstdlib>
#include <vector>

namespace aplab {

/// Integer cell coordinate. One-dimensional data keeps y == 0.
struct Cell {
  int x = 0;
  int y = 0;

  auto operator<=>(const Cell&) const = default;
  Cell operator+(Cell o) const { return {x + o.x, y + o.y}; }
  Cell operator-(Cell o) const { return {x - o.x, y - o.y}; }
  Cell operator-() const { return {-x, -y}; }
};

inline int chebyshev(Cell a, Cell b) {
  return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y));
}

/// Half-open axis-aligned box of cells [x0, x0+width) x [y0, y0+height).
struct Box {
  int x0 = 0;
  int y0 = 0;
  int width = 0;
  int height = 0;

  bool empty() const { return width <= 0 || height <= 0; }
  long area() const { return empty() ? 0 : long(width) * height; }
  int x1() const { return x0 + width; }
  int y1() const { return y0 + height; }
  bool contains(Cell c) const {
    return c.x >= x0 && c.x < x1() && c.y >= y0 && c.y < y1();
  }
  /// Removes `margin` cells on both sides of every axis of a `dimension`-D box.
  Box shrunk(int margin, int dimension) const {
    Box b = *this;
    b.x0 += margin;
    b.width -= 2 * margin;
    if (dimension == 2) {
      b.y0 += margin;
      b.height -= 2 * margin;
    }
    return b;
  }
  Box intersect(const Box& o) const {
    const int nx0 = std::max(x0, o.x0), ny0 = std::max(y0, o.y0);
    const int nx1 = std::min(x1(), o.x1()), ny1 = std::min(y1(), o.y1());
    return {nx0, ny0, std::max(0, nx1 - nx0), std::max(0, ny1 - ny0)};
  }
  /// Chebyshev distance from c (inside the box) to the nearest cell outside it.
  int inner_margin(Cell c, int dimension) const {
    int m = std::min(c.x - x0, x1() - 1 - c.x);
    if (dimension == 2) m = std::min({m, c.y - y0, y1() - 1 - c.y});
    return m;
  }
  bool operator==(const Box&) const = default;
};

/// Dense row-major 2-D array.
template <class T>
class Grid {
 public:
  Grid() = default;
  Grid(int width, int height, T fill = T{})
      : width_(width), height_(height), data_(std::size_t(width) * height, fill) {}

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return data_.size(); }

  T& operator()(int x, int y) { return data_[std::size_t(y) * width_ + x]; }
  const T& operator()(int x, int y) const { return data_[std::size_t(y) * width_ + x]; }
  T& operator[](Cell c) { return (*this)(c.x, c.y); }
  const T& operator[](Cell c) const { return (*this)(c.x, c.y); }

  const std::vector<T>& data() const { return data_; }
  std::vector<T>& data() { return data_; }

  bool operator==(const Grid&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<T> data_;
};

}  // namespace aplab

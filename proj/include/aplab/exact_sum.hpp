#pragma once

#include <gmpxx.h>

#include "aplab/vec2.hpp"

namespace aplab {

/// Exact accumulator for sums of doubles.
class ExactSum {
 public:
  void add(double v) { sum_ += mpq_class(v); }
  void sub(double v) { sum_ -= mpq_class(v); }
  double value() const { return sum_.get_d(); }
  bool is_zero() const { return sgn(sum_) == 0; }

 private:
  mpq_class sum_ = 0;
};

class ExactVecSum {
 public:
  void add(Vec2 v, int sign = 1) {
    if (sign >= 0) {
      x_.add(v.x);
      y_.add(v.y);
    } else {
      x_.sub(v.x);
      y_.sub(v.y);
    }
  }
  Vec2 value() const { return {x_.value(), y_.value()}; }
  bool is_zero() const { return x_.is_zero() && y_.is_zero(); }

 private:
  ExactSum x_, y_;
};

}  // namespace aplab

#pragma once

#include "maxbv/errors.hpp"
#include "maxbv/rational.hpp"

namespace maxbv {

/// Closed bounded interval [lo, hi] with lo < hi.
struct Interval {
  Rat lo;
  Rat hi;

  Interval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
    if (!(lo < hi)) throw Error(ErrorCode::BadShape, "interval needs lo < hi");
  }

  Rat length() const { return hi - lo; }
  bool contains(const Rat& x) const { return lo <= x && x <= hi; }
  bool contains(const Interval& w) const { return lo <= w.lo && w.hi <= hi; }
  Rat midpoint() const { return (lo + hi) / Rat(2); }

  friend bool operator==(const Interval& a, const Interval& b) { return a.lo == b.lo && a.hi == b.hi; }
};

}  // namespace maxbv

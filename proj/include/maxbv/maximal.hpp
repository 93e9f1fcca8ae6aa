#pragma once

#include <optional>

#include "maxbv/step_fn.hpp"

namespace maxbv {

/// Result of one exact sup-of-averages query.
struct MaxQueryResult {
  Rat value;
  Interval witness;
  /// True only when the sup is approached by shrinking intervals and never
  /// attained at positive length (cannot happen for step inputs; kept for the
  /// contract and asserted against in tests).
  bool degenerate = false;
};

/// Exact evaluator of the local uncentered maximal function of |f|:
///   M_R f(x) = sup { avg |f| over [a,b] : a <= x <= b, 0 < b-a <= R, [a,b] in domain }.
///
/// Any admissible average is a convex combination of the averages over [a,x]
/// and [x,b], so the sup equals the max of the two one-sided sups; on each
/// side the average is linear-fractional in the free endpoint between knots,
/// hence maximized at a knot or at the distance-R cap. The evaluator scans
/// those candidates exactly in rational arithmetic.
class MaxEvaluator {
public:
  /// cap = std::nullopt evaluates the unrestricted operator M.
  MaxEvaluator(const StepFn& f, std::optional<Rat> cap);

  MaxQueryResult eval(const Rat& x) const;

  const StepFn& abs_fn() const { return absf_; }
  const std::optional<Rat>& cap() const { return cap_; }

  /// Antiderivative of |f| from domain.lo, exact.
  Rat integral_to(const Rat& x) const;

private:
  StepFn absf_;
  std::optional<Rat> cap_;
  std::vector<Rat> knots_;
  std::vector<Rat> prefix_;

  size_t knot_upper_bound(const Rat& x) const;  // first index with knots_[i] > x
};

MaxQueryResult maximal_eval(const StepFn& f, const Rat& x, const std::optional<Rat>& R);

}  // namespace maxbv

#pragma once

#include <utility>
#include <vector>

#include "maxbv/interval.hpp"

namespace maxbv {

/// Piecewise-constant function on a bounded interval. Values live on the open
/// pieces between consecutive breakpoints; values at breakpoints are derived
/// via the canonical-representative rule (max of the two adjacent pieces), so
/// null-set modifications can never change integrals or variation.
///
/// Canonical form: strictly increasing breakpoints inside the open domain,
/// adjacent equal-valued pieces merged at construction.
class StepFn {
public:
  StepFn(Interval domain, std::vector<Rat> breakpoints, std::vector<Rat> values);

  static StepFn constant(Interval domain, Rat value);
  /// Indicator of [a, b] (times `height`) inside `domain`.
  static StepFn indicator(Interval domain, Interval box, Rat height = Rat(1));

  const Interval& domain() const { return domain_; }
  const std::vector<Rat>& breakpoints() const { return breakpoints_; }
  const std::vector<Rat>& values() const { return values_; }
  size_t piece_count() const { return values_.size(); }

  /// Knot sequence: domain.lo, breakpoints..., domain.hi.
  std::vector<Rat> knots() const;

  /// Value on the piece with index i (between knots i and i+1).
  const Rat& piece_value(size_t i) const { return values_[i]; }

  /// Index of a piece whose closure contains x.
  size_t piece_index(const Rat& x) const;

  bool is_zero() const;
  Rat ess_sup_abs() const;

  StepFn abs() const;
  StepFn scaled(const Rat& c) const;
  /// Zero-extension to a larger window.
  StepFn extended_to(const Interval& window) const;

  friend bool operator==(const StepFn& a, const StepFn& b);

private:
  Interval domain_;
  std::vector<Rat> breakpoints_;
  std::vector<Rat> values_;
};

/// Non-increasing rearrangement of |f| on [0, lambda(domain)), stored as a StepFn.
struct RearrangedFn {
  StepFn fn;
  /// Value at t in [0, length): value of the piece containing t (right-continuous,
  /// left piece value at internal knots, matching inf-attainment).
  Rat at(const Rat& t) const;
};

Rat integral_abs(const StepFn& f, const Interval& window);
Rat integral_abs(const StepFn& f);
/// Signed integral over the whole domain.
Rat integral(const StepFn& f);

/// (sum |v_i|^p len_i)^(1/p) as binary64; exact inner sum available for integer p.
double lp_norm(const StepFn& f, const Rat& p);
Rat lp_inner_sum(const StepFn& f, unsigned p);

Rat variation(const StepFn& f);
Rat bv_norm(const StepFn& f);

Rat canonical_at(const StepFn& f, const Rat& x);

RearrangedFn rearrangement(const StepFn& f);

std::pair<StepFn, StepFn> pos_neg_parts(const StepFn& f);

/// Convex hull of the support, enlarged by R on each side, clipped to `ambient`.
Interval support_neighborhood(const StepFn& f, const Rat& R, const Interval& ambient);
Interval support_neighborhood(const StepFn& f, const Rat& R);
/// Exact measure of (support + [-R, R]) as a union of intervals, clipped to the domain.
Rat support_union_length(const StepFn& f, const Rat& R);
/// Smallest closed interval containing {f != 0}.
Interval support_hull(const StepFn& f);

/// lambda{ |f| > t }, exact.
Rat distribution_above(const StepFn& f, const Rat& t);

/// Pointwise sum on the common refinement (domains must agree).
StepFn add(const StepFn& f, const StepFn& g);

}  // namespace maxbv

#include "maxbv/step_fn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace maxbv {

StepFn::StepFn(Interval domain, std::vector<Rat> breakpoints, std::vector<Rat> values)
    : domain_(std::move(domain)) {
  if (values.size() != breakpoints.size() + 1)
    throw Error(ErrorCode::CountMismatch, "need |values| = |breakpoints| + 1");
  for (size_t i = 0; i + 1 < breakpoints.size(); ++i)
    if (!(breakpoints[i] < breakpoints[i + 1]))
      throw Error(ErrorCode::NonMonotoneBreakpoints, "breakpoints must be strictly increasing");
  for (const Rat& b : breakpoints)
    if (!(domain_.lo < b && b < domain_.hi))
      throw Error(ErrorCode::BreakpointOutsideDomain, "breakpoint not strictly inside domain");
  // Merge adjacent equal pieces so canonical form is unique.
  breakpoints_.reserve(breakpoints.size());
  values_.reserve(values.size());
  values_.push_back(values[0]);
  for (size_t i = 0; i < breakpoints.size(); ++i) {
    if (values[i + 1] == values_.back()) continue;
    breakpoints_.push_back(breakpoints[i]);
    values_.push_back(values[i + 1]);
  }
}

StepFn StepFn::constant(Interval domain, Rat value) {
  return StepFn(std::move(domain), {}, {std::move(value)});
}

StepFn StepFn::indicator(Interval domain, Interval box, Rat height) {
  if (!domain.contains(box)) throw Error(ErrorCode::WindowOutsideDomain, "box outside domain");
  std::vector<Rat> bps;
  std::vector<Rat> vals;
  vals.push_back(Rat(0));
  if (domain.lo < box.lo) {
    bps.push_back(box.lo);
    vals.push_back(height);
  } else {
    vals.back() = height;
  }
  if (box.hi < domain.hi) {
    bps.push_back(box.hi);
    vals.push_back(Rat(0));
  }
  return StepFn(std::move(domain), std::move(bps), std::move(vals));
}

std::vector<Rat> StepFn::knots() const {
  std::vector<Rat> k;
  k.reserve(breakpoints_.size() + 2);
  k.push_back(domain_.lo);
  for (const Rat& b : breakpoints_) k.push_back(b);
  k.push_back(domain_.hi);
  return k;
}

size_t StepFn::piece_index(const Rat& x) const {
  if (!domain_.contains(x)) throw Error(ErrorCode::OutsideDomain, "point outside domain");
  size_t lo = 0, hi = breakpoints_.size();
  // first piece i with x <= breakpoints_[i] (or the last piece)
  while (lo < hi) {
    size_t mid = (lo + hi) / 2;
    if (x <= breakpoints_[mid]) hi = mid; else lo = mid + 1;
  }
  return lo;
}

bool StepFn::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](const Rat& v) { return v.is_zero(); });
}

Rat StepFn::ess_sup_abs() const {
  Rat m(0);
  for (const Rat& v : values_) m = max(m, v.abs());
  return m;
}

StepFn StepFn::abs() const {
  std::vector<Rat> vals;
  vals.reserve(values_.size());
  for (const Rat& v : values_) vals.push_back(v.abs());
  return StepFn(domain_, breakpoints_, std::move(vals));
}

StepFn StepFn::scaled(const Rat& c) const {
  std::vector<Rat> vals;
  vals.reserve(values_.size());
  for (const Rat& v : values_) vals.push_back(c * v);
  return StepFn(domain_, breakpoints_, std::move(vals));
}

StepFn StepFn::extended_to(const Interval& window) const {
  if (!window.contains(domain_)) throw Error(ErrorCode::WindowOutsideDomain, "window must contain domain");
  std::vector<Rat> bps;
  std::vector<Rat> vals;
  vals.push_back(Rat(0));
  if (window.lo < domain_.lo) {
    bps.push_back(domain_.lo);
    vals.push_back(values_.front());
  } else {
    vals.back() = values_.front();
  }
  for (size_t i = 0; i < breakpoints_.size(); ++i) {
    bps.push_back(breakpoints_[i]);
    vals.push_back(values_[i + 1]);
  }
  if (domain_.hi < window.hi) {
    bps.push_back(domain_.hi);
    vals.push_back(Rat(0));
  }
  return StepFn(window, std::move(bps), std::move(vals));
}

bool operator==(const StepFn& a, const StepFn& b) {
  return a.domain_ == b.domain_ && a.breakpoints_ == b.breakpoints_ && a.values_ == b.values_;
}

Rat integral_abs(const StepFn& f, const Interval& window) {
  if (!f.domain().contains(window))
    throw Error(ErrorCode::WindowOutsideDomain, "integration window outside domain");
  auto k = f.knots();
  Rat total(0);
  for (size_t i = 0; i + 1 < k.size(); ++i) {
    const Rat lo = max(k[i], window.lo);
    const Rat hi = min(k[i + 1], window.hi);
    if (lo < hi) total += f.piece_value(i).abs() * (hi - lo);
  }
  return total;
}

Rat integral_abs(const StepFn& f) { return integral_abs(f, f.domain()); }

Rat integral(const StepFn& f) {
  auto k = f.knots();
  Rat total(0);
  for (size_t i = 0; i + 1 < k.size(); ++i) total += f.piece_value(i) * (k[i + 1] - k[i]);
  return total;
}

Rat lp_inner_sum(const StepFn& f, unsigned p) {
  auto k = f.knots();
  Rat total(0);
  for (size_t i = 0; i + 1 < k.size(); ++i)
    total += f.piece_value(i).pow_uint(p) * (k[i + 1] - k[i]);
  return total;
}

double lp_norm(const StepFn& f, const Rat& p) {
  if (p < Rat(1)) throw Error(ErrorCode::InvalidExponent, "need p >= 1");
  double pd = p.to_double();
  if (p.is_integer() && pd < 64.0) {
    Rat s = lp_inner_sum(f, static_cast<unsigned>(pd));
    return std::pow(s.to_double(), 1.0 / pd);
  }
  auto k = f.knots();
  double total = 0.0;
  for (size_t i = 0; i + 1 < k.size(); ++i) {
    double v = f.piece_value(i).abs().to_double();
    total += std::pow(v, pd) * (k[i + 1] - k[i]).to_double();
  }
  return std::pow(total, 1.0 / pd);
}

Rat variation(const StepFn& f) {
  Rat total(0);
  const auto& v = f.values();
  for (size_t i = 0; i + 1 < v.size(); ++i) total += (v[i + 1] - v[i]).abs();
  return total;
}

Rat bv_norm(const StepFn& f) { return integral_abs(f) + variation(f); }

Rat canonical_at(const StepFn& f, const Rat& x) {
  if (!f.domain().contains(x)) throw Error(ErrorCode::OutsideDomain, "point outside domain");
  const auto& bps = f.breakpoints();
  size_t i = f.piece_index(x);
  if (i < bps.size() && x == bps[i]) return max(f.piece_value(i), f.piece_value(i + 1));
  return f.piece_value(i);
}

RearrangedFn rearrangement(const StepFn& f) {
  auto k = f.knots();
  std::vector<std::pair<Rat, Rat>> pieces;  // (|value|, length)
  pieces.reserve(f.piece_count());
  for (size_t i = 0; i + 1 < k.size(); ++i)
    pieces.emplace_back(f.piece_value(i).abs(), k[i + 1] - k[i]);
  std::sort(pieces.begin(), pieces.end(),
            [](const auto& a, const auto& b) { return b.first < a.first; });
  const Rat total_len = f.domain().length();
  std::vector<Rat> bps;
  std::vector<Rat> vals;
  Rat pos(0);
  for (auto& [v, len] : pieces) {
    if (!vals.empty()) bps.push_back(pos);
    vals.push_back(v);
    pos += len;
  }
  StepFn g(Interval(Rat(0), total_len), std::move(bps), std::move(vals));
  return RearrangedFn{std::move(g)};
}

Rat RearrangedFn::at(const Rat& t) const {
  if (t < Rat(0) || fn.domain().hi <= t) throw Error(ErrorCode::OutsideDomain, "t outside [0, length)");
  // Right-continuous: at an internal knot the value of the piece starting there.
  const auto& bps = fn.breakpoints();
  size_t lo = 0, hi = bps.size();
  while (lo < hi) {
    size_t mid = (lo + hi) / 2;
    if (t < bps[mid]) hi = mid; else lo = mid + 1;
  }
  return fn.piece_value(lo);
}

std::pair<StepFn, StepFn> pos_neg_parts(const StepFn& f) {
  std::vector<Rat> pos, neg;
  pos.reserve(f.piece_count());
  neg.reserve(f.piece_count());
  for (const Rat& v : f.values()) {
    if (v.sign() >= 0) {
      pos.push_back(v);
      neg.push_back(Rat(0));
    } else {
      pos.push_back(Rat(0));
      neg.push_back(-v);
    }
  }
  return {StepFn(f.domain(), f.breakpoints(), std::move(pos)),
          StepFn(f.domain(), f.breakpoints(), std::move(neg))};
}

Interval support_hull(const StepFn& f) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroFunction, "zero function has empty support");
  auto k = f.knots();
  std::optional<Rat> lo, hi;
  for (size_t i = 0; i + 1 < k.size(); ++i) {
    if (!f.piece_value(i).is_zero()) {
      if (!lo) lo = k[i];
      hi = k[i + 1];
    }
  }
  return Interval(*lo, *hi);
}

Interval support_neighborhood(const StepFn& f, const Rat& R, const Interval& ambient) {
  if (R.sign() <= 0) throw Error(ErrorCode::NonPositiveR, "need R > 0");
  Interval hull = support_hull(f);
  return Interval(max(hull.lo - R, ambient.lo), min(hull.hi + R, ambient.hi));
}

Interval support_neighborhood(const StepFn& f, const Rat& R) {
  if (R.sign() <= 0) throw Error(ErrorCode::NonPositiveR, "need R > 0");
  Interval hull = support_hull(f);
  return Interval(hull.lo - R, hull.hi + R);
}

Rat support_union_length(const StepFn& f, const Rat& R) {
  if (R.sign() <= 0) throw Error(ErrorCode::NonPositiveR, "need R > 0");
  auto k = f.knots();
  // Collect support pieces dilated by R, then merge overlaps.
  std::vector<std::pair<Rat, Rat>> segs;
  for (size_t i = 0; i + 1 < k.size(); ++i)
    if (!f.piece_value(i).is_zero()) segs.emplace_back(k[i] - R, k[i + 1] + R);
  if (segs.empty()) return Rat(0);
  Rat total(0);
  Rat cur_lo = segs[0].first, cur_hi = segs[0].second;
  for (size_t i = 1; i < segs.size(); ++i) {
    if (segs[i].first <= cur_hi) {
      cur_hi = max(cur_hi, segs[i].second);
    } else {
      total += cur_hi - cur_lo;
      cur_lo = segs[i].first;
      cur_hi = segs[i].second;
    }
  }
  total += cur_hi - cur_lo;
  return total;
}

Rat distribution_above(const StepFn& f, const Rat& t) {
  auto k = f.knots();
  Rat total(0);
  for (size_t i = 0; i + 1 < k.size(); ++i)
    if (f.piece_value(i).abs() > t) total += k[i + 1] - k[i];
  return total;
}

StepFn add(const StepFn& f, const StepFn& g) {
  if (!(f.domain() == g.domain())) throw Error(ErrorCode::WindowOutsideDomain, "domains differ");
  std::vector<Rat> bps;
  std::merge(f.breakpoints().begin(), f.breakpoints().end(), g.breakpoints().begin(),
             g.breakpoints().end(), std::back_inserter(bps));
  bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
  std::vector<Rat> vals;
  vals.reserve(bps.size() + 1);
  Rat probe = bps.empty() ? f.domain().midpoint() : (f.domain().lo + bps.front()) / Rat(2);
  vals.push_back(f.piece_value(f.piece_index(probe)) + g.piece_value(g.piece_index(probe)));
  for (size_t i = 0; i < bps.size(); ++i) {
    Rat next_hi = (i + 1 < bps.size()) ? bps[i + 1] : f.domain().hi;
    probe = (bps[i] + next_hi) / Rat(2);
    vals.push_back(f.piece_value(f.piece_index(probe)) + g.piece_value(g.piece_index(probe)));
  }
  return StepFn(f.domain(), std::move(bps), std::move(vals));
}

}  // namespace maxbv

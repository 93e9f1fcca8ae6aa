#include "maxbv/maximal.hpp"

namespace maxbv {

MaxEvaluator::MaxEvaluator(const StepFn& f, std::optional<Rat> cap)
    : absf_(f.abs()), cap_(std::move(cap)) {
  if (cap_ && cap_->sign() <= 0) throw Error(ErrorCode::NonPositiveR, "need R > 0");
  knots_ = absf_.knots();
  prefix_.reserve(knots_.size());
  prefix_.push_back(Rat(0));
  for (size_t i = 0; i + 1 < knots_.size(); ++i)
    prefix_.push_back(prefix_.back() + absf_.piece_value(i) * (knots_[i + 1] - knots_[i]));
}

size_t MaxEvaluator::knot_upper_bound(const Rat& x) const {
  size_t lo = 0, hi = knots_.size();
  while (lo < hi) {
    size_t mid = (lo + hi) / 2;
    if (x < knots_[mid]) hi = mid; else lo = mid + 1;
  }
  return lo;
}

Rat MaxEvaluator::integral_to(const Rat& x) const {
  if (!absf_.domain().contains(x)) throw Error(ErrorCode::OutsideDomain, "point outside domain");
  size_t j = knot_upper_bound(x);  // knots_[j-1] <= x
  size_t i = j - 1;
  if (i + 1 >= knots_.size()) return prefix_.back();
  return prefix_[i] + absf_.piece_value(i) * (x - knots_[i]);
}

namespace {

struct Best {
  bool has = false;
  Rat value;
  Rat a, b;

  void consider(const Rat& value_in, const Rat& a_in, const Rat& b_in) {
    if (!has) {
      has = true;
      value = value_in; a = a_in; b = b_in;
      return;
    }
    if (value_in > value) {
      value = value_in; a = a_in; b = b_in;
      return;
    }
    if (value_in == value) {
      Rat len_in = b_in - a_in;
      Rat len = b - a;
      if (len_in < len || (len_in == len && a_in < a)) { a = a_in; b = b_in; }
    }
  }
};

}  // namespace

MaxQueryResult MaxEvaluator::eval(const Rat& x) const {
  const Interval& dom = absf_.domain();
  if (!dom.contains(x)) throw Error(ErrorCode::OutsideDomain, "query point outside domain");

  const Rat Fx = integral_to(x);
  Best best;
  // Right-sided: b over knots in (x, x+R], then the cap point x+R itself.
  {
    size_t j = knot_upper_bound(x);
    for (; j < knots_.size(); ++j) {
      const Rat& b = knots_[j];
      if (cap_ && b - x > *cap_) break;
      best.consider((prefix_[j] - Fx) / (b - x), x, b);
    }
    if (cap_ && j < knots_.size()) {
      const Rat b = x + *cap_;
      if (x < b && b < dom.hi) best.consider((integral_to(b) - Fx) / *cap_, x, b);
    }
  }
  // Left-sided: a over knots in [x-R, x), then the cap point x-R.
  {
    size_t j = knot_upper_bound(x);
    // last knot strictly below x
    size_t i = j;
    while (i > 0 && knots_[i - 1] == x) --i;
    bool capped = false;
    while (i > 0) {
      const Rat& a = knots_[i - 1];
      if (cap_ && x - a > *cap_) { capped = true; break; }
      best.consider((Fx - prefix_[i - 1]) / (x - a), a, x);
      --i;
    }
    if (capped) {
      const Rat a = x - *cap_;
      if (dom.lo < a) best.consider((Fx - integral_to(a)) / *cap_, a, x);
    }
  }

  // Shrinking-interval limit: the canonical value of |f| at x. For step
  // functions a one-sided candidate inside the adjacent piece already attains
  // it, so this can tie but never win strictly.
  const Rat point = canonical_at(absf_, x);
  if (!best.has || point > best.value) {
    Interval w = (x < dom.hi) ? Interval(x, min(knots_[knot_upper_bound(x)], cap_ ? x + *cap_ : dom.hi))
                              : Interval(knots_[knots_.size() - 2], x);
    return MaxQueryResult{point, w, true};
  }
  return MaxQueryResult{best.value, Interval(best.a, best.b), false};
}

MaxQueryResult maximal_eval(const StepFn& f, const Rat& x, const std::optional<Rat>& R) {
  return MaxEvaluator(f, R).eval(x);
}

}  // namespace maxbv

#pragma once

#include <cmath>
#include <vector>

#include "maxbv/maximal.hpp"

namespace maxbv::testing {

struct GridSup {
  Rat value;
  Rat a, b;
  bool has = false;
};

/// Independent enumeration oracle: sup of |f|-averages over intervals with
/// both endpoints on the absolute 2^-k grid, containing x, length <= R.
/// The pair scan runs in binary64; the winning pair (and the warm-start pair
/// from a coarser grid, which stays on the refined grid) is then re-evaluated
/// exactly, so the returned value is an exact average over an admissible grid
/// pair, hence a certified lower bound of the true sup.
inline GridSup brute_force_grid_sup(const StepFn& f, const Rat& x, const std::optional<Rat>& R,
                                    int k, const GridSup* warm = nullptr) {
  const Interval& dom = f.domain();
  MaxEvaluator ev(f, std::nullopt);  // exact antiderivative of |f|
  const Rat h = Rat::pow2(-k);

  // integer grid indices j with dom.lo <= j*h <= dom.hi and extra bounds
  auto ceil_idx = [&](const Rat& v) {
    double d = (v / h).to_double();
    long j = static_cast<long>(std::ceil(d - 1e-12));
    while (Rat(j) * h < v) ++j;
    while (Rat(j - 1) * h >= v) --j;
    return j;
  };
  auto floor_idx = [&](const Rat& v) {
    double d = (v / h).to_double();
    long j = static_cast<long>(std::floor(d + 1e-12));
    while (Rat(j) * h > v) --j;
    while (Rat(j + 1) * h <= v) ++j;
    return j;
  };

  const Rat a_min_r = R ? max(dom.lo, x - *R) : dom.lo;
  const Rat b_max_r = R ? min(dom.hi, x + *R) : dom.hi;
  const long a_lo = ceil_idx(a_min_r), a_hi = floor_idx(x);
  const long b_lo = ceil_idx(x), b_hi = floor_idx(b_max_r);

  std::vector<double> Fb(b_hi - b_lo + 1);
  for (long j = b_lo; j <= b_hi; ++j) Fb[j - b_lo] = ev.integral_to(Rat(j) * h).to_double();

  // exact integer cap on jb - ja: largest s with s*h <= R
  long cap_steps = 0;
  if (R) {
    cap_steps = static_cast<long>(std::floor((*R / h).to_double() + 0.5));
    while (Rat(cap_steps) * h > *R) --cap_steps;
    while (Rat(cap_steps + 1) * h <= *R) ++cap_steps;
  }

  double best = -1;
  long best_a = 0, best_b = 0;
  const double hd = h.to_double();
  for (long ja = a_lo; ja <= a_hi; ++ja) {
    const double Fa = ev.integral_to(Rat(ja) * h).to_double();
    const long jb_hi = R ? std::min(b_hi, ja + cap_steps) : b_hi;
    for (long jb = std::max(b_lo, ja + 1); jb <= jb_hi; ++jb) {
      const double avg = (Fb[jb - b_lo] - Fa) / ((jb - ja) * hd);
      if (avg > best) {
        best = avg;
        best_a = ja;
        best_b = jb;
      }
    }
  }

  GridSup out;
  if (best >= 0) {
    out.a = Rat(best_a) * h;
    out.b = Rat(best_b) * h;
    out.value = (ev.integral_to(out.b) - ev.integral_to(out.a)) / (out.b - out.a);
    out.has = true;
  }
  if (warm && warm->has) {
    Rat wv = (ev.integral_to(warm->b) - ev.integral_to(warm->a)) / (warm->b - warm->a);
    if (!out.has || wv > out.value) {
      out.value = wv;
      out.a = warm->a;
      out.b = warm->b;
      out.has = true;
    }
  }
  return out;
}

}  // namespace maxbv::testing

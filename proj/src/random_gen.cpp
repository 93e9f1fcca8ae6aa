#include "maxbv/random_gen.hpp"

#include <algorithm>
#include <set>

namespace maxbv {

uint64_t mix_seed(uint64_t seed, const std::string& tag) {
  uint64_t h = 1469598103934665603ull ^ seed;
  for (unsigned char c : tag) {
    h ^= c;
    h *= 1099511628211ull;  // FNV-1a
  }
  return h;
}

StepFn random_stepfn(uint64_t seed, int max_pieces, const Rat& vmin, const Rat& vmax,
                     const Interval& domain) {
  if (max_pieces < 1) throw Error(ErrorCode::UsageError, "need max_pieces >= 1");
  Rng rng(seed);
  const int pieces = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(max_pieces)));
  std::set<long> cuts;
  while (static_cast<int>(cuts.size()) < pieces - 1) cuts.insert(rng.range(1, 1023));
  std::vector<Rat> bps;
  const Rat len = domain.length();
  for (long c : cuts) bps.push_back(domain.lo + len * Rat(c, 1024));
  std::vector<Rat> vals;
  const Rat span = vmax - vmin;
  for (int i = 0; i < pieces; ++i)
    vals.push_back(vmin + span * Rat(rng.range(0, 256), 256));
  return StepFn(domain, std::move(bps), std::move(vals));
}

StepFn random_stepfn_supported(uint64_t seed, int max_pieces, const Rat& vmax,
                               const Interval& domain, const Rat& margin) {
  Interval core(domain.lo + margin, domain.hi - margin);
  StepFn inner = random_stepfn(seed, max_pieces, Rat(0), vmax, core);
  // Force zero end pieces so the support stays inside the core.
  std::vector<Rat> vals = inner.values();
  if (vals.size() == 1) {
    // keep a single bump in the middle third instead of a constant
    Rat a = core.lo + core.length() / Rat(3);
    Rat b = core.hi - core.length() / Rat(3);
    StepFn bump = StepFn::indicator(core, Interval(a, b), vals[0].is_zero() ? Rat(1) : vals[0]);
    return bump.extended_to(domain);
  }
  vals.front() = Rat(0);
  vals.back() = Rat(0);
  StepFn trimmed(core, inner.breakpoints(), std::move(vals));
  if (trimmed.is_zero()) {
    Rat a = core.lo + core.length() / Rat(3);
    Rat b = core.hi - core.length() / Rat(3);
    trimmed = StepFn::indicator(core, Interval(a, b), Rat(1));
  }
  return trimmed.extended_to(domain);
}

GridFn2D random_gridfn(uint64_t seed, const Rect& rect, int nx, int ny, double vmax) {
  Rng rng(seed);
  Eigen::ArrayXXd a(nx, ny);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      a(i, j) = vmax * static_cast<double>(rng.below(257)) / 256.0;
  return GridFn2D(rect, nx, ny, std::move(a));
}

}  // namespace maxbv

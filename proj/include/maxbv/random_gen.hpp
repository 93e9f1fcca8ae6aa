#pragma once

#include <cstdint>
#include <string>

#include "maxbv/grid2d.hpp"
#include "maxbv/step_fn.hpp"

namespace maxbv {

/// splitmix64: tiny, fully specified, identical on every platform.
class Rng {
public:
  explicit Rng(uint64_t seed) : state_(seed) {}
  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  uint64_t below(uint64_t n) { return n == 0 ? 0 : next() % n; }
  long range(long lo, long hi) { return lo + static_cast<long>(below(static_cast<uint64_t>(hi - lo + 1))); }

private:
  uint64_t state_;
};

uint64_t mix_seed(uint64_t seed, const std::string& tag);

/// Reproducible dyadic-valued step function with at most max_pieces pieces.
/// Breakpoints are drawn on a 2^-10 subdivision of the domain, values on a
/// 2^-8 subdivision of [vmin, vmax].
StepFn random_stepfn(uint64_t seed, int max_pieces, const Rat& vmin, const Rat& vmax,
                     const Interval& domain);

/// Nonnegative random step function supported inside [domain.lo + margin,
/// domain.hi - margin], zero near the edges.
StepFn random_stepfn_supported(uint64_t seed, int max_pieces, const Rat& vmax,
                               const Interval& domain, const Rat& margin);

GridFn2D random_gridfn(uint64_t seed, const Rect& rect, int nx, int ny, double vmax);

}  // namespace maxbv

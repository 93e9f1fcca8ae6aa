#include "maxbv/orlicz.hpp"

#include <cmath>

namespace maxbv {

ModularPieces modular_pieces(const StepFn& f) {
  ModularPieces out;
  auto k = f.knots();
  out.reserve(f.piece_count());
  for (size_t i = 0; i + 1 < k.size(); ++i) {
    double v = f.piece_value(i).abs().to_double();
    if (v > 0) out.emplace_back(v, (k[i + 1] - k[i]).to_double());
  }
  return out;
}

ModularPieces modular_pieces(const GridFn2D& g) {
  ModularPieces out;
  const double area = g.cell_area();
  out.reserve(static_cast<size_t>(g.nx()) * g.ny());
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      double v = std::abs(g.values()(i, j));
      if (v > 0) out.emplace_back(v, area);
    }
  return out;
}

double orlicz_modular(const ModularPieces& pieces, double t, double r) {
  if (t <= 0) throw Error(ErrorCode::NonPositiveT, "need t > 0");
  if (r < 1) throw Error(ErrorCode::InvalidExponent, "need r >= 1");
  long double total = 0;
  for (const auto& [v, len] : pieces) {
    if (v <= t) continue;  // log+ vanishes
    long double u = static_cast<long double>(v) / t;
    total += u * std::pow(std::log(u), static_cast<long double>(r)) * len;
  }
  return static_cast<double>(total);
}

double orlicz_modular(const StepFn& f, double t, double r) {
  return orlicz_modular(modular_pieces(f), t, r);
}
double orlicz_modular(const GridFn2D& g, double t, double r) {
  return orlicz_modular(modular_pieces(g), t, r);
}

double luxemburg_norm(const ModularPieces& pieces, double r, double tol) {
  if (tol <= 0) throw Error(ErrorCode::NonPositiveT, "need tol > 0");
  if (pieces.empty()) return 0.0;
  double ess = 0;
  for (const auto& [v, len] : pieces) ess = std::max(ess, v);
  if (ess == 0) return 0.0;

  // modular(ess) = 0 <= 1; halve until modular > 1 to bracket the norm.
  double hi = ess;
  double lo = ess;
  int guard = 0;
  while (orlicz_modular(pieces, lo, r) <= 1.0) {
    lo *= 0.5;
    if (++guard > 2000) throw Error(ErrorCode::NoConvergence, "no lower bracket found");
  }
  // Invariant: modular(hi) <= 1 < modular(lo).
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    double m = orlicz_modular(pieces, mid, r);
    if (m <= 1.0) hi = mid; else lo = mid;
    double mh = orlicz_modular(pieces, hi, r);
    if (mh >= 1.0 - tol && mh <= 1.0) return hi;
  }
  throw Error(ErrorCode::NoConvergence, "bisection budget exhausted");
}

double luxemburg_norm(const StepFn& f, double r, double tol) {
  return luxemburg_norm(modular_pieces(f), r, tol);
}
double luxemburg_norm(const GridFn2D& g, double r, double tol) {
  return luxemburg_norm(modular_pieces(g), r, tol);
}

CheckReport check_embedding(const GridFn2D& g, double r, int d, double tol) {
  CheckReport rep;
  rep.claim_id = "orlicz.embedding";
  if (d != 2) throw Error(ErrorCode::UsageError, "only d = 2 has a grid backend");
  if (r < 1) throw Error(ErrorCode::InvalidExponent, "need r >= 1");

  auto pieces = modular_pieces(g);
  double lux = pieces.empty() ? 0.0 : luxemburg_norm(pieces, r, 1e-12);
  double l2 = 0;
  for (const auto& [v, len] : pieces) l2 += v * v * len;
  l2 = std::sqrt(l2);
  const double bound = std::pow(r, r / 2.0) * l2;

  rep.measure("luxemburg", lux);
  rep.measure("l2", l2);
  rep.measure("r", r);
  rep.bound = bound;
  rep.margin = bound + tol - lux;
  rep.passed = rep.margin >= 0;
  rep.provenance = {"bisection", "grid"};
  return rep;
}

}  // namespace maxbv

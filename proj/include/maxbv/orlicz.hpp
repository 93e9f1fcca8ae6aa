#pragma once

#include "maxbv/grid2d.hpp"
#include "maxbv/report.hpp"
#include "maxbv/step_fn.hpp"

namespace maxbv {

/// Pieces of a function with piecewise-constant modulus: (|value|, measure).
using ModularPieces = std::vector<std::pair<double, double>>;

ModularPieces modular_pieces(const StepFn& f);
ModularPieces modular_pieces(const GridFn2D& g);

/// integral of (|g|/t) (log+ |g|/t)^r over the domain, in long double per piece.
double orlicz_modular(const ModularPieces& pieces, double t, double r);
double orlicz_modular(const StepFn& f, double t, double r);
double orlicz_modular(const GridFn2D& g, double t, double r);

/// Luxemburg norm inf{t > 0 : modular(t) <= 1} by bracketing + bisection;
/// returns t with modular(t) in [1 - tol, 1] (0 for the zero function).
double luxemburg_norm(const ModularPieces& pieces, double r, double tol);
double luxemburg_norm(const StepFn& f, double r, double tol);
double luxemburg_norm(const GridFn2D& g, double r, double tol);

/// d = 2 embedding: ||g||_{L(log+L)^r} <= r^(r/2) ||g||_2 + tol.
CheckReport check_embedding(const GridFn2D& g, double r, int d, double tol);

}  // namespace maxbv

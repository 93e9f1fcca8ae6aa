#pragma once

#include "maxbv/maximal.hpp"

namespace maxbv {

struct ProfileOptions {
  double tol = 1e-6;
  /// Refinement depth cap; <= 0 means "use MAXBV_MAX_DEPTH or 24".
  int max_depth = 0;
  bool track_energy = false;
  double energy_tol = 0;  // defaults to tol
  size_t max_nodes = 4'000'000;
};

int default_max_depth();

/// Exact node values of M_R f on an adaptively refined node set.
///
/// The initial nodes are the combinatorial kink candidates (knots and knots
/// +- R); between them M_R f is a max of finitely many monotone smooth
/// candidates, so a cell whose endpoint and midpoint values coincide is
/// exactly constant and needs no refinement. Other cells are bisected,
/// largest pending midpoint correction first, until the pending corrections
/// to the trapezoid L1 estimate and to the grid variation both drop below
/// tol (and likewise for the difference-quotient energy when tracked).
struct SampledProfile {
  std::vector<Rat> nodes;
  std::vector<Rat> values;
  int refinement_depth = 0;

  /// Certified lower bound of |D M_R f|(domain): grid variation, floor-summed.
  Rat variation_lower;
  double l1_estimate = 0;
  /// Sum of difference-quotient energies (dv)^2/dx (lower bound of ||D M_R f||_2^2).
  double energy = 0;

  double l1_error_estimate = 0;
  double var_error_estimate = 0;
  double energy_error_estimate = 0;
  bool converged = true;

  double value_at_node_d(size_t i) const { return values[i].to_double(); }
};

SampledProfile maximal_profile(const StepFn& f, const std::optional<Rat>& R,
                               const ProfileOptions& opts = {});

/// Evaluate an existing evaluator on a fixed, sorted node set (no refinement);
/// used when several operators must share one grid.
SampledProfile profile_on_nodes(const MaxEvaluator& ev, const std::vector<Rat>& nodes);

/// Kink candidates for f with reach R: knots and knots +- R, clipped, sorted, deduped.
std::vector<Rat> kink_nodes(const StepFn& f, const std::optional<Rat>& R);

}  // namespace maxbv

#pragma once

#include "maxbv/profile.hpp"
#include "maxbv/report.hpp"

namespace maxbv {

/// ||M_R f||_L1(I) <= 3(1+2log+ R)||f||_1 + 3 |D|f||(I)  and
/// |D M_R f|(I) <= |D|f||(I), both with slack tol.
CheckReport check_bd_bound(const StepFn& f, const Rat& R, double tol);

/// (Mf)*(t) <= 2 ||f||_1 / t + tol at each threshold, via the profile's upper
/// step majorant (safe: between profile nodes M is a max of monotone
/// candidates, so the cell sup sits at an endpoint).
CheckReport check_weak_type(const StepFn& f, const std::vector<Rat>& thresholds, double tol);

/// ||f||_2^2 <= min{ (3(1+2log+R))^2/lambda(N) ||f||_BV^2 + lambda(N)^2/2 E,
///                   lambda(N)^2 E } + tol, E = difference-quotient energy of M_R f.
CheckReport check_poincare(const StepFn& f, const Rat& R, double tol);

/// chi of [-left_len, 0] union of blocks [2^-n, 2^-n + 2^-n-1], n = 0..n_max.
/// Variation is exactly 2(n_max + 2); L1 mass is left_len + 1 - 2^-(n_max+1).
StepFn dyadic_counterexample(int n_max, const Rat& left_len);

/// For R in (0,1): V(M_R f) stays bounded by 2 + 2(N+1) + sum_{n>N} 2^{-n+2}/R
/// (N minimal with 2^{-N+1} < R) while V(f) = 2(n_max+2) grows linearly; also
/// checks stability of V(M_R f) between truncations 10 and n_max.
CheckReport check_counterexample(int n_max, const Rat& R, double tol);

/// ||M_{a_n} f - |f|||_1 non-increasing (within mono_tol) and small at the last
/// scale; V(|f|) <= min_n V(M_{a_n} f) + var_tol (semicontinuity direction).
CheckReport check_convergence(const StepFn& f, const std::vector<Rat>& scales,
                              double mono_tol, double var_tol);

/// Rows (R, ||M_R f||_1, ratio to 1+log+R); asserts the ratio envelope
/// max/min < 10. The window is enlarged to support + [-R-1, R+1] per row.
Table growth_table_1d(const StepFn& f, const std::vector<Rat>& Rs, CheckReport* report);

double log_plus(double x);

}  // namespace maxbv

#pragma once

#include <Eigen/Core>
#include <optional>
#include <vector>

#include "maxbv/report.hpp"
#include "maxbv/step_fn.hpp"

namespace maxbv {

struct Rect {
  double x_lo, x_hi, y_lo, y_hi;
};

/// Binary64 values on a uniform rectangular grid, interpreted as piecewise
/// constant on cells. values(i, j): i indexes x (0..nx-1), j indexes y.
class GridFn2D {
public:
  GridFn2D(Rect rect, int nx, int ny, Eigen::ArrayXXd values);
  static GridFn2D zeros(Rect rect, int nx, int ny);

  const Rect& rect() const { return rect_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  const Eigen::ArrayXXd& values() const { return values_; }
  Eigen::ArrayXXd& values() { return values_; }

  double hx() const { return (rect_.x_hi - rect_.x_lo) / nx_; }
  double hy() const { return (rect_.y_hi - rect_.y_lo) / ny_; }
  double cell_center_x(int i) const { return rect_.x_lo + (i + 0.5) * hx(); }
  double cell_center_y(int j) const { return rect_.y_lo + (j + 0.5) * hy(); }
  double cell_area() const { return hx() * hy(); }

  double l1_norm() const { return values_.abs().sum() * cell_area(); }

private:
  Rect rect_;
  int nx_, ny_;
  Eigen::ArrayXXd values_;
};

GridFn2D grid_new(const Rect& rect, int nx, int ny, const std::vector<double>& row_major);

/// Local uncentered directional maximal operator along axis 1 (x) or 2 (y),
/// segment length capped by T (nullopt = unrestricted). Each grid line is
/// lifted to an exact rational step function and the 1D engine evaluates the
/// sup at cell centers; lines with too many distinct pieces fall back to a
/// binary64 candidate scan (same candidate set, one rounding per value).
GridFn2D directional_maximal(const GridFn2D& g, int axis, std::optional<double> T);

/// Axis-2 pass applied to the cell-center resampling of the axis-1 pass.
GridFn2D iterated_maximal(const GridFn2D& g, std::optional<double> T);

/// Sup of averages over grid-aligned-height rectangles with diameter <= T:
/// for every admissible row window the column-averaged line goes through the
/// 1D engine with width cap sqrt(T^2 - height^2). A lower bound of the
/// continuum operator, converging under refinement.
GridFn2D strong_maximal(const GridFn2D& g, std::optional<double> T);

/// Strong operator restricted to (nearest-grid) squares, side <= R/sqrt(2).
GridFn2D square_maximal(const GridFn2D& g, std::optional<double> R);

struct TVResult {
  double tv = 0;
  double coarea_tv = 0;
  long levels_used = 0;
};

/// Anisotropic (l1) discrete total variation over interior edges, plus the
/// threshold-sum of level-set perimeters; the two agree exactly (up to
/// rounding) when thresholds default to all distinct values.
TVResult discrete_tv(const GridFn2D& g, const std::vector<double>* thresholds = nullptr);

/// Closed-form continuum total variation of M^1 f_delta for the frozen
/// blow-up policy: window [-X, X]^2, block [0, delta]^2, interior edges only.
double blowup_tv_oracle(double delta, double X);

struct BlowupResult {
  Table table;
  CheckReport report;
};

/// Runs the corner-block family over the given deltas (descending dyadics):
/// grids [-1/2, 1/2]^2 with h = delta/strip_cells; asserts the strip profile
/// delta/x, the tv oracle band, and the ratio divergence for the directional,
/// iterated, and strong variants.
BlowupResult blowup_experiment(const std::vector<Rat>& deltas, double R, int strip_cells = 8);

Table growth_table_2d(const GridFn2D& g, const std::vector<double>& Rs, CheckReport* report);

CheckReport convergence_2d(const GridFn2D& g, const std::vector<double>& scales);

}  // namespace maxbv

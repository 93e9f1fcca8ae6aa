#include "maxbv/grid2d.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <cstdio>
#include <limits>

#include "maxbv/maximal.hpp"

namespace maxbv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kExactCellLimit = 4096;  // grids up to this size use the all-rational path

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

/// Merged piece view of one grid line: edge offsets in cell units.
struct MergedLine {
  std::vector<int> edge;     // piece i spans [edge[i], edge[i+1]) cells
  std::vector<double> val;   // |value| per piece
  std::vector<double> pre;   // integral prefix at piece edges (offset units * h)

  void build(const double* vals, int n, double h) {
    edge.clear();
    val.clear();
    edge.push_back(0);
    val.push_back(std::abs(vals[0]));
    for (int i = 1; i < n; ++i) {
      double a = std::abs(vals[i]);
      if (a != val.back()) {
        edge.push_back(i);
        val.push_back(a);
      }
    }
    edge.push_back(n);
    pre.assign(edge.size(), 0.0);
    for (size_t p = 0; p + 1 < edge.size(); ++p)
      pre[p + 1] = pre[p] + val[p] * (edge[p + 1] - edge[p]) * h;
  }

  double integral_to(double x, double h) const {
    // x in [0, n*h]
    double cells = x / h;
    size_t lo = 0, hi = edge.size() - 1;
    while (lo + 1 < hi) {
      size_t mid = (lo + hi) / 2;
      if (cells < edge[mid]) hi = mid; else lo = mid;
    }
    return pre[lo] + val[lo] * (x - edge[lo] * h);
  }
};

/// One-sided candidate scan in binary64 over the merged pieces: for each cell
/// center the sup of one-sided averages is attained at a piece edge or at the
/// distance-cap endpoint; the two one-sided sups majorize every two-sided
/// average (convex combination).
void line_maximal_prescan(const double* vals, int n, double h, double cap, double* out) {
  MergedLine m;
  m.build(vals, n, h);
  const size_t np = m.val.size();
  const double len = n * h;
  size_t piece = 0;
  for (int k = 0; k < n; ++k) {
    const double x = (k + 0.5) * h;
    while (piece + 1 < np && m.edge[piece + 1] <= k) ++piece;
    const double Sx = m.pre[piece] + m.val[piece] * (x - m.edge[piece] * h);
    double best = m.val[piece];  // shrinking-interval candidate
    // right
    for (size_t p = piece + 1; p < np + 1; ++p) {
      const double b = m.edge[p] * h;
      const double off = b - x;
      if (off > cap) {
        const double bc = x + cap;
        if (bc < len) best = std::max(best, (m.integral_to(bc, h) - Sx) / cap);
        break;
      }
      if (off > 0) best = std::max(best, (m.pre[p] - Sx) / off);
      if (p == np) break;
    }
    // left
    for (size_t q = piece + 1; q-- > 0;) {
      const double a = m.edge[q] * h;
      const double off = x - a;
      if (off > cap) {
        const double ac = x - cap;
        if (ac > 0) best = std::max(best, (Sx - m.integral_to(ac, h)) / cap);
        break;
      }
      if (off > 0) best = std::max(best, (Sx - m.pre[q]) / off);
    }
    out[k] = best;
  }
}

Rat rat_center(const Rat& lo, const Rat& h, int k) { return lo + h * Rat(2 * k + 1) / Rat(2); }

/// Exact per-line evaluation through the 1D rational engine.
void line_maximal_exact(const Rat& lo, const Rat& h, const double* vals, int n,
                        const std::optional<Rat>& cap, double* out) {
  std::vector<Rat> bps;
  std::vector<Rat> vs;
  vs.push_back(Rat::from_double(std::abs(vals[0])));
  for (int i = 1; i < n; ++i) {
    Rat v = Rat::from_double(std::abs(vals[i]));
    if (!(v == vs.back())) {
      bps.push_back(lo + h * Rat(i));
      vs.push_back(std::move(v));
    }
  }
  StepFn f(Interval(lo, lo + h * Rat(n)), std::move(bps), std::move(vs));
  MaxEvaluator ev(f, cap);
  for (int k = 0; k < n; ++k) out[k] = ev.eval(rat_center(lo, h, k)).value.to_double();
}

int count_merged(const double* vals, int n) {
  int c = 1;
  for (int i = 1; i < n; ++i)
    if (std::abs(vals[i]) != std::abs(vals[i - 1])) ++c;
  return c;
}

constexpr int kExactPieceLimit = 64;

void line_maximal(const Rat& lo, const Rat& h, const double* vals, int n,
                  std::optional<double> T, double* out) {
  if (T && count_merged(vals, n) > kExactPieceLimit) {
    line_maximal_prescan(vals, n, h.to_double(), *T, out);
    return;
  }
  if (!T && count_merged(vals, n) > kExactPieceLimit) {
    line_maximal_prescan(vals, n, h.to_double(), kInf, out);
    return;
  }
  std::optional<Rat> cap;
  if (T) cap = Rat::from_double(*T);
  line_maximal_exact(lo, h, vals, n, cap, out);
}

}  // namespace

GridFn2D::GridFn2D(Rect rect, int nx, int ny, Eigen::ArrayXXd values)
    : rect_(rect), nx_(nx), ny_(ny), values_(std::move(values)) {
  if (nx_ < 2 || ny_ < 2) throw Error(ErrorCode::BadShape, "need nx, ny >= 2");
  if (!(rect_.x_lo < rect_.x_hi) || !(rect_.y_lo < rect_.y_hi))
    throw Error(ErrorCode::BadShape, "rect must have positive extent");
  if (values_.rows() != nx_ || values_.cols() != ny_)
    throw Error(ErrorCode::BadShape, "values must be nx-by-ny");
  if (!values_.isFinite().all()) throw Error(ErrorCode::NonFiniteValue, "values must be finite");
}

GridFn2D GridFn2D::zeros(Rect rect, int nx, int ny) {
  if (nx < 2 || ny < 2) throw Error(ErrorCode::BadShape, "need nx, ny >= 2");
  return GridFn2D(rect, nx, ny, Eigen::ArrayXXd::Zero(nx, ny));
}

GridFn2D grid_new(const Rect& rect, int nx, int ny, const std::vector<double>& row_major) {
  if (nx < 2 || ny < 2) throw Error(ErrorCode::BadShape, "need nx, ny >= 2");
  if (row_major.size() != static_cast<size_t>(nx) * static_cast<size_t>(ny))
    throw Error(ErrorCode::BadShape, "values length must be nx*ny");
  Eigen::ArrayXXd a(nx, ny);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) a(i, j) = row_major[static_cast<size_t>(j) * nx + i];
  return GridFn2D(rect, nx, ny, std::move(a));
}

GridFn2D directional_maximal(const GridFn2D& g, int axis, std::optional<double> T) {
  if (axis != 1 && axis != 2) throw Error(ErrorCode::UsageError, "axis must be 1 or 2");
  if (T && *T <= 0) throw Error(ErrorCode::NonPositiveT, "need T > 0");
  const int nx = g.nx(), ny = g.ny();
  Eigen::ArrayXXd out(nx, ny);
  if (axis == 1) {
    const Rat lo = Rat::from_double(g.rect().x_lo);
    const Rat h = (Rat::from_double(g.rect().x_hi) - lo) / Rat(nx);
    std::vector<double> line(nx), res(nx);
    for (int j = 0; j < ny; ++j) {
      bool all_zero = true;
      for (int i = 0; i < nx; ++i) {
        line[i] = g.values()(i, j);
        if (line[i] != 0) all_zero = false;
      }
      if (all_zero) {
        for (int i = 0; i < nx; ++i) out(i, j) = 0;
        continue;
      }
      line_maximal(lo, h, line.data(), nx, T, res.data());
      for (int i = 0; i < nx; ++i) out(i, j) = res[i];
    }
  } else {
    const Rat lo = Rat::from_double(g.rect().y_lo);
    const Rat h = (Rat::from_double(g.rect().y_hi) - lo) / Rat(ny);
    std::vector<double> line(ny), res(ny);
    for (int i = 0; i < nx; ++i) {
      bool all_zero = true;
      for (int j = 0; j < ny; ++j) {
        line[j] = g.values()(i, j);
        if (line[j] != 0) all_zero = false;
      }
      if (all_zero) {
        for (int j = 0; j < ny; ++j) out(i, j) = 0;
        continue;
      }
      line_maximal(lo, h, line.data(), ny, T, res.data());
      for (int j = 0; j < ny; ++j) out(i, j) = res[j];
    }
  }
  return GridFn2D(g.rect(), nx, ny, std::move(out));
}

GridFn2D iterated_maximal(const GridFn2D& g, std::optional<double> T) {
  return directional_maximal(directional_maximal(g, 1, T), 2, T);
}

GridFn2D strong_maximal(const GridFn2D& g, std::optional<double> T) {
  if (T && *T <= 0) throw Error(ErrorCode::NonPositiveT, "need T > 0");
  const int nx = g.nx(), ny = g.ny();
  const double hx = g.hx(), hy = g.hy();
  const bool exact = static_cast<long>(nx) * ny <= kExactCellLimit;

  Eigen::ArrayXXd out = g.values().abs();  // shrinking-rectangle candidates

  // Column prefix sums over y (per x), so any row-window average is O(1).
  Eigen::ArrayXXd pre = Eigen::ArrayXXd::Zero(nx, ny + 1);
  for (int j = 0; j < ny; ++j) pre.col(j + 1) = pre.col(j) + g.values().col(j).abs();

  const Rat lo_x = Rat::from_double(g.rect().x_lo);
  const Rat h_x = (Rat::from_double(g.rect().x_hi) - lo_x) / Rat(nx);

  std::vector<double> colavg(nx), tmp(nx), run(nx);
  for (int j1 = 0; j1 < ny; ++j1) {
    std::fill(run.begin(), run.end(), 0.0);
    for (int j2 = ny - 1; j2 >= j1; --j2) {
      const double height = (j2 - j1 + 1) * hy;
      double cap = kInf;
      if (T) {
        if (height >= *T) {
          // Window too tall for any positive width; taller ones (smaller j2
          // in this descending loop) are handled in later iterations.
          continue;
        }
        cap = std::sqrt(*T * *T - height * height);
      }
      const double inv = 1.0 / (j2 - j1 + 1);
      bool all_zero = true;
      for (int i = 0; i < nx; ++i) {
        colavg[i] = (pre(i, j2 + 1) - pre(i, j1)) * inv;
        if (colavg[i] != 0) all_zero = false;
      }
      if (!all_zero) {
        if (exact) {
          std::optional<Rat> cap_r;
          if (T) {
            Rat t2 = Rat::from_double(*T).pow_uint(2);
            Rat h2 = Rat::from_double(height).pow_uint(2);
            Rat w = Rat::from_double(std::nextafter(cap, 0.0));
            while (w.pow_uint(2) + h2 > t2) w = w * Rat(1048575, 1048576);
            cap_r = w;
          }
          line_maximal_exact(lo_x, h_x, colavg.data(), nx, cap_r, tmp.data());
        } else {
          line_maximal_prescan(colavg.data(), nx, hx, cap, tmp.data());
        }
        for (int i = 0; i < nx; ++i) run[i] = std::max(run[i], tmp[i]);
      }
      for (int i = 0; i < nx; ++i) out(i, j2) = std::max(out(i, j2), run[i]);
    }
  }
  return GridFn2D(g.rect(), nx, ny, std::move(out));
}

GridFn2D square_maximal(const GridFn2D& g, std::optional<double> R) {
  if (R && *R <= 0) throw Error(ErrorCode::NonPositiveT, "need R > 0");
  const int nx = g.nx(), ny = g.ny();
  const double hx = g.hx(), hy = g.hy();
  const double max_side = R ? *R / std::sqrt(2.0) : kInf;

  Eigen::ArrayXXd out = g.values().abs();

  Eigen::ArrayXXd pre = Eigen::ArrayXXd::Zero(nx + 1, ny + 1);
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j)
      pre(i + 1, j + 1) = pre(i + 1, j) + pre(i, j + 1) - pre(i, j) + std::abs(g.values()(i, j));

  // out_cell[t] = max(in[clamp(t-w+1, 0) .. clamp(t, nb-1)]); clipped ranges
  // are prefixes/suffixes, interior ranges have exact length w.
  auto coverage_max = [](const std::vector<double>& in, int w, int ncell,
                         std::vector<double>& out) {
    const int nb = static_cast<int>(in.size());
    static thread_local std::vector<double> pre_max, suf_max, win;
    pre_max.assign(nb, 0);
    suf_max.assign(nb, 0);
    pre_max[0] = in[0];
    for (int t = 1; t < nb; ++t) pre_max[t] = std::max(pre_max[t - 1], in[t]);
    suf_max[nb - 1] = in[nb - 1];
    for (int t = nb - 2; t >= 0; --t) suf_max[t] = std::max(suf_max[t + 1], in[t]);
    const int we = std::min(w, nb);
    win.assign(nb - we + 1, 0);
    std::vector<int> dq(nb);
    int head = 0, tail = 0;
    for (int t = 0; t < nb; ++t) {
      while (tail > head && in[dq[tail - 1]] <= in[t]) --tail;
      dq[tail++] = t;
      if (dq[head] <= t - we) ++head;
      if (t >= we - 1) win[t - we + 1] = in[dq[head]];
    }
    out.assign(ncell, -kInf);
    for (int t = 0; t < ncell; ++t) {
      const int lo = std::max(0, t - w + 1);
      const int hi = std::min(nb - 1, t);
      if (lo > hi) continue;
      if (hi - lo + 1 == we) out[t] = win[lo];
      else if (lo == 0) out[t] = pre_max[hi];
      else out[t] = suf_max[lo];
    }
  };

  const int k_hi = static_cast<int>(std::min<double>(nx, std::floor(max_side / hx + 1e-12)));
  std::vector<double> colbuf, colcov_line, rowbuf, rowcov;
  for (int k = 1; k <= k_hi; ++k) {
    int m = std::max(1, static_cast<int>(std::lround(k * hx / hy)));
    if (m > ny) continue;
    const double side_x = k * hx, side_y = m * hy;
    if (R && side_x * side_x + side_y * side_y > *R * *R * (1.0 + 1e-12)) continue;
    const double inv_area = 1.0 / (static_cast<double>(k) * m);  // box holds value sums
    const int bx = nx - k + 1, by = ny - m + 1;
    // colcov(a, j) = best m-window box sum at x-offset a covering row j
    Eigen::ArrayXXd colcov(bx, ny);
    colbuf.resize(by);
    for (int a = 0; a < bx; ++a) {
      for (int b = 0; b < by; ++b)
        colbuf[b] = pre(a + k, b + m) - pre(a, b + m) - pre(a + k, b) + pre(a, b);
      coverage_max(colbuf, m, ny, colcov_line);
      for (int j = 0; j < ny; ++j) colcov(a, j) = colcov_line[j];
    }
    rowbuf.resize(bx);
    for (int j = 0; j < ny; ++j) {
      for (int a = 0; a < bx; ++a) rowbuf[a] = colcov(a, j);
      coverage_max(rowbuf, k, nx, rowcov);
      for (int i = 0; i < nx; ++i)
        if (rowcov[i] > -kInf) out(i, j) = std::max(out(i, j), rowcov[i] * inv_area);
    }
  }
  return GridFn2D(g.rect(), nx, ny, std::move(out));
}

TVResult discrete_tv(const GridFn2D& g, const std::vector<double>* thresholds) {
  const int nx = g.nx(), ny = g.ny();
  const double hx = g.hx(), hy = g.hy();
  TVResult r;

  double tv = 0, c = 0;
  auto kahan = [&](double term) {
    double y = term - c;
    double t = tv + y;
    c = (t - tv) - y;
    tv = t;
  };
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i + 1 < nx; ++i)
      kahan(hy * std::abs(g.values()(i + 1, j) - g.values()(i, j)));
  for (int j = 0; j + 1 < ny; ++j)
    for (int i = 0; i < nx; ++i)
      kahan(hx * std::abs(g.values()(i, j + 1) - g.values()(i, j)));
  r.tv = tv;

  // Coarea: descending activation sweep; the interior perimeter of {g > t} is
  // piecewise constant between distinct values.
  std::vector<std::pair<double, int>> cells;
  cells.reserve(static_cast<size_t>(nx) * ny);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) cells.emplace_back(g.values()(i, j), i + j * nx);
  std::sort(cells.begin(), cells.end(), [](const auto& a, const auto& b) { return a.first > b.first; });

  std::vector<char> active(static_cast<size_t>(nx) * ny, 0);
  double per = 0;
  double coarea = 0, cc = 0;
  auto kahan2 = [&](double term) {
    double y = term - cc;
    double t = coarea + y;
    cc = (t - coarea) - y;
    coarea = t;
  };
  auto activate = [&](int id) {
    int i = id % nx, j = id / nx;
    active[id] = 1;
    if (i > 0) per += active[id - 1] ? -hy : hy;
    if (i + 1 < nx) per += active[id + 1] ? -hy : hy;
    if (j > 0) per += active[id - nx] ? -hx : hx;
    if (j + 1 < ny) per += active[id + nx] ? -hx : hx;
  };

  if (thresholds && !thresholds->empty()) {
    std::vector<double> ts = *thresholds;
    std::sort(ts.begin(), ts.end(), std::greater<double>());
    size_t p = 0;
    while (p < cells.size() && cells[p].first > ts.front()) {
      activate(cells[p].second);
      ++p;
    }
    // segment [ts[q], ts[q-1]) weighted by per({g > ts[q]})
    for (size_t q = 1; q < ts.size(); ++q) {
      while (p < cells.size() && cells[p].first > ts[q]) {
        activate(cells[p].second);
        ++p;
      }
      kahan2(per * (ts[q - 1] - ts[q]));
    }
    r.levels_used = static_cast<long>(ts.size());
  } else {
    size_t p = 0;
    long levels = 0;
    double prev_v = 0;
    bool first = true;
    while (p < cells.size()) {
      double v = cells[p].first;
      if (!first) kahan2(per * (prev_v - v));
      while (p < cells.size() && cells[p].first == v) activate(cells[p++].second);
      prev_v = v;
      first = false;
      ++levels;
    }
    r.levels_used = levels;
  }
  r.coarea_tv = coarea;
  return r;
}

double blowup_tv_oracle(double delta, double X) {
  // Strip rows: M^1 = 1 on [0,d], d/x to the right, d/(d-x) to the left,
  // clipped to the window [-X, X]. Integrate the interior perimeter of the
  // level rectangles over t in (0, 1).
  const double d = delta;
  double total = 0;
  total += d * (1.0 - d / X);        // right vertical side, present for t > d/X
  total += d * (1.0 - d / (X + d));  // left vertical side, present for t > d/(X+d)
  total += 2.0 * d + 2.0 * d * std::log(X / d);  // top+bottom over right extent
  // top+bottom over left extent: min(d/t - d, X)
  total += 2.0 * X * d / (X + d) + 2.0 * d * std::log((X + d) / d) - 2.0 * d * (1.0 - d / (X + d));
  return total;
}

BlowupResult blowup_experiment(const std::vector<Rat>& deltas, double R, int strip_cells) {
  if (deltas.empty()) throw Error(ErrorCode::UsageError, "need at least one delta");
  for (size_t i = 0; i + 1 < deltas.size(); ++i)
    if (!(deltas[i + 1] < deltas[i]))
      throw Error(ErrorCode::UsageError, "deltas must be strictly decreasing");
  if (!(deltas.front() < Rat(1)) || deltas.back().sign() <= 0)
    throw Error(ErrorCode::UsageError, "deltas must lie in (0,1)");
  if (R <= 2.0) throw Error(ErrorCode::UsageError, "need R > 2 (cap inactive in the unit window)");
  if (strip_cells < 8) throw Error(ErrorCode::ResolutionTooCoarse, "strip must be resolved by >= 8 cells");

  const double X = 0.5;
  BlowupResult res;
  res.table.name = "blowup";
  res.table.columns = {"delta",     "bv_f",        "tv_m1",     "oracle_tv", "ratio_m1",
                       "tv_iter",   "ratio_iter",  "tv_strong", "ratio_strong", "provenance"};
  res.report.claim_id = "blowup";

  bool ok = true;
  std::string notes;
  std::vector<double> ratio1, ratio_it, ratio_st;
  double worst_a = 0, worst_b = 0;

  for (const Rat& delta_r : deltas) {
    const double delta = delta_r.to_double();
    const Rat cells = Rat(strip_cells) / delta_r;  // window cells per unit: strip_cells/delta
    if (!cells.is_integer())
      throw Error(ErrorCode::ResolutionTooCoarse, "delta must divide the window into whole cells");
    const int n = static_cast<int>(cells.to_double());  // nx = ny = strip_cells / delta
    if (n > 4096) throw Error(ErrorCode::ResolutionTooCoarse, "grid too large for policy");

    Rect rect{-X, X, -X, X};
    Eigen::ArrayXXd vals = Eigen::ArrayXXd::Zero(n, n);
    const int b0 = n / 2;  // block [0, delta]^2 starts at the window midpoint
    for (int i = b0; i < b0 + strip_cells; ++i)
      for (int j = b0; j < b0 + strip_cells; ++j) vals(i, j) = 1.0;
    GridFn2D f(rect, n, n, std::move(vals));

    const double bv = f.l1_norm() + discrete_tv(f).tv;
    const double bv_expected = delta * delta + 4.0 * delta;
    if (bv != bv_expected) {
      ok = false;
      notes += "bv mismatch at delta=" + fmt(delta) + "; ";
    }

    GridFn2D m1 = directional_maximal(f, 1, R);
    // (a) strip rows carry the exact one-row profile
    double worst_rel = 0;
    for (int j = b0; j < b0 + strip_cells; ++j) {
      for (int i = 0; i < n; ++i) {
        const double x = f.cell_center_x(i);
        double expect;
        if (x > delta) expect = delta / x;
        else if (x >= 0) expect = 1.0;
        else expect = delta / (delta - x);
        worst_rel = std::max(worst_rel, std::abs(m1.values()(i, j) - expect) / expect);
      }
    }
    if (worst_rel > 0.01) {
      ok = false;
      notes += "strip profile off at delta=" + fmt(delta) + "; ";
    }
    worst_a = std::max(worst_a, worst_rel);

    const double tv1 = discrete_tv(m1).tv;
    const double oracle = blowup_tv_oracle(delta, X);
    const double rel_oracle = std::abs(tv1 - oracle) / oracle;
    if (rel_oracle > 0.2) {
      ok = false;
      notes += "tv outside oracle band at delta=" + fmt(delta) + "; ";
    }
    worst_b = std::max(worst_b, rel_oracle);

    GridFn2D mit = iterated_maximal(f, R);
    GridFn2D mst = strong_maximal(f, R);
    const double tv_it = discrete_tv(mit).tv;
    const double tv_st = discrete_tv(mst).tv;

    ratio1.push_back(tv1 / bv);
    ratio_it.push_back(tv_it / bv);
    ratio_st.push_back(tv_st / bv);

    res.table.add_row({delta_r.to_string(), fmt(bv), fmt(tv1), fmt(oracle), fmt(tv1 / bv),
                       fmt(tv_it), fmt(tv_it / bv), fmt(tv_st), fmt(tv_st / bv), "blowup"});
  }

  auto check_divergence = [&](const std::vector<double>& r, const char* tag) {
    for (size_t i = 0; i + 1 < r.size(); ++i)
      if (!(r[i + 1] > r[i])) {
        ok = false;
        notes += std::string(tag) + " ratio not strictly increasing; ";
        return;
      }
    if (r.size() >= 2 && !(r.back() / r.front() > 1.5)) {
      ok = false;
      notes += std::string(tag) + " final/initial <= 1.5; ";
    }
  };
  check_divergence(ratio1, "m1");
  check_divergence(ratio_it, "iterated");
  check_divergence(ratio_st, "strong");

  res.report.measure("worst_strip_rel_err", worst_a);
  res.report.measure("worst_oracle_rel_err", worst_b);
  if (!ratio1.empty()) {
    res.report.measure("ratio_m1_initial", ratio1.front());
    res.report.measure("ratio_m1_final", ratio1.back());
    res.report.measure("ratio_iter_final_over_initial", ratio_it.back() / ratio_it.front());
    res.report.measure("ratio_strong_final_over_initial", ratio_st.back() / ratio_st.front());
  }
  res.report.bound = 0.2;
  res.report.margin = 0.2 - worst_b;
  res.report.passed = ok;
  res.report.notes = notes;
  res.report.provenance = {"grid", "closed-form-oracle"};
  return res;
}

Table growth_table_2d(const GridFn2D& g, const std::vector<double>& Rs, CheckReport* report) {
  if (Rs.size() < 2) throw Error(ErrorCode::UsageError, "need at least two R values");
  for (size_t i = 0; i + 1 < Rs.size(); ++i)
    if (!(Rs[i] < Rs[i + 1])) throw Error(ErrorCode::UsageError, "Rs must be increasing");
  if (Rs.back() / Rs.front() < 8.0)
    throw Error(ErrorCode::UsageError, "Rs should span at least three dyadic decades");

  Table tab;
  tab.name = "growth2d";
  tab.columns = {"R", "l1_strong", "l1_iterated", "l1_square", "l1_directional1", "provenance"};

  double s_min = kInf, s_max = 0, q_min = kInf, q_max = 0;
  for (double R : Rs) {
    const double ls = strong_maximal(g, R).l1_norm();
    const double li = iterated_maximal(g, R).l1_norm();
    const double lq = square_maximal(g, R).l1_norm();
    const double ld = directional_maximal(g, 1, R).l1_norm();
    const double lp = 1.0 + std::pow(std::log(std::max(1.0, R)), 2.0);
    const double lq_env = 1.0 + std::log(std::max(1.0, R));
    s_min = std::min(s_min, ls / lp);
    s_max = std::max(s_max, ls / lp);
    q_min = std::min(q_min, lq / lq_env);
    q_max = std::max(q_max, lq / lq_env);
    tab.add_row({fmt(R), fmt(ls), fmt(li), fmt(lq), fmt(ld), "growth.2d"});
  }
  if (report) {
    report->claim_id = "growth.2d";
    const double env_s = s_max / s_min;
    const double env_q = q_max / q_min;
    report->measure("strong_envelope", env_s);
    report->measure("square_envelope", env_q);
    report->bound = 10.0;
    report->margin = 10.0 - std::max(env_s, env_q);
    report->passed = env_s < 10.0 && env_q < 10.0;
    report->provenance = {"grid"};
  }
  return tab;
}

CheckReport convergence_2d(const GridFn2D& g, const std::vector<double>& scales) {
  CheckReport rep;
  rep.claim_id = "convergence2d";
  for (size_t i = 0; i + 1 < scales.size(); ++i)
    if (!(scales[i + 1] < scales[i]))
      throw Error(ErrorCode::UsageError, "scales must be strictly decreasing");
  const double min_scale = 2.0 * std::max(g.hx(), g.hy());
  for (double a : scales) {
    if (a < min_scale)
      throw Error(ErrorCode::ResolutionTooCoarse, "scales must stay above two cell widths");
  }

  const double base = g.values().abs().sum() * g.cell_area();
  bool ok = true;
  double prev_d = kInf, prev_s = kInf;
  for (double a : scales) {
    const double d = directional_maximal(g, 1, a).l1_norm() - base;
    const double s = strong_maximal(g, a).l1_norm() - base;
    if (d > prev_d + 1e-9 || s > prev_s + 1e-9) ok = false;
    prev_d = d;
    prev_s = s;
    rep.measure("dir_diff_" + fmt(a), d);
    rep.measure("strong_diff_" + fmt(a), s);
  }
  rep.bound = 0;
  rep.margin = ok ? 1.0 : -1.0;
  rep.passed = ok;
  rep.provenance = {"grid"};
  return rep;
}

}  // namespace maxbv

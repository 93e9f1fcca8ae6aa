#include "maxbv/profile.hpp"

#include <algorithm>
#include <cstdlib>
#include <queue>
#include <tuple>

namespace maxbv {

int default_max_depth() {
  if (const char* env = std::getenv("MAXBV_MAX_DEPTH")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 24;
}

std::vector<Rat> kink_nodes(const StepFn& f, const std::optional<Rat>& R) {
  const Interval& dom = f.domain();
  std::vector<Rat> nodes = f.knots();
  if (R) {
    std::vector<Rat> shifted;
    for (const Rat& k : nodes) {
      Rat l = k - *R;
      Rat r = k + *R;
      if (dom.lo < l && l < dom.hi) shifted.push_back(l);
      if (dom.lo < r && r < dom.hi) shifted.push_back(r);
    }
    nodes.insert(nodes.end(), shifted.begin(), shifted.end());
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return nodes;
}

namespace {

struct Cell {
  size_t left, right;  // node ids
  size_t mid;          // node id of the tested midpoint (not yet a profile node)
  int depth;
  double d_l1, d_var, d_energy;
};

double energy_term(const Rat& dv, const Rat& dx) {
  double n = dv.to_double();
  return n * n / dx.to_double();
}

}  // namespace

SampledProfile maximal_profile(const StepFn& f, const std::optional<Rat>& R,
                               const ProfileOptions& opts) {
  MaxEvaluator ev(f, R);
  const int max_depth = opts.max_depth > 0 ? opts.max_depth : default_max_depth();
  const double tol = opts.tol;
  const double etol = opts.track_energy ? (opts.energy_tol > 0 ? opts.energy_tol : tol) : 0;

  std::vector<Rat> xs = kink_nodes(f, R);
  std::vector<Rat> vs;
  vs.reserve(xs.size());
  for (const Rat& x : xs) vs.push_back(ev.eval(x).value);

  // Node pool; cells reference ids. Midpoints are evaluated when a cell is
  // scored and only become profile nodes if the cell is split.
  std::vector<std::pair<Rat, Rat>> pool;
  pool.reserve(xs.size() * 4);
  std::vector<char> live;  // is pool[i] a profile node?
  for (size_t i = 0; i < xs.size(); ++i) {
    pool.emplace_back(xs[i], vs[i]);
    live.push_back(1);
  }

  std::vector<Cell> cells;
  // (priority, cell index); larger pending correction first
  std::priority_queue<std::pair<double, size_t>> pq;
  double pend_l1 = 0, pend_var = 0, pend_energy = 0;   // over queued cells
  double perm_l1 = 0, perm_var = 0, perm_energy = 0;   // depth-capped cells
  int max_cell_depth = 0;

  auto score_cell = [&](size_t l, size_t r, int depth) {
    // Copies: pool may reallocate below.
    const Rat xa = pool[l].first;
    const Rat xb = pool[r].first;
    const Rat va = pool[l].second;
    const Rat vb = pool[r].second;
    Rat xm = (xa + xb) / Rat(2);
    Rat vm = ev.eval(xm).value;
    if (vm == va && vm == vb) return;  // exactly constant cell
    size_t mid = pool.size();
    Cell c;
    c.left = l; c.right = r; c.mid = mid; c.depth = depth;
    Rat len = xb - xa;
    c.d_l1 = ((va + vb - Rat(2) * vm).abs() * len / Rat(4)).to_double();
    c.d_var = ((vm - va).abs() + (vb - vm).abs() - (vb - va).abs()).to_double();
    c.d_energy = 0;
    if (opts.track_energy) {
      Rat half = len / Rat(2);
      c.d_energy = energy_term(vm - va, half) + energy_term(vb - vm, half) -
                   energy_term(vb - va, len);
    }
    pool.emplace_back(std::move(xm), std::move(vm));
    live.push_back(0);
    if (depth >= max_depth) {
      perm_l1 += c.d_l1;
      perm_var += c.d_var;
      perm_energy += c.d_energy;
      return;
    }
    size_t id = cells.size();
    cells.push_back(c);
    pend_l1 += c.d_l1;
    pend_var += c.d_var;
    pend_energy += c.d_energy;
    pq.emplace(c.d_l1 + c.d_var + c.d_energy, id);
  };

  for (size_t i = 0; i + 1 < xs.size(); ++i) score_cell(i, i + 1, 0);

  while (!pq.empty()) {
    if (pend_l1 + perm_l1 <= tol && pend_var + perm_var <= tol &&
        (!opts.track_energy || pend_energy + perm_energy <= etol))
      break;
    if (pool.size() >= opts.max_nodes) break;
    auto [prio, id] = pq.top();
    pq.pop();
    const Cell c = cells[id];
    pend_l1 -= c.d_l1;
    pend_var -= c.d_var;
    pend_energy -= c.d_energy;
    live[c.mid] = 1;
    max_cell_depth = std::max(max_cell_depth, c.depth + 1);
    score_cell(c.left, c.mid, c.depth + 1);
    score_cell(c.mid, c.right, c.depth + 1);
  }

  SampledProfile out;
  out.refinement_depth = max_cell_depth;
  out.l1_error_estimate = pend_l1 + perm_l1;
  out.var_error_estimate = pend_var + perm_var;
  out.energy_error_estimate = pend_energy + perm_energy;
  out.converged = out.l1_error_estimate <= tol && out.var_error_estimate <= tol &&
                  (!opts.track_energy || out.energy_error_estimate <= etol);

  std::vector<size_t> idx;
  idx.reserve(pool.size());
  for (size_t i = 0; i < pool.size(); ++i)
    if (live[i]) idx.push_back(i);
  std::sort(idx.begin(), idx.end(),
            [&](size_t a, size_t b) { return pool[a].first < pool[b].first; });
  out.nodes.reserve(idx.size());
  out.values.reserve(idx.size());
  for (size_t i : idx) {
    out.nodes.push_back(std::move(pool[i].first));
    out.values.push_back(std::move(pool[i].second));
  }

  FixedPointSum var_sum;
  double l1 = 0, l1_c = 0, energy = 0;
  for (size_t i = 0; i + 1 < out.nodes.size(); ++i) {
    const Rat dv = out.values[i + 1] - out.values[i];
    const Rat dx = out.nodes[i + 1] - out.nodes[i];
    var_sum.add_floor(dv.abs());
    double term = dx.to_double() * (out.values[i].to_double() + out.values[i + 1].to_double()) / 2.0;
    double y = term - l1_c;
    double t = l1 + y;
    l1_c = (t - l1) - y;
    l1 = t;
    if (opts.track_energy) energy += energy_term(dv, dx);
  }
  out.variation_lower = var_sum.value();
  out.l1_estimate = l1;
  out.energy = energy;
  return out;
}

SampledProfile profile_on_nodes(const MaxEvaluator& ev, const std::vector<Rat>& nodes) {
  SampledProfile out;
  out.nodes = nodes;
  out.values.reserve(nodes.size());
  for (const Rat& x : nodes) out.values.push_back(ev.eval(x).value);
  FixedPointSum var_sum;
  double l1 = 0, l1_c = 0, energy = 0;
  for (size_t i = 0; i + 1 < out.nodes.size(); ++i) {
    const Rat dv = out.values[i + 1] - out.values[i];
    const Rat dx = out.nodes[i + 1] - out.nodes[i];
    var_sum.add_floor(dv.abs());
    double term = dx.to_double() * (out.values[i].to_double() + out.values[i + 1].to_double()) / 2.0;
    double y = term - l1_c;
    double t = l1 + y;
    l1_c = (t - l1) - y;
    l1 = t;
    energy += energy_term(dv, dx);
  }
  out.variation_lower = var_sum.value();
  out.l1_estimate = l1;
  out.energy = energy;
  return out;
}

}  // namespace maxbv

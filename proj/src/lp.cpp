#include "csc/lp.hpp"

#include <algorithm>

namespace csc {

namespace {

// Dense exact simplex tableau for the phase-1 problem
//   min sum(artificials) s.t. A x + slacks/artificials = b, x >= 0.
// Bland's rule on both the entering and the leaving choice guarantees
// termination without any numeric tolerance.
struct Tableau {
  int rows, cols;  // cols excludes the rhs
  std::vector<std::vector<Rat>> a;  // rows x (cols + 1), last col = rhs
  std::vector<Rat> obj;             // cols + 1, last = -objective value
  std::vector<int> basis;           // row -> basic column

  Tableau(int r, int c) : rows(r), cols(c) {
    a.assign(rows, std::vector<Rat>(cols + 1, Rat(0)));
    obj.assign(cols + 1, Rat(0));
    basis.assign(rows, -1);
  }

  void pivot(int prow, int pcol) {
    Rat inv = a[prow][pcol];
    for (auto& v : a[prow]) v /= inv;
    for (int r = 0; r < rows; ++r) {
      if (r == prow || a[r][pcol] == 0) continue;
      Rat f = a[r][pcol];
      for (int j = 0; j <= cols; ++j) a[r][j] -= f * a[prow][j];
    }
    if (obj[pcol] != 0) {
      Rat f = obj[pcol];
      for (int j = 0; j <= cols; ++j) obj[j] -= f * a[prow][j];
    }
    basis[prow] = pcol;
  }

  void run() {
    while (true) {
      int enter = -1;
      for (int j = 0; j < cols; ++j)
        if (obj[j] < 0) {
          enter = j;
          break;
        }
      if (enter < 0) return;

      int leave = -1;
      Rat best;
      for (int r = 0; r < rows; ++r) {
        if (a[r][enter] <= 0) continue;
        Rat ratio = a[r][cols] / a[r][enter];
        if (leave < 0 || ratio < best ||
            (ratio == best && basis[r] < basis[leave]))
          leave = r, best = ratio;
      }
      if (leave < 0) return;  // unbounded; cannot happen for phase 1
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpResult solve_matching_lp(const Hypergraph& h) {
  const int m = h.num_players(), n = h.num_resources(), nc = h.num_configs();
  // Columns: configs, resource slacks, player artificials.
  const int slack0 = nc, art0 = nc + n;
  Tableau t(m + n, nc + n + m);

  // Player rows first (artificial basis), resource rows after (slack basis).
  for (int c = 0; c < nc; ++c) {
    t.a[h.configs[c].player][c] = 1;
    for (int r : h.configs[c].resources) t.a[m + r][c] = 1;
  }
  for (int i = 0; i < m; ++i) {
    t.a[i][art0 + i] = 1;
    t.a[i][t.cols] = 1;
    t.basis[i] = art0 + i;
  }
  for (int r = 0; r < n; ++r) {
    t.a[m + r][slack0 + r] = 1;
    t.a[m + r][t.cols] = 1;
    t.basis[m + r] = slack0 + r;
  }

  // Phase-1 objective min sum(artificials), expressed over the initial basis.
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= t.cols; ++j) t.obj[j] -= t.a[i][j];
  for (int i = 0; i < m; ++i) t.obj[art0 + i] += 1;

  t.run();

  LpResult out;
  Rat residual = -t.obj[t.cols];
  if (residual != 0) {
    for (int r = 0; r < t.rows; ++r)
      if (t.basis[r] >= art0 && t.a[r][t.cols] > 0)
        out.stuck_players.push_back(t.basis[r] - art0);
    std::sort(out.stuck_players.begin(), out.stuck_players.end());
    return out;
  }

  // Pivot out artificials that ended basic at zero so the basis describes
  // the original system wherever possible (redundant rows stay put).
  for (int r = 0; r < t.rows; ++r) {
    if (t.basis[r] < art0) continue;
    for (int j = 0; j < art0; ++j)
      if (t.a[r][j] != 0) {
        t.pivot(r, j);
        break;
      }
  }

  out.feasible = true;
  out.x.assign(nc, Rat(0));
  for (int r = 0; r < t.rows; ++r)
    if (t.basis[r] < nc) out.x[t.basis[r]] = t.a[r][t.cols];
  for (auto& v : out.x) v.canonicalize();
  return out;
}

}  // namespace csc

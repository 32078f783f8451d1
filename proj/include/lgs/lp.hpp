#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "lgs/errors.hpp"

namespace lgs {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Solver tolerances, fixed once here.
struct LpTolerances {
  double feasibility = 1e-9;   // allowed constraint violation
  double reduced_cost = 1e-9;  // optimality threshold
  double pivot = 1e-12;        // entries below this never pivot
  double duality = 1e-7;       // primal/dual objective agreement
};

enum class Relation { LessEq, Equal, GreaterEq };

struct LpRow {
  std::vector<std::pair<int, double>> coeffs;  // (variable, coefficient)
  Relation rel = Relation::LessEq;
  double rhs = 0.0;
};

struct LpProblem {
  bool maximize = false;
  double objective_constant = 0.0;
  std::vector<double> objective;
  std::vector<double> lower;  // -inf allowed
  std::vector<double> upper;  // +inf allowed
  std::vector<LpRow> rows;

  int num_vars() const { return static_cast<int>(objective.size()); }

  int add_var(double lo, double hi, double cost) {
    objective.push_back(cost);
    lower.push_back(lo);
    upper.push_back(hi);
    return num_vars() - 1;
  }

  void add_row(std::vector<std::pair<int, double>> coeffs, Relation rel, double rhs) {
    rows.push_back(LpRow{std::move(coeffs), rel, rhs});
  }

  void check_well_formed() const {
    if (lower.size() != objective.size() || upper.size() != objective.size())
      throw Error("LpProblem: bound arrays disagree with objective length");
    for (int j = 0; j < num_vars(); ++j) {
      if (std::isnan(lower[j]) || std::isnan(upper[j]) || std::isnan(objective[j]))
        throw NonFiniteEntry("LpProblem: NaN in variable data");
      if (lower[j] > upper[j])
        throw Error("LpProblem: empty bound interval on variable " + std::to_string(j));
    }
    for (const LpRow& r : rows) {
      if (!std::isfinite(r.rhs)) throw NonFiniteEntry("LpProblem: non-finite rhs");
      for (auto [j, a] : r.coeffs) {
        if (j < 0 || j >= num_vars()) throw Error("LpProblem: row references unknown variable");
        if (!std::isfinite(a)) throw NonFiniteEntry("LpProblem: non-finite coefficient");
      }
    }
  }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> x;
  double objective = 0.0;
  // Shadow prices: derivative of the optimal objective (in the problem's own
  // sense) with respect to each row's rhs.
  std::vector<double> duals;
};

namespace detail {

// Internal standard form: minimize c.x, A x = b, 0 <= x <= u (u may be +inf).
// Columns are stored sparse; the basis inverse is kept dense and refreshed
// by product-form updates with periodic refactorization.
class SimplexCore {
 public:
  std::vector<std::vector<std::pair<int, double>>> cols;  // per-variable rows
  std::vector<double> cost;
  std::vector<double> ub;
  std::vector<double> b;
  int num_structural = 0;  // columns beyond this are artificials

  LpTolerances tol;

  // Outputs.
  std::vector<double> x;      // all internal variables
  std::vector<double> duals;  // per row
  bool unbounded = false;

  int rows() const { return static_cast<int>(b.size()); }
  int vars() const { return static_cast<int>(cost.size()); }

  int add_col(double c, double u) {
    cols.emplace_back();
    cost.push_back(c);
    ub.push_back(u);
    return vars() - 1;
  }

  // Returns false on infeasible; throws NumericalFailure on breakdown.
  bool solve() {
    const int m = rows();
    basis_.resize(m);
    state_.assign(vars(), AtLower);
    // Artificial start: one artificial per row, signed to keep values >= 0.
    for (int i = 0; i < m; ++i) {
      const int a = add_col(0.0, kInf);
      cols[a].emplace_back(i, b[i] >= 0 ? 1.0 : -1.0);
      basis_[i] = a;
      state_[state_.size() - 1 + 0] = Basic;  // placeholder, fixed below
    }
    state_.assign(vars(), AtLower);
    for (int i = 0; i < m; ++i) state_[basis_[i]] = Basic;
    binv_.assign(static_cast<std::size_t>(m) * m, 0.0);
    for (int i = 0; i < m; ++i) binv_[idx(i, i)] = (b[i] >= 0 ? 1.0 : -1.0);
    xb_.resize(m);
    for (int i = 0; i < m; ++i) xb_[i] = std::abs(b[i]);

    // Phase 1: minimize the artificials.
    std::vector<double> phase1(vars(), 0.0);
    for (int j = num_structural; j < vars(); ++j) phase1[j] = 1.0;
    std::swap(cost, phase1);
    run(true);
    std::swap(cost, phase1);
    double art_sum = 0.0;
    for (int i = 0; i < m; ++i)
      if (basis_[i] >= num_structural) art_sum += xb_[i];
    if (art_sum > tol.feasibility * std::max(1.0, norm_b())) return false;
    purge_artificials();

    // Phase 2: original costs; artificials are pinned at zero.
    for (int j = num_structural; j < vars(); ++j) ub[j] = 0.0;
    run(false);
    if (unbounded) return true;

    x.assign(vars(), 0.0);
    for (int j = 0; j < vars(); ++j)
      if (state_[j] == AtUpper) x[j] = ub[j];
    for (int i = 0; i < m; ++i) x[basis_[i]] = xb_[i];
    compute_duals();
    return true;
  }

  double objective_value() const {
    double v = 0.0;
    for (int j = 0; j < vars(); ++j) v += cost[j] * x[j];
    return v;
  }

 private:
  enum VarState : char { AtLower, AtUpper, Basic };

  std::size_t idx(int r, int c) const { return static_cast<std::size_t>(r) * rows() + c; }

  double norm_b() const {
    double s = 0.0;
    for (double v : b) s += std::abs(v);
    return s;
  }

  void compute_duals() {
    const int m = rows();
    duals.assign(m, 0.0);
    for (int i = 0; i < m; ++i) {
      const double cb = cost[basis_[i]];
      if (cb == 0.0) continue;
      for (int k = 0; k < m; ++k) duals[k] += cb * binv_[idx(i, k)];
    }
  }

  // B^{-1} * column j.
  void ftran(int j, std::vector<double>& w) const {
    const int m = rows();
    w.assign(m, 0.0);
    for (auto [r, a] : cols[j])
      for (int i = 0; i < m; ++i) w[i] += binv_[idx(i, r)] * a;
  }

  double reduced_cost(int j, const std::vector<double>& y) const {
    double d = cost[j];
    for (auto [r, a] : cols[j]) d -= y[r] * a;
    return d;
  }

  void refactorize() {
    // Rebuild B^{-1} by Gauss-Jordan on the basis columns.
    const int m = rows();
    std::vector<double> dense(static_cast<std::size_t>(m) * m, 0.0);
    for (int i = 0; i < m; ++i)
      for (auto [r, a] : cols[basis_[i]]) dense[idx(r, i)] = a;
    std::vector<double> inv(static_cast<std::size_t>(m) * m, 0.0);
    for (int i = 0; i < m; ++i) inv[idx(i, i)] = 1.0;
    for (int col = 0; col < m; ++col) {
      int piv = -1;
      double best = tol.pivot;
      for (int r = col; r < m; ++r)
        if (std::abs(dense[idx(r, col)]) > best) {
          best = std::abs(dense[idx(r, col)]);
          piv = r;
        }
      if (piv < 0) throw NumericalFailure("simplex: singular basis during refactorization");
      if (piv != col) {
        for (int k = 0; k < m; ++k) {
          std::swap(dense[idx(piv, k)], dense[idx(col, k)]);
          std::swap(inv[idx(piv, k)], inv[idx(col, k)]);
        }
      }
      const double d = dense[idx(col, col)];
      for (int k = 0; k < m; ++k) {
        dense[idx(col, k)] /= d;
        inv[idx(col, k)] /= d;
      }
      for (int r = 0; r < m; ++r) {
        if (r == col) continue;
        const double f = dense[idx(r, col)];
        if (f == 0.0) continue;
        for (int k = 0; k < m; ++k) {
          dense[idx(r, k)] -= f * dense[idx(col, k)];
          inv[idx(r, k)] -= f * inv[idx(col, k)];
        }
      }
    }
    // The Gauss-Jordan above produced the inverse of B with columns permuted
    // to basis order, which is exactly what we index by basis position.
    binv_ = std::move(inv);
    recompute_xb();
  }

  void recompute_xb() {
    const int m = rows();
    std::vector<double> rhs = b;
    for (int j = 0; j < vars(); ++j) {
      if (state_[j] != AtUpper || ub[j] == 0.0) continue;
      for (auto [r, a] : cols[j]) rhs[r] -= a * ub[j];
    }
    for (int i = 0; i < m; ++i) {
      double v = 0.0;
      for (int k = 0; k < m; ++k) v += binv_[idx(i, k)] * rhs[k];
      xb_[i] = v;
    }
  }

  void run(bool phase1) {
    const int m = rows();
    std::vector<double> y(m), w(m);
    bool bland = false;
    int degenerate_streak = 0;
    long pivots_since_refactor = 0;
    const long iter_cap = 20000 + 200L * (vars() + m);
    for (long iter = 0; iter < iter_cap; ++iter) {
      // Pricing.
      y.assign(m, 0.0);
      for (int i = 0; i < m; ++i) {
        const double cb = cost[basis_[i]];
        if (cb == 0.0) continue;
        for (int k = 0; k < m; ++k) y[k] += cb * binv_[idx(i, k)];
      }
      int enter = -1;
      double best_score = tol.reduced_cost;
      int sigma = +1;
      for (int j = 0; j < vars(); ++j) {
        if (state_[j] == Basic) continue;
        if (!phase1 && j >= num_structural) continue;  // artificials stay out
        if (ub[j] == 0.0) continue;                    // fixed at zero
        const double d = reduced_cost(j, y);
        double score = 0.0;
        int dir = 0;
        if (state_[j] == AtLower && d < -tol.reduced_cost) {
          score = -d;
          dir = +1;
        } else if (state_[j] == AtUpper && d > tol.reduced_cost) {
          score = d;
          dir = -1;
        } else {
          continue;
        }
        if (bland) {
          enter = j;
          sigma = dir;
          break;
        }
        if (score > best_score) {
          best_score = score;
          enter = j;
          sigma = dir;
        }
      }
      if (enter < 0) return;  // optimal for this phase

      ftran(enter, w);
      // Ratio test: entering moves by sigma * t, basics by -sigma * t * w.
      double t = ub[enter];  // own bound flip distance (may be inf)
      int leave = -1;        // basis position
      bool leave_at_upper = false;
      for (int i = 0; i < m; ++i) {
        const double delta = -sigma * w[i];
        if (delta < -tol.pivot) {
          const double lim = xb_[i] / (-delta);
          if (lim < t - 1e-15 ||
              (leave >= 0 && lim < t + 1e-15 && basis_[i] < basis_[leave])) {
            t = lim;
            leave = i;
            leave_at_upper = false;
          }
        } else if (delta > tol.pivot && ub[basis_[i]] < kInf) {
          const double lim = (ub[basis_[i]] - xb_[i]) / delta;
          if (lim < t - 1e-15 ||
              (leave >= 0 && lim < t + 1e-15 && basis_[i] < basis_[leave])) {
            t = lim;
            leave = i;
            leave_at_upper = true;
          }
        }
      }
      if (t == kInf) {
        if (phase1) throw NumericalFailure("simplex: phase 1 unbounded");
        unbounded = true;
        return;
      }
      t = std::max(t, 0.0);
      if (t <= tol.pivot) {
        if (++degenerate_streak > 2 * (m + 8)) bland = true;
      } else {
        degenerate_streak = 0;
        bland = false;
      }

      for (int i = 0; i < m; ++i) xb_[i] -= sigma * t * w[i];
      if (leave < 0) {
        // Bound flip, basis unchanged.
        state_[enter] = (state_[enter] == AtLower) ? AtUpper : AtLower;
        continue;
      }
      const int out = basis_[leave];
      state_[out] = leave_at_upper ? AtUpper : AtLower;
      basis_[leave] = enter;
      state_[enter] = Basic;
      xb_[leave] = (sigma > 0) ? t : ub[enter] - t;

      // Product-form update of B^{-1}.
      const double piv = w[leave];
      if (std::abs(piv) < tol.pivot)
        throw NumericalFailure("simplex: pivot below tolerance");
      for (int k = 0; k < m; ++k) binv_[idx(leave, k)] /= piv;
      for (int i = 0; i < m; ++i) {
        if (i == leave) continue;
        const double f = w[i];
        if (f == 0.0) continue;
        for (int k = 0; k < m; ++k) binv_[idx(i, k)] -= f * binv_[idx(leave, k)];
      }
      if (++pivots_since_refactor >= 500) {
        refactorize();
        pivots_since_refactor = 0;
      }
    }
    throw NumericalFailure("simplex: iteration limit reached");
  }

  void purge_artificials() {
    // Pivot basic artificials out where possible; redundant rows keep their
    // artificial basic at value zero.
    const int m = rows();
    std::vector<double> w(m);
    for (int i = 0; i < m; ++i) {
      if (basis_[i] < num_structural) continue;
      int replacement = -1;
      for (int j = 0; j < num_structural && replacement < 0; ++j) {
        if (state_[j] == Basic) continue;
        ftran(j, w);
        if (std::abs(w[i]) > 1e-9) replacement = j;
      }
      if (replacement < 0) continue;
      ftran(replacement, w);
      const double piv = w[i];
      const int out = basis_[i];
      basis_[i] = replacement;
      state_[replacement] = Basic;
      state_[out] = AtLower;
      for (int k = 0; k < m; ++k) binv_[idx(i, k)] /= piv;
      for (int r = 0; r < m; ++r) {
        if (r == i) continue;
        const double f = w[r];
        if (f == 0.0) continue;
        for (int k = 0; k < m; ++k) binv_[idx(r, k)] -= f * binv_[idx(i, k)];
      }
      recompute_xb();
    }
  }

  std::vector<int> basis_;
  std::vector<char> state_;
  std::vector<double> binv_;
  std::vector<double> xb_;
};

}  // namespace detail

// Two-phase primal simplex over general rows and bounds. Deterministic:
// Dantzig pricing with lowest-index ties, falling back to Bland's rule on
// sustained degeneracy.
inline LpSolution solve_lp(const LpProblem& p, const LpTolerances& tol = {}) {
  p.check_well_formed();
  const int n = p.num_vars();
  const double sense = p.maximize ? -1.0 : 1.0;

  detail::SimplexCore core;
  core.tol = tol;

  // Variable transforms to reach 0 <= x' <= u form.
  struct Map {
    enum Kind { Shift, Flip, Split } kind;
    int a = -1, b = -1;
    double offset = 0.0;
  };
  std::vector<Map> maps(n);
  double shift_const = 0.0;
  for (int j = 0; j < n; ++j) {
    const double lo = p.lower[j], hi = p.upper[j];
    if (lo > -kInf) {
      const int id = core.add_col(sense * p.objective[j], hi - lo);
      maps[j] = {Map::Shift, id, -1, lo};
      shift_const += p.objective[j] * lo;
    } else if (hi < kInf) {
      const int id = core.add_col(sense * -p.objective[j], kInf);
      maps[j] = {Map::Flip, id, -1, hi};
      shift_const += p.objective[j] * hi;
    } else {
      const int a = core.add_col(sense * p.objective[j], kInf);
      const int bneg = core.add_col(sense * -p.objective[j], kInf);
      maps[j] = {Map::Split, a, bneg, 0.0};
    }
  }

  // Rows: adjust rhs for shifts, add slack/surplus.
  core.b.resize(p.rows.size());
  for (std::size_t i = 0; i < p.rows.size(); ++i) {
    const LpRow& row = p.rows[i];
    double rhs = row.rhs;
    for (auto [j, a] : row.coeffs) {
      const Map& mp = maps[j];
      switch (mp.kind) {
        case Map::Shift:
          core.cols[mp.a].emplace_back(static_cast<int>(i), a);
          rhs -= a * mp.offset;
          break;
        case Map::Flip:
          core.cols[mp.a].emplace_back(static_cast<int>(i), -a);
          rhs -= a * mp.offset;
          break;
        case Map::Split:
          core.cols[mp.a].emplace_back(static_cast<int>(i), a);
          core.cols[mp.b].emplace_back(static_cast<int>(i), -a);
          break;
      }
    }
    if (row.rel == Relation::LessEq) {
      const int s = core.add_col(0.0, kInf);
      core.cols[s].emplace_back(static_cast<int>(i), 1.0);
    } else if (row.rel == Relation::GreaterEq) {
      const int s = core.add_col(0.0, kInf);
      core.cols[s].emplace_back(static_cast<int>(i), -1.0);
    }
    core.b[i] = rhs;
  }
  core.num_structural = core.vars();

  LpSolution sol;
  if (!core.solve()) {
    sol.status = LpStatus::Infeasible;
    return sol;
  }
  if (core.unbounded) {
    sol.status = LpStatus::Unbounded;
    return sol;
  }
  sol.status = LpStatus::Optimal;
  sol.x.resize(n);
  for (int j = 0; j < n; ++j) {
    const Map& mp = maps[j];
    switch (mp.kind) {
      case Map::Shift:
        sol.x[j] = mp.offset + core.x[mp.a];
        break;
      case Map::Flip:
        sol.x[j] = mp.offset - core.x[mp.a];
        break;
      case Map::Split:
        sol.x[j] = core.x[mp.a] - core.x[mp.b];
        break;
    }
  }
  double inner = 0.0;
  for (int j = 0; j < n; ++j) inner += p.objective[j] * sol.x[j];
  sol.objective = inner + p.objective_constant;
  sol.duals.resize(p.rows.size());
  for (std::size_t i = 0; i < p.rows.size(); ++i)
    sol.duals[i] = sense * core.duals[i];
  return sol;
}

}  // namespace lgs

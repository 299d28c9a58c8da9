#include "problogic/lp.hpp"

#include <algorithm>

namespace problogic {

namespace {

constexpr long kPivotGuard = 1000000;

struct Tableau {
  // rows: m constraint rows, canonical w.r.t. basis. Last column is rhs.
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> obj;  // reduced costs; obj.back() = -objective value
  std::vector<int> basis;
  int ncols = 0;  // structural columns (excluding rhs)
  std::vector<bool> blocked;  // columns barred from entering (artificials)
  long pivots = 0;

  void pivot(int r, int c) {
    if (++pivots > kPivotGuard) throw SimplexError("pivot guard exceeded");
    Rational p = rows[r][c];
    for (auto& v : rows[r]) v /= p;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (static_cast<int>(i) == r) continue;
      Rational f = rows[i][c];
      if (f == 0) continue;
      for (int j = 0; j <= ncols; ++j) rows[i][j] -= f * rows[r][j];
    }
    Rational f = obj[c];
    if (f != 0)
      for (int j = 0; j <= ncols; ++j) obj[j] -= f * rows[r][j];
    basis[r] = c;
  }

  // Minimizes the current objective row. Returns false when unbounded.
  bool run() {
    while (true) {
      int enter = -1;
      for (int j = 0; j < ncols; ++j) {
        if (!blocked[j] && obj[j] < 0) {
          enter = j;  // Bland: lowest index
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      Rational best;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i][enter] <= 0) continue;
        Rational ratio = rows[i][ncols] / rows[i][enter];
        if (leave < 0 || ratio < best ||
            (ratio == best && basis[i] < basis[leave])) {
          leave = static_cast<int>(i);
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }
};

Rational evaluate(const std::map<int, Rational>& coeffs,
                  const std::vector<Rational>& x) {
  Rational v = 0;
  for (const auto& [var, c] : coeffs) v += c * x[var];
  return v;
}

bool satisfies(const LinearSystem& s, const std::vector<Rational>& x) {
  for (const auto& v : x)
    if (v < 0) return false;
  for (const auto& con : s.constraints) {
    Rational lhs = evaluate(con.coefficients, x);
    if (con.equality) {
      if (lhs != con.rhs) return false;
      continue;
    }
    switch (con.rel) {
      case Rel::GE: if (!(lhs >= con.rhs)) return false; break;
      case Rel::LE: if (!(lhs <= con.rhs)) return false; break;
      case Rel::GT: if (!(lhs > con.rhs)) return false; break;
      case Rel::LT: if (!(lhs < con.rhs)) return false; break;
    }
  }
  return true;
}

void require_closed(const LinearSystem& s) {
  for (const auto& con : s.constraints)
    if (con.strict())
      throw std::invalid_argument("strict row in a closed-system solve");
}

// Core two-phase solve; maximizes `objective` over the closed system.
LpOutcome solve(const std::map<int, Rational>& objective, const LinearSystem& s) {
  const int n = s.variable_count;
  const int m = static_cast<int>(s.constraints.size());

  // Normalized rows with rhs >= 0; kind: 0 = LE, 1 = GE, 2 = EQ.
  struct Row {
    std::vector<Rational> a;
    Rational b;
    int kind;
  };
  std::vector<Row> norm(m);
  for (int i = 0; i < m; ++i) {
    const auto& con = s.constraints[i];
    Row r;
    r.a.assign(n, Rational(0));
    for (const auto& [var, c] : con.coefficients) {
      if (var < 0 || var >= n) throw std::invalid_argument("variable index out of range");
      r.a[var] += c;
    }
    r.b = con.rhs;
    r.kind = con.equality ? 2 : (con.rel == Rel::GE ? 1 : 0);
    if (r.b < 0) {
      for (auto& c : r.a) c = -c;
      r.b = -r.b;
      if (r.kind == 0) r.kind = 1;
      else if (r.kind == 1) r.kind = 0;
    }
    norm[i] = std::move(r);
  }

  // Column layout: originals, then one slack/surplus per inequality row,
  // then artificials for GE/EQ rows.
  int slack_count = 0, artificial_count = 0;
  for (const auto& r : norm) {
    if (r.kind != 2) ++slack_count;
    if (r.kind != 0) ++artificial_count;
  }
  int ncols = n + slack_count + artificial_count;

  Tableau t;
  t.ncols = ncols;
  t.rows.assign(m, std::vector<Rational>(ncols + 1, Rational(0)));
  t.basis.assign(m, -1);
  t.blocked.assign(ncols, false);
  t.obj.assign(ncols + 1, Rational(0));

  int next_slack = n;
  int next_art = n + slack_count;
  std::vector<int> artificial_cols;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) t.rows[i][j] = norm[i].a[j];
    t.rows[i][ncols] = norm[i].b;
    if (norm[i].kind == 0) {
      t.rows[i][next_slack] = 1;
      t.basis[i] = next_slack++;
    } else {
      if (norm[i].kind == 1) t.rows[i][next_slack++] = -1;
      t.rows[i][next_art] = 1;
      t.basis[i] = next_art;
      artificial_cols.push_back(next_art++);
    }
  }

  // Phase 1: minimize the sum of artificials.
  if (!artificial_cols.empty()) {
    for (int c : artificial_cols) t.obj[c] = 1;
    for (int i = 0; i < m; ++i) {
      if (t.obj[t.basis[i]] != 0)
        for (int j = 0; j <= ncols; ++j) t.obj[j] -= t.rows[i][j];
    }
    t.run();  // bounded below by 0, never unbounded
    if (-t.obj[ncols] > 0) return {LpOutcome::Verdict::Infeasible, {}, {}};
    // Drive basic artificials out where possible; fully-zero rows are
    // redundant and keep their artificial basic at value 0.
    for (int i = 0; i < m; ++i) {
      if (t.basis[i] >= n + slack_count) {
        for (int j = 0; j < n + slack_count; ++j) {
          if (t.rows[i][j] != 0) {
            t.pivot(i, j);
            break;
          }
        }
      }
    }
    for (int c : artificial_cols) t.blocked[c] = true;
  }

  // Phase 2: minimize -objective.
  std::fill(t.obj.begin(), t.obj.end(), Rational(0));
  for (const auto& [var, c] : objective) {
    if (var < 0 || var >= n) throw std::invalid_argument("objective variable out of range");
    t.obj[var] -= c;
  }
  for (int i = 0; i < m; ++i) {
    if (t.obj[t.basis[i]] != 0) {
      Rational f = t.obj[t.basis[i]];
      for (int j = 0; j <= ncols; ++j) t.obj[j] -= f * t.rows[i][j];
    }
  }
  if (!t.run()) return {LpOutcome::Verdict::Unbounded, {}, {}};

  std::vector<Rational> x(n, Rational(0));
  for (int i = 0; i < m; ++i)
    if (t.basis[i] < n) x[t.basis[i]] = t.rows[i][ncols];

  LpOutcome out{LpOutcome::Verdict::Optimal, -t.obj[ncols], std::move(x)};
  if (!satisfies(s, out.point))
    throw SimplexError("internal error: optimal point fails exact re-verification");
  if (evaluate(objective, out.point) != out.value)
    throw SimplexError("internal error: objective value mismatch");
  return out;
}

}  // namespace

LpOutcome feasible(const LinearSystem& s) {
  require_closed(s);
  LpOutcome r = solve({}, s);
  if (r.verdict == LpOutcome::Verdict::Optimal)
    return {LpOutcome::Verdict::Feasible, {}, std::move(r.point)};
  return r;
}

LpOutcome maximize(const std::map<int, Rational>& objective, const LinearSystem& s) {
  require_closed(s);
  return solve(objective, s);
}

LpOutcome strict_feasible(const LinearSystem& s) {
  const int slack = s.variable_count;  // shared slack t for all strict rows
  LinearSystem relaxed;
  relaxed.variable_count = s.variable_count + 1;
  for (const auto& con : s.constraints) {
    LinearConstraint c = con;
    if (!con.equality && con.rel == Rel::LT) {
      c.rel = Rel::LE;
      c.coefficients[slack] += 1;  // a.x + t <= b
    } else if (!con.equality && con.rel == Rel::GT) {
      c.rel = Rel::GE;
      c.coefficients[slack] -= 1;  // a.x - t >= b
    }
    relaxed.constraints.push_back(std::move(c));
  }
  relaxed.constraints.push_back(LinearConstraint::le({{slack, Rational(1)}}, Rational(1)));

  LpOutcome r = maximize({{slack, Rational(1)}}, relaxed);
  if (r.verdict != LpOutcome::Verdict::Optimal || r.value <= 0)
    return {LpOutcome::Verdict::Infeasible, {}, {}};
  std::vector<Rational> x(r.point.begin(), r.point.begin() + s.variable_count);
  if (!satisfies(s, x))
    throw SimplexError("internal error: strict point fails exact re-verification");
  return {LpOutcome::Verdict::Feasible, {}, std::move(x)};
}

}  // namespace problogic

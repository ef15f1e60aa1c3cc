// Dense two-phase primal simplex.
//
// Pipeline: shift variables to zero lower bounds, append slack/surplus
// columns for Le/Ge rows, flip rows to a nonnegative right-hand side,
// equilibrate rows and columns by powers of two (exact in floating point),
// then run phase 1 on a full artificial basis and phase 2 on the priced-out
// cost row. The solution is mapped back to original units and verified
// against the residual bound before being reported Optimal.

#include "kam/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "kam/error.hpp"

namespace kam::lp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Nearest power of two to 1/v, as an exact scaling factor.
double pow2_inverse(double v) {
  if (v <= 0.0 || !std::isfinite(v)) return 1.0;
  int exp = 0;
  std::frexp(v, &exp);  // v = f * 2^exp, f in [0.5, 1)
  return std::ldexp(1.0, -exp + 1);
}

void validate(const LinearProgram& lp) {
  const std::size_t n = lp.num_vars();
  const std::size_t m = lp.num_rows();
  if (lp.a.size() != m || lp.row_sense.size() != m)
    throw Error(ErrorCode::InvalidArgument, "linear program row arrays disagree in length");
  if (!lp.lower_bounds.empty() && lp.lower_bounds.size() != n)
    throw Error(ErrorCode::InvalidArgument, "lower_bounds length does not match variable count");
  for (double v : lp.c)
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "non-finite objective coefficient");
  for (double v : lp.b)
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "non-finite right-hand side");
  for (double v : lp.lower_bounds)
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "non-finite lower bound");
  for (std::size_t r = 0; r < m; ++r) {
    if (lp.a[r].size() != n)
      throw Error(ErrorCode::InvalidArgument, "constraint row has wrong width");
    for (double v : lp.a[r])
      if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "non-finite constraint coefficient");
  }
}

}  // namespace

LpSolution solve(const LinearProgram& lp) {
  validate(lp);
  const std::size_t n = lp.num_vars();
  const std::size_t m = lp.num_rows();

  std::vector<double> lb(n, 0.0);
  if (!lp.lower_bounds.empty()) lb = lp.lower_bounds;

  // Shift to x' = x - lb >= 0.
  std::vector<double> b(m, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    double s = lp.b[r];
    for (std::size_t j = 0; j < n; ++j) s -= lp.a[r][j] * lb[j];
    b[r] = s;
  }

  const bool maximize = lp.objective_sense == ObjectiveSense::Max;
  std::vector<double> cost(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) cost[j] = maximize ? -lp.c[j] : lp.c[j];

  // Slack (+1) / surplus (-1) columns.
  std::size_t n_std = n;
  std::vector<int> slack_col(m, -1);
  for (std::size_t r = 0; r < m; ++r)
    if (lp.row_sense[r] != RowSense::Eq) slack_col[r] = static_cast<int>(n_std++);

  std::vector<std::vector<double>> A(m, std::vector<double>(n_std, 0.0));
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t j = 0; j < n; ++j) A[r][j] = lp.a[r][j];
    if (slack_col[r] >= 0)
      A[r][static_cast<std::size_t>(slack_col[r])] = lp.row_sense[r] == RowSense::Le ? 1.0 : -1.0;
  }
  for (std::size_t r = 0; r < m; ++r) {
    if (b[r] < 0.0) {
      b[r] = -b[r];
      for (double& v : A[r]) v = -v;
    }
  }

  // Equilibration, rows then columns.
  std::vector<double> cscale(n_std, 1.0);
  for (std::size_t r = 0; r < m; ++r) {
    double mx = 0.0;
    for (double v : A[r]) mx = std::max(mx, std::fabs(v));
    const double s = pow2_inverse(mx);
    if (s != 1.0) {
      for (double& v : A[r]) v *= s;
      b[r] *= s;
    }
  }
  for (std::size_t j = 0; j < n_std; ++j) {
    double mx = 0.0;
    for (std::size_t r = 0; r < m; ++r) mx = std::max(mx, std::fabs(A[r][j]));
    cscale[j] = pow2_inverse(mx);
    if (cscale[j] != 1.0)
      for (std::size_t r = 0; r < m; ++r) A[r][j] *= cscale[j];
  }
  std::vector<double> cs(n_std, 0.0);
  for (std::size_t j = 0; j < n; ++j) cs[j] = cost[j] * cscale[j];

  // Tableau with one artificial per row.
  const std::size_t n_tot = n_std + m;
  const std::size_t rhs = n_tot;
  std::vector<std::vector<double>> T(m, std::vector<double>(n_tot + 1, 0.0));
  std::vector<int> basis(m);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t j = 0; j < n_std; ++j) T[r][j] = A[r][j];
    T[r][n_std + r] = 1.0;
    T[r][rhs] = b[r];
    basis[r] = static_cast<int>(n_std + r);
  }
  std::vector<char> allowed(n_tot, 1);
  std::vector<char> inert(m, 0);

  // Reduced cost row; z[rhs] holds the negated objective.
  std::vector<double> z(n_tot + 1, 0.0);
  auto price_out = [&](const std::vector<double>& c_now) {
    for (std::size_t j = 0; j <= n_tot; ++j) z[j] = j < n_tot ? c_now[j] : 0.0;
    for (std::size_t r = 0; r < m; ++r) {
      const double cb = c_now[static_cast<std::size_t>(basis[r])];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j <= n_tot; ++j) z[j] -= cb * T[r][j];
    }
  };

  auto pivot = [&](std::size_t pr, std::size_t pc) {
    const double pv = T[pr][pc];
    for (double& v : T[pr]) v /= pv;
    T[pr][pc] = 1.0;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == pr) continue;
      const double f = T[r][pc];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= n_tot; ++j) T[r][j] -= f * T[pr][j];
      T[r][pc] = 0.0;
    }
    const double fz = z[pc];
    if (fz != 0.0) {
      for (std::size_t j = 0; j <= n_tot; ++j) z[j] -= fz * T[pr][j];
      z[pc] = 0.0;
    }
    basis[pr] = static_cast<int>(pc);
  };

  enum class Step { Optimal, Unbounded, Breakdown };
  auto run = [&](const std::vector<double>& c_now) -> Step {
    bool bland = false;
    std::size_t stall = 0;
    double best_obj = -z[rhs];
    const std::size_t stall_limit = 5 * (m + n_tot);
    const std::size_t iter_cap = 10000 + 200 * (m + n_tot);
    for (std::size_t iter = 0;; ++iter) {
      if (iter > iter_cap) return Step::Breakdown;
      if (iter > 0 && iter % 64 == 0) price_out(c_now);  // purge accumulated drift
      int enter = -1;
      if (!bland) {
        double best = -tol::kReducedCost;
        for (std::size_t j = 0; j < n_tot; ++j)
          if (allowed[j] && z[j] < best) { best = z[j]; enter = static_cast<int>(j); }
      } else {
        for (std::size_t j = 0; j < n_tot; ++j)
          if (allowed[j] && z[j] < -tol::kReducedCost) { enter = static_cast<int>(j); break; }
      }
      if (enter < 0) return Step::Optimal;
      const std::size_t pc = static_cast<std::size_t>(enter);

      double best_ratio = kInf;
      for (std::size_t r = 0; r < m; ++r) {
        if (inert[r] || T[r][pc] <= tol::kPivot) continue;
        best_ratio = std::min(best_ratio, T[r][rhs] / T[r][pc]);
      }
      if (best_ratio == kInf) {
        // A recession direction whose reduced cost sits inside the roundoff
        // band is flat, not improving; exact negation column pairs (split
        // free variables) produce these ghosts. Drop the column instead of
        // misreporting an unbounded ray.
        price_out(c_now);
        if (z[pc] >= -1e-7) {
          allowed[pc] = 0;
          continue;
        }
        return Step::Unbounded;
      }
      const double ratio_cut = best_ratio + 1e-12 * (1.0 + std::fabs(best_ratio));
      int leave = -1;
      for (std::size_t r = 0; r < m; ++r) {
        if (inert[r] || T[r][pc] <= tol::kPivot) continue;
        if (T[r][rhs] / T[r][pc] > ratio_cut) continue;
        if (leave < 0) { leave = static_cast<int>(r); continue; }
        const std::size_t lr = static_cast<std::size_t>(leave);
        if (bland) {
          if (basis[r] < basis[lr]) leave = static_cast<int>(r);
        } else if (T[r][pc] > T[lr][pc]) {  // near-tied ratios: larger pivot wins
          leave = static_cast<int>(r);
        }
      }
      pivot(static_cast<std::size_t>(leave), pc);

      const double obj = -z[rhs];
      if (obj < best_obj - 1e-12 * (1.0 + std::fabs(best_obj))) {
        best_obj = obj;
        stall = 0;
      } else if (!bland && ++stall > stall_limit) {
        bland = true;
      }
    }
  };

  // Phase 1: minimize the artificial sum.
  std::vector<double> c1(n_tot, 0.0);
  for (std::size_t j = n_std; j < n_tot; ++j) c1[j] = 1.0;
  price_out(c1);
  Step s1 = run(c1);
  if (s1 == Step::Breakdown)
    throw Error(ErrorCode::NumericalBreakdown, "phase-1 iteration cap exhausted");
  double bsum = 0.0;
  for (std::size_t r = 0; r < m; ++r) bsum += std::fabs(b[r]);
  if (-z[rhs] > tol::kFeasibility * (1.0 + bsum)) return LpSolution{LpStatus::Infeasible, {}, 0.0, {}};

  // Drive artificials out of the basis; rows that cannot pivot are redundant.
  for (std::size_t r = 0; r < m; ++r) {
    if (basis[r] < static_cast<int>(n_std)) continue;
    int col = -1;
    for (std::size_t j = 0; j < n_std; ++j)
      if (std::fabs(T[r][j]) > tol::kPivot) { col = static_cast<int>(j); break; }
    if (col >= 0) {
      pivot(r, static_cast<std::size_t>(col));
    } else {
      inert[r] = 1;
      for (double& v : T[r]) v = 0.0;
    }
  }
  for (std::size_t j = n_std; j < n_tot; ++j) allowed[j] = 0;

  // Phase 2.
  std::vector<double> c2(n_tot, 0.0);
  for (std::size_t j = 0; j < n_std; ++j) c2[j] = cs[j];
  price_out(c2);
  Step s2 = run(c2);
  if (s2 == Step::Breakdown)
    throw Error(ErrorCode::NumericalBreakdown, "phase-2 iteration cap exhausted");
  if (s2 == Step::Unbounded) return LpSolution{LpStatus::Unbounded, {}, 0.0, {}};

  // Map back: x = cscale .* x_std + lb.
  std::vector<double> x_std(n_std, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    if (inert[r] || basis[r] >= static_cast<int>(n_std)) continue;
    double v = T[r][rhs];
    if (v < 0.0 && v > -1e-11) v = 0.0;  // dust before column unscaling amplifies it
    x_std[static_cast<std::size_t>(basis[r])] = v;
  }

  LpSolution sol;
  sol.status = LpStatus::Optimal;
  sol.x.resize(n);
  for (std::size_t j = 0; j < n; ++j) sol.x[j] = x_std[j] * cscale[j] + lb[j];
  for (std::size_t r = 0; r < m; ++r)
    if (!inert[r] && basis[r] < static_cast<int>(n_std)) sol.basis.push_back(basis[r]);
  std::sort(sol.basis.begin(), sol.basis.end());

  // Residual verification in original units.
  double bmax = 0.0;
  for (double v : lp.b) bmax = std::max(bmax, std::fabs(v));
  const double row_tol = 1e-7 * (1.0 + bmax);
  for (std::size_t r = 0; r < m; ++r) {
    double lhs = 0.0;
    for (std::size_t j = 0; j < n; ++j) lhs += lp.a[r][j] * sol.x[j];
    const double gap = lhs - lp.b[r];
    const bool ok = lp.row_sense[r] == RowSense::Eq   ? std::fabs(gap) <= row_tol
                    : lp.row_sense[r] == RowSense::Le ? gap <= row_tol
                                                      : gap >= -row_tol;
    if (!ok) throw Error(ErrorCode::NumericalBreakdown, "optimal point fails residual check");
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (sol.x[j] < lb[j] - 1e-9)
      throw Error(ErrorCode::NumericalBreakdown, "optimal point violates a variable bound");
    sol.x[j] = std::max(sol.x[j], lb[j]);
  }

  double obj = 0.0;
  for (std::size_t j = 0; j < n; ++j) obj += lp.c[j] * sol.x[j];
  sol.objective = obj;
  return sol;
}

std::string dump(const LinearProgram& lp) {
  std::string out;
  char buf[64];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, " %.17g", v);
    out += buf;
  };
  std::snprintf(buf, sizeof buf, "lp rows=%zu cols=%zu sense=%s\n", lp.num_rows(), lp.num_vars(),
                lp.objective_sense == ObjectiveSense::Min ? "min" : "max");
  out += buf;
  out += "c";
  for (double v : lp.c) put(v);
  out += "\n";
  for (std::size_t r = 0; r < lp.num_rows(); ++r) {
    const char* s = lp.row_sense[r] == RowSense::Eq ? "=" : lp.row_sense[r] == RowSense::Le ? "<=" : ">=";
    std::snprintf(buf, sizeof buf, "row %zu %s", r, s);
    out += buf;
    for (double v : lp.a[r]) put(v);
    out += " |";
    put(lp.b[r]);
    out += "\n";
  }
  out += "lb";
  if (lp.lower_bounds.empty()) {
    for (std::size_t j = 0; j < lp.num_vars(); ++j) put(0.0);
  } else {
    for (double v : lp.lower_bounds) put(v);
  }
  out += "\n";
  return out;
}

}  // namespace kam::lp

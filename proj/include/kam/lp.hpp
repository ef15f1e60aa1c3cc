#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace kam::lp {

enum class RowSense { Eq, Le, Ge };
enum class ObjectiveSense { Min, Max };
enum class LpStatus { Optimal, Infeasible, Unbounded };

// Dense standard-form carrier: optimize c'x subject to a_i'x {=,<=,>=} b_i,
// x_j >= lower_bounds[j] (all zero when the vector is empty).
struct LinearProgram {
  ObjectiveSense objective_sense{ObjectiveSense::Min};
  std::vector<double> c;
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  std::vector<RowSense> row_sense;
  std::vector<double> lower_bounds;

  std::size_t num_vars() const noexcept { return c.size(); }
  std::size_t num_rows() const noexcept { return b.size(); }
};

struct LpSolution {
  LpStatus status{LpStatus::Infeasible};
  std::vector<double> x;     // original variables, valid when Optimal
  double objective{0.0};     // value of the stated objective at x, valid when Optimal
  std::vector<int> basis;    // basic column ids: 0..n-1 originals, then slack/surplus in row order
};

// Two-phase dense primal simplex. Dantzig pricing, Bland's rule after a
// stall of 5*(rows+cols) iterations. Deterministic for identical input.
// Throws Error{NumericalBreakdown} when the pivot tolerance is exhausted or
// the computed point fails the residual check (distinct from Infeasible).
LpSolution solve(const LinearProgram& lp);

// Plain-text fixed-format dump (row-major, 17 significant digits).
std::string dump(const LinearProgram& lp);

namespace tol {
inline constexpr double kFeasibility = 1e-9;
inline constexpr double kReducedCost = 1e-9;
inline constexpr double kPivot = 1e-10;
}  // namespace tol

}  // namespace kam::lp

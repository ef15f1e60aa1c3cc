#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "kam/error.hpp"
#include "kam/lp.hpp"
#include "support/bfs_oracle.hpp"
#include "support/random_lp.hpp"

using kam::lp::LinearProgram;
using kam::lp::LpStatus;
using kam::lp::ObjectiveSense;
using kam::lp::RowSense;
using testgen::random_small_lp;

namespace {

LinearProgram make(ObjectiveSense sense, std::vector<double> c,
                   std::vector<std::vector<double>> a, std::vector<double> b,
                   std::vector<RowSense> senses, std::vector<double> lb = {}) {
  LinearProgram lp;
  lp.objective_sense = sense;
  lp.c = std::move(c);
  lp.a = std::move(a);
  lp.b = std::move(b);
  lp.row_sense = std::move(senses);
  lp.lower_bounds = std::move(lb);
  return lp;
}

}  // namespace

TEST_CASE("vertex optimum of the unit simplex") {
  const auto lp = make(ObjectiveSense::Min, {-1.0, 0.0}, {{1.0, 1.0}}, {1.0}, {RowSense::Eq});
  const auto sol = kam::lp::solve(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.x[0] == doctest::Approx(1.0));
  CHECK(sol.objective == doctest::Approx(-1.0));
  CHECK(!sol.basis.empty());
}

TEST_CASE("negative right-hand side with nonnegative variables is infeasible") {
  const auto lp = make(ObjectiveSense::Min, {0.0, 0.0}, {{1.0, 1.0}}, {-1.0}, {RowSense::Eq});
  CHECK(kam::lp::solve(lp).status == LpStatus::Infeasible);
}

TEST_CASE("free improving ray is unbounded") {
  const auto lp = make(ObjectiveSense::Min, {-1.0, 0.0}, {{1.0, -1.0}}, {0.0}, {RowSense::Eq});
  CHECK(kam::lp::solve(lp).status == LpStatus::Unbounded);
}

TEST_CASE("lower bounds shift the optimum") {
  const auto lp = make(ObjectiveSense::Min, {1.0}, {{1.0}}, {10.0}, {RowSense::Le}, {3.0});
  const auto sol = kam::lp::solve(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.x[0] == doctest::Approx(3.0));
  CHECK(sol.objective == doctest::Approx(3.0));
}

TEST_CASE("maximization with inequality rows") {
  // max 3x + 2y, x + y <= 4, x <= 2
  const auto lp = make(ObjectiveSense::Max, {3.0, 2.0}, {{1.0, 1.0}, {1.0, 0.0}}, {4.0, 2.0},
                       {RowSense::Le, RowSense::Le});
  const auto sol = kam::lp::solve(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(10.0));
}

TEST_CASE("no-constraint edge cases") {
  LinearProgram lp;
  lp.c = {2.0, 1.5};
  const auto sol = kam::lp::solve(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(0.0));

  lp.c = {-1.0};
  CHECK(kam::lp::solve(lp).status == LpStatus::Unbounded);
}

TEST_CASE("dimension mismatch is rejected") {
  auto lp = make(ObjectiveSense::Min, {1.0, 1.0}, {{1.0}}, {1.0}, {RowSense::Eq});
  CHECK_THROWS_AS((void)kam::lp::solve(lp), kam::Error);
}

TEST_CASE("solved point satisfies the residual invariant") {
  std::mt19937_64 rng(7);
  int optimal_seen = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto lp = random_small_lp(rng);
    const auto sol = kam::lp::solve(lp);
    if (sol.status != LpStatus::Optimal) continue;
    ++optimal_seen;
    double bmax = 0.0;
    for (double v : lp.b) bmax = std::max(bmax, std::fabs(v));
    for (std::size_t r = 0; r < lp.num_rows(); ++r) {
      double lhs = 0.0;
      for (std::size_t j = 0; j < lp.num_vars(); ++j) lhs += lp.a[r][j] * sol.x[j];
      const double gap = lhs - lp.b[r];
      const double tol = 1e-7 * (1.0 + bmax);
      if (lp.row_sense[r] == RowSense::Eq) CHECK(std::fabs(gap) <= tol);
      if (lp.row_sense[r] == RowSense::Le) CHECK(gap <= tol);
      if (lp.row_sense[r] == RowSense::Ge) CHECK(gap >= -tol);
    }
    if (!lp.lower_bounds.empty())
      for (std::size_t j = 0; j < lp.num_vars(); ++j) CHECK(sol.x[j] >= lp.lower_bounds[j] - 1e-9);
  }
  CHECK(optimal_seen > 50);
}

TEST_CASE("row permutation leaves the objective unchanged") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto lp = random_small_lp(rng);
    auto permuted = lp;
    std::vector<std::size_t> perm(lp.num_rows());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    for (std::size_t i = 0; i < perm.size(); ++i) {
      permuted.a[i] = lp.a[perm[i]];
      permuted.b[i] = lp.b[perm[i]];
      permuted.row_sense[i] = lp.row_sense[perm[i]];
    }
    const auto s1 = kam::lp::solve(lp);
    const auto s2 = kam::lp::solve(permuted);
    CHECK(s1.status == s2.status);
    if (s1.status == LpStatus::Optimal)
      CHECK(std::fabs(s1.objective - s2.objective) <= 1e-9 * (1.0 + std::fabs(s1.objective)));
  }
}

TEST_CASE("simplex agrees with exhaustive basis enumeration") {
  std::mt19937_64 rng(23);
  int compared = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const auto lp = random_small_lp(rng);
    const auto expected = oracle::enumerate_best(lp);
    const auto sol = kam::lp::solve(lp);
    if (expected.feasible) {
      REQUIRE(sol.status == LpStatus::Optimal);
      CHECK(std::fabs(sol.objective - expected.objective) <= 1e-9);
      ++compared;
    } else {
      CHECK(sol.status == LpStatus::Infeasible);
    }
  }
  CHECK(compared >= 100);
}

TEST_CASE("dump is fixed-format and deterministic") {
  const auto lp = make(ObjectiveSense::Min, {1.0 / 3.0}, {{2.0}}, {5.0}, {RowSense::Ge});
  const auto text = kam::lp::dump(lp);
  CHECK(text.find("lp rows=1 cols=1 sense=min") != std::string::npos);
  CHECK(text.find("0.33333333333333331") != std::string::npos);  // 17 significant digits
  CHECK(text == kam::lp::dump(lp));
}

#pragma once

// Random small linear programs with strictly positive minimization costs, so
// every feasible instance is bounded and comparable against the enumeration
// oracle.

#include <random>

#include "kam/lp.hpp"

namespace testgen {

inline kam::lp::LinearProgram random_small_lp(std::mt19937_64& rng) {
  using kam::lp::ObjectiveSense;
  using kam::lp::RowSense;
  std::uniform_int_distribution<std::size_t> nd(1, 8), md(1, 4);
  std::uniform_real_distribution<double> coef(-3.0, 6.0), rhs(0.0, 10.0), cost(0.1, 5.0);
  std::uniform_int_distribution<int> sense(0, 2);
  std::bernoulli_distribution with_lb(0.3);
  const std::size_t n = nd(rng), m = md(rng);
  kam::lp::LinearProgram lp;
  lp.objective_sense = ObjectiveSense::Min;
  lp.c.resize(n);
  for (auto& v : lp.c) v = cost(rng);
  lp.a.assign(m, std::vector<double>(n));
  lp.b.resize(m);
  lp.row_sense.resize(m);
  for (std::size_t r = 0; r < m; ++r) {
    for (auto& v : lp.a[r]) v = coef(rng);
    lp.b[r] = rhs(rng);
    const int s = sense(rng);
    lp.row_sense[r] = s == 0 ? RowSense::Eq : s == 1 ? RowSense::Le : RowSense::Ge;
  }
  if (with_lb(rng)) {
    std::uniform_real_distribution<double> lbd(-1.0, 1.0);
    lp.lower_bounds.resize(n);
    for (auto& v : lp.lower_bounds) v = lbd(rng);
  }
  return lp;
}

}  // namespace testgen

#include "kam/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "kam/error.hpp"
#include "kam/lp.hpp"

namespace kam {

namespace {

// Shared builder for the one-sided models. Variables (lambda_1..n, s-_1..m,
// s+_1..p), no scaling variable; the objective constant is added afterwards.
struct SideSetup {
  NormalizedWeights w;
  EpsilonVector eps;
};

SideSetup side_setup(const Dataset& ds, const KamConfig& cfg, std::size_t firm, bool input_side) {
  SideSetup s;
  s.w = make_weights(ds, cfg.weights, firm);
  s.eps = make_epsilon(ds, s.w, cfg.epsilon, firm);
  if (input_side)
    s.eps.out.assign(ds.p(), 0.0);
  else
    s.eps.in.assign(ds.m(), 0.0);
  return s;
}

lp::LinearProgram side_program(const Dataset& ds, const SideSetup& s, std::size_t firm,
                               bool input_side) {
  const std::size_t n = ds.n(), m = ds.m(), p = ds.p();
  lp::LinearProgram prob;
  prob.c.assign(n + m + p, 0.0);
  if (input_side) {
    prob.objective_sense = lp::ObjectiveSense::Min;
    for (std::size_t j = 0; j < m; ++j) prob.c[n + j] = -s.w.v_in[j];
  } else {
    prob.objective_sense = lp::ObjectiveSense::Max;
    for (std::size_t k = 0; k < p; ++k) prob.c[n + m + k] = s.w.v_out[k];
  }
  for (std::size_t j = 0; j < m; ++j) {
    prob.a.emplace_back(n + m + p, 0.0);
    auto& row = prob.a.back();
    for (std::size_t i = 0; i < n; ++i) row[i] = ds.input(i, j);
    row[n + j] = 1.0;
    prob.row_sense.push_back(lp::RowSense::Eq);
    prob.b.push_back(ds.input(firm, j) + s.eps.in[j]);
  }
  for (std::size_t k = 0; k < p; ++k) {
    prob.a.emplace_back(n + m + p, 0.0);
    auto& row = prob.a.back();
    for (std::size_t i = 0; i < n; ++i) row[i] = ds.output(i, k);
    row[n + m + k] = -1.0;
    prob.row_sense.push_back(lp::RowSense::Eq);
    prob.b.push_back(ds.output(firm, k) - s.eps.out[k]);
  }
  return prob;
}

SideResult run_side(const Dataset& ds, const KamConfig& cfg, std::size_t firm, bool input_side) {
  const std::size_t n = ds.n(), m = ds.m(), p = ds.p();
  const SideSetup s = side_setup(ds, cfg, firm, input_side);
  const lp::LinearProgram prob = side_program(ds, s, firm, input_side);
  const lp::LpSolution sol = lp::solve(prob);
  if (sol.status != lp::LpStatus::Optimal)
    throw Error(ErrorCode::SolveFailed, sol.status == lp::LpStatus::Infeasible
                                            ? "reduced program reported infeasible"
                                            : "reduced program reported unbounded");
  SideResult r;
  r.slack_in.assign(sol.x.begin() + static_cast<long>(n), sol.x.begin() + static_cast<long>(n + m));
  r.slack_out.assign(sol.x.begin() + static_cast<long>(n + m),
                     sol.x.begin() + static_cast<long>(n + m + p));
  double constant = 0.0;
  if (input_side) {
    for (std::size_t j = 0; j < m; ++j) constant += s.w.v_in[j] * (ds.input(firm, j) + s.eps.in[j]);
    r.target.resize(m);
    for (std::size_t j = 0; j < m; ++j)
      r.target[j] = ds.input(firm, j) + s.eps.in[j] - r.slack_in[j];
  } else {
    for (std::size_t k = 0; k < p; ++k) constant += s.w.v_out[k] * (ds.output(firm, k) - s.eps.out[k]);
    r.target.resize(p);
    for (std::size_t k = 0; k < p; ++k)
      r.target[k] = ds.output(firm, k) - s.eps.out[k] + r.slack_out[k];
  }
  r.value = constant + sol.objective;
  return r;
}

}  // namespace

SideResult cf_score(const Dataset& ds, const KamConfig& cfg, std::size_t firm) {
  return run_side(ds, cfg, firm, /*input_side=*/true);
}

SideResult rf_score(const Dataset& ds, const KamConfig& cfg, std::size_t firm) {
  return run_side(ds, cfg, firm, /*input_side=*/false);
}

DominanceReport partial_dominance(const Dataset& ds, const WeightScheme& weights) {
  if (weights.kind == WeightKind::Sbm)
    throw Error(ErrorCode::SbmWeightsRejected,
                "per-firm SBM weights give every firm the same ratio p/m; use minimum, average or "
                "custom weights");
  const RawWeights w = scheme_weights(ds, weights, std::nullopt);

  DominanceReport rep;
  rep.ratios.resize(ds.n());
  for (std::size_t i = 0; i < ds.n(); ++i) {
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < ds.p(); ++k) num += w.w_out[k] * ds.output(i, k);
    for (std::size_t j = 0; j < ds.m(); ++j) den += w.w_in[j] * ds.input(i, j);
    if (!(den > 0.0))
      throw Error(ErrorCode::InvalidDataset, "firm '" + ds.firm(i) + "' has zero weighted inputs");
    rep.ratios[i] = num / den;
  }
  rep.ordering.resize(ds.n());
  std::iota(rep.ordering.begin(), rep.ordering.end(), std::size_t{0});
  std::stable_sort(rep.ordering.begin(), rep.ordering.end(), [&](std::size_t a, std::size_t b) {
    return rep.ratios[a] > rep.ratios[b];
  });
  const auto same = [&](double a, double b) {
    return std::fabs(a - b) <= 1e-12 * std::max(1.0, std::max(std::fabs(a), std::fabs(b)));
  };
  for (std::size_t i = 0; i < rep.ordering.size();) {
    std::vector<std::size_t> group{rep.ordering[i]};
    std::size_t j = i + 1;
    while (j < rep.ordering.size() && same(rep.ratios[rep.ordering[j]], rep.ratios[rep.ordering[i]]))
      group.push_back(rep.ordering[j++]);
    rep.ties.push_back(std::move(group));
    i = j;
  }
  return rep;
}

std::vector<std::size_t> rank_by_score(const Dataset& ds, const std::vector<KamResult>& results,
                                       double epsilon) {
  if (!(epsilon > 0.0))
    throw Error(ErrorCode::RankingAtZeroEpsilon,
                "scores at epsilon = 0 only separate technically efficient firms and must not be "
                "used to rank");
  if (results.size() != ds.n())
    throw Error(ErrorCode::InvalidArgument, "result list does not cover every firm");
  std::vector<std::size_t> order(results.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (results[a].score != results[b].score) return results[a].score > results[b].score;
    return ds.firm(results[a].firm) < ds.firm(results[b].firm);
  });
  return order;
}

ProductivityReport classify_productivity(const Dataset& ds, const std::vector<double>& eff_scores,
                                         const ProductivityThresholds& thresholds) {
  const std::size_t n = ds.n();
  if (eff_scores.size() != n)
    throw Error(ErrorCode::InvalidArgument, "every firm needs an efficiency score");

  std::vector<std::size_t> goal_outputs;
  for (std::size_t k = 0; k < ds.p(); ++k)
    if (ds.output_schema(k).goal) goal_outputs.push_back(k);
  if (goal_outputs.empty())
    throw Error(ErrorCode::NoGoalDefined, "no output factor carries a goal");

  ProductivityReport rep;
  rep.efficiency_threshold = thresholds.efficiency;
  rep.effectiveness_threshold = thresholds.effectiveness;

  double max_score = 0.0;
  for (double s : eff_scores) max_score = std::max(max_score, s);
  if (!(max_score > 0.0))
    throw Error(ErrorCode::InvalidArgument, "efficiency scores must contain a positive entry");
  rep.rel_efficiency.resize(n);
  for (std::size_t i = 0; i < n; ++i) rep.rel_efficiency[i] = eff_scores[i] / max_score;

  // Attainment: min over goal-bearing outputs of value/goal. A zero goal is
  // trivially met and does not enter the minimum.
  std::vector<double> attainment(n, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k : goal_outputs) {
      const double g = *ds.output_schema(k).goal;
      if (g > 0.0) attainment[i] = std::min(attainment[i], ds.output(i, k) / g);
    }
  for (double& a : attainment)
    if (!std::isfinite(a)) a = 1.0;  // only zero goals

  rep.effective.resize(n);
  for (std::size_t i = 0; i < n; ++i) rep.effective[i] = attainment[i] >= 1.0 - 1e-12;

  double max_att = 0.0;
  for (double a : attainment) max_att = std::max(max_att, a);
  rep.rel_effectiveness.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    rep.rel_effectiveness[i] = max_att > 0.0 ? attainment[i] / max_att : 0.0;

  rep.classes.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const bool productive = rep.effective[i] && rep.rel_efficiency[i] >= thresholds.efficiency &&
                            rep.rel_effectiveness[i] >= thresholds.effectiveness;
    rep.classes[i] = productive ? Productivity::Productive : Productivity::NonProductive;
  }
  return rep;
}

}  // namespace kam

// Builders and drivers for the epsilon-KAM linear programs.
//
// Primal variables are ordered (lambda_1..n, s_in_1..m, s_out_1..p, t) with
// the Charnes-Cooper scaling t as the last column. The dual is assembled
// separately from the data so that the strong-duality check exercises two
// independent constructions.

#include "kam/model.hpp"

#include <cmath>
#include <cstdlib>
#include <iostream>

namespace kam {

namespace {

bool lp_debug_enabled() {
  const char* v = std::getenv("KAM_LP_DEBUG");
  return v != nullptr && v[0] == '1' && v[1] == '\0';
}

struct Prepared {
  NormalizedWeights w;
  EpsilonVector eps;
  UncontrollableSpec unc;
  double cx{0.0};  // sum_j V-_j (x_lj + eps-_j)
  double cy{0.0};  // sum_k V+_k (y_lk - eps+_k)
};

Prepared prepare(const Dataset& ds, const KamConfig& cfg, std::size_t l) {
  Prepared pr;
  pr.w = make_weights(ds, cfg.weights, l);
  pr.eps = make_epsilon(ds, pr.w, cfg.epsilon, l);
  pr.unc = resolve_uncontrollable(ds, cfg);
  for (std::size_t j = 0; j < ds.m(); ++j) pr.cx += pr.w.v_in[j] * (ds.input(l, j) + pr.eps.in[j]);
  for (std::size_t k = 0; k < ds.p(); ++k) pr.cy += pr.w.v_out[k] * (ds.output(l, k) - pr.eps.out[k]);
  return pr;
}

}  // namespace

UncontrollableSpec resolve_uncontrollable(const Dataset& ds, const KamConfig& cfg) {
  UncontrollableSpec unc;
  if (cfg.uncontrollable) {
    unc = *cfg.uncontrollable;
    if (unc.input_unc.size() != ds.m() || unc.input_mode.size() != ds.m() ||
        unc.output_unc.size() != ds.p() || unc.output_mode.size() != ds.p())
      throw Error(ErrorCode::InvalidArgument, "uncontrollable spec does not match factor counts");
  } else {
    unc.input_unc.resize(ds.m());
    unc.input_mode.resize(ds.m(), UncontrollableMode::Fixed);
    unc.output_unc.resize(ds.p());
    unc.output_mode.resize(ds.p(), UncontrollableMode::Fixed);
    for (std::size_t j = 0; j < ds.m(); ++j) {
      unc.input_unc[j] = !ds.input_schema(j).controllable;
      unc.input_mode[j] = ds.input_schema(j).uncontrollable_mode;
    }
    for (std::size_t k = 0; k < ds.p(); ++k) {
      unc.output_unc[k] = !ds.output_schema(k).controllable;
      unc.output_mode[k] = ds.output_schema(k).uncontrollable_mode;
    }
  }
  if (cfg.mode_override) {
    for (std::size_t j = 0; j < ds.m(); ++j)
      if (unc.input_unc[j]) unc.input_mode[j] = *cfg.mode_override;
    for (std::size_t k = 0; k < ds.p(); ++k)
      if (unc.output_unc[k]) unc.output_mode[k] = *cfg.mode_override;
  }
  return unc;
}

lp::LinearProgram build_primal(const Dataset& ds, const KamConfig& cfg, std::size_t firm) {
  const std::size_t n = ds.n(), m = ds.m(), p = ds.p();
  const Prepared pr = prepare(ds, cfg, firm);
  const std::size_t var_t = n + m + p;
  const std::size_t nv = var_t + 1;

  lp::LinearProgram prob;
  prob.objective_sense = lp::ObjectiveSense::Min;
  prob.c.assign(nv, 0.0);
  prob.c[var_t] = pr.cx;
  for (std::size_t j = 0; j < m; ++j) prob.c[n + j] = -pr.w.v_in[j];

  auto add_row = [&](lp::RowSense sense, double rhs) -> std::vector<double>& {
    prob.a.emplace_back(nv, 0.0);
    prob.row_sense.push_back(sense);
    prob.b.push_back(rhs);
    return prob.a.back();
  };

  // Normalization: sum_k V+_k s+_k + cy * t = 1.
  {
    auto& row = add_row(lp::RowSense::Eq, 1.0);
    for (std::size_t k = 0; k < p; ++k) row[n + m + k] = pr.w.v_out[k];
    row[var_t] = pr.cy;
  }
  // Inputs: sum_i lambda_i x_ij + s-_j - t (x_lj + eps-_j) = 0.
  for (std::size_t j = 0; j < m; ++j) {
    auto& row = add_row(lp::RowSense::Eq, 0.0);
    for (std::size_t i = 0; i < n; ++i) row[i] = ds.input(i, j);
    row[n + j] = 1.0;
    row[var_t] = -(ds.input(firm, j) + pr.eps.in[j]);
  }
  // Outputs: sum_i lambda_i y_ik - s+_k - t (y_lk - eps+_k) = 0.
  for (std::size_t k = 0; k < p; ++k) {
    auto& row = add_row(lp::RowSense::Eq, 0.0);
    for (std::size_t i = 0; i < n; ++i) row[i] = ds.output(i, k);
    row[n + m + k] = -1.0;
    row[var_t] = -(ds.output(firm, k) - pr.eps.out[k]);
  }
  // Uncontrollable inputs: s-_j {<=,=} t eps-_j.
  for (std::size_t j = 0; j < m; ++j) {
    if (!pr.unc.input_unc[j]) continue;
    auto& row = add_row(pr.unc.input_mode[j] == UncontrollableMode::Fixed ? lp::RowSense::Eq
                                                                          : lp::RowSense::Le,
                        0.0);
    row[n + j] = 1.0;
    row[var_t] = -pr.eps.in[j];
  }
  // Uncontrollable outputs: s+_k {>=,=} t eps+_k.
  for (std::size_t k = 0; k < p; ++k) {
    if (!pr.unc.output_unc[k]) continue;
    auto& row = add_row(pr.unc.output_mode[k] == UncontrollableMode::Fixed ? lp::RowSense::Eq
                                                                           : lp::RowSense::Ge,
                        0.0);
    row[n + m + k] = 1.0;
    row[var_t] = -pr.eps.out[k];
  }

  prob.lower_bounds.assign(nv, 0.0);
  prob.lower_bounds[var_t] = kScalingFloor;
  return prob;
}

DualCertificate solve_dual(const Dataset& ds, const KamConfig& cfg, std::size_t firm) {
  const std::size_t n = ds.n(), m = ds.m(), p = ds.p();
  const Prepared pr = prepare(ds, cfg, firm);

  // Column layout. tau >= 0 (always admissible: tau = 0, w- = V-, w+ = 0 is
  // feasible). w-_j and w+_k are split into positive/negative parts for
  // uncontrollable factors, whose bound rows carry the extra multiplier g/h;
  // g is <= 0 under Bounded (stored negated) and free under Fixed, h is the
  // mirror image on the output side.
  std::size_t nv = 0;
  const std::size_t col_tau = nv++;
  std::vector<std::size_t> col_w_in(m), col_w_in_neg(m, SIZE_MAX);
  for (std::size_t j = 0; j < m; ++j) {
    col_w_in[j] = nv++;
    if (pr.unc.input_unc[j]) col_w_in_neg[j] = nv++;
  }
  std::vector<std::size_t> col_w_out(p), col_w_out_neg(p, SIZE_MAX);
  for (std::size_t k = 0; k < p; ++k) {
    col_w_out[k] = nv++;
    if (pr.unc.output_unc[k]) col_w_out_neg[k] = nv++;
  }
  std::vector<std::size_t> col_g(m, SIZE_MAX), col_g_neg(m, SIZE_MAX);
  for (std::size_t j = 0; j < m; ++j) {
    if (!pr.unc.input_unc[j]) continue;
    col_g[j] = nv++;
    if (pr.unc.input_mode[j] == UncontrollableMode::Fixed) col_g_neg[j] = nv++;
  }
  std::vector<std::size_t> col_h(p, SIZE_MAX), col_h_neg(p, SIZE_MAX);
  for (std::size_t k = 0; k < p; ++k) {
    if (!pr.unc.output_unc[k]) continue;
    col_h[k] = nv++;
    if (pr.unc.output_mode[k] == UncontrollableMode::Fixed) col_h_neg[k] = nv++;
  }

  lp::LinearProgram dual;
  dual.objective_sense = lp::ObjectiveSense::Max;
  dual.c.assign(nv, 0.0);
  dual.c[col_tau] = 1.0;
  dual.lower_bounds.assign(nv, 0.0);
  // Plain lower bound w-_j >= V-_j for controllable inputs.
  for (std::size_t j = 0; j < m; ++j)
    if (!pr.unc.input_unc[j]) dual.lower_bounds[col_w_in[j]] = pr.w.v_in[j];

  auto add_row = [&](lp::RowSense sense, double rhs) -> std::vector<double>& {
    dual.a.emplace_back(nv, 0.0);
    dual.row_sense.push_back(sense);
    dual.b.push_back(rhs);
    return dual.a.back();
  };
  auto put = [&](std::vector<double>& row, std::size_t pos, std::size_t neg, double coef) {
    row[pos] += coef;
    if (neg != SIZE_MAX) row[neg] -= coef;
  };

  // Objective row of the primal scaling variable:
  // tau cy + sum_j w-_j (x_lj + eps-_j) - sum_k w+_k (y_lk - eps+_k)
  //        - sum_{J_u} g_j eps-_j - sum_{K_u} h_k eps+_k = cx.
  {
    auto& row = add_row(lp::RowSense::Eq, pr.cx);
    row[col_tau] = pr.cy;
    for (std::size_t j = 0; j < m; ++j)
      put(row, col_w_in[j], col_w_in_neg[j], ds.input(firm, j) + pr.eps.in[j]);
    for (std::size_t k = 0; k < p; ++k)
      put(row, col_w_out[k], col_w_out_neg[k], -(ds.output(firm, k) - pr.eps.out[k]));
    for (std::size_t j = 0; j < m; ++j) {
      if (col_g[j] == SIZE_MAX) continue;
      const double sign = pr.unc.input_mode[j] == UncontrollableMode::Bounded ? 1.0 : -1.0;
      put(row, col_g[j], col_g_neg[j], sign * pr.eps.in[j]);
    }
    for (std::size_t k = 0; k < p; ++k) {
      if (col_h[k] == SIZE_MAX) continue;
      put(row, col_h[k], col_h_neg[k], -pr.eps.out[k]);
    }
  }
  // One row per firm: sum_k w+_k y_ik - sum_j w-_j x_ij <= 0.
  for (std::size_t i = 0; i < n; ++i) {
    auto& row = add_row(lp::RowSense::Le, 0.0);
    for (std::size_t k = 0; k < p; ++k) put(row, col_w_out[k], col_w_out_neg[k], ds.output(i, k));
    for (std::size_t j = 0; j < m; ++j) put(row, col_w_in[j], col_w_in_neg[j], -ds.input(i, j));
  }
  // Uncontrollable input bound rows: w-_j - g_j >= V-_j.
  for (std::size_t j = 0; j < m; ++j) {
    if (!pr.unc.input_unc[j]) continue;
    auto& row = add_row(lp::RowSense::Ge, pr.w.v_in[j]);
    put(row, col_w_in[j], col_w_in_neg[j], 1.0);
    const double sign = pr.unc.input_mode[j] == UncontrollableMode::Bounded ? 1.0 : -1.0;
    put(row, col_g[j], col_g_neg[j], sign);  // -g_j with the stored orientation
  }
  // Output bound rows: w+_k - tau V+_k (- h_k) >= 0.
  for (std::size_t k = 0; k < p; ++k) {
    auto& row = add_row(lp::RowSense::Ge, 0.0);
    put(row, col_w_out[k], col_w_out_neg[k], 1.0);
    row[col_tau] = -pr.w.v_out[k];
    if (col_h[k] != SIZE_MAX) put(row, col_h[k], col_h_neg[k], -1.0);
  }

  if (lp_debug_enabled()) std::cerr << lp::dump(dual);
  const lp::LpSolution sol = lp::solve(dual);
  if (sol.status != lp::LpStatus::Optimal)
    throw Error(ErrorCode::SolveFailed, sol.status == lp::LpStatus::Infeasible
                                            ? "dual program reported infeasible"
                                            : "dual program reported unbounded");

  DualCertificate cert;
  cert.tau = sol.x[col_tau];
  cert.w_in.resize(m);
  cert.w_out.resize(p);
  for (std::size_t j = 0; j < m; ++j) {
    cert.w_in[j] = sol.x[col_w_in[j]];
    if (col_w_in_neg[j] != SIZE_MAX) cert.w_in[j] -= sol.x[col_w_in_neg[j]];
  }
  for (std::size_t k = 0; k < p; ++k) {
    cert.w_out[k] = sol.x[col_w_out[k]];
    if (col_w_out_neg[k] != SIZE_MAX) cert.w_out[k] -= sol.x[col_w_out_neg[k]];
  }
  return cert;
}

KamResult evaluate(const Dataset& ds, const KamConfig& cfg, std::size_t firm) {
  const std::size_t n = ds.n(), m = ds.m(), p = ds.p();
  const Prepared pr = prepare(ds, cfg, firm);
  const lp::LinearProgram prob = build_primal(ds, cfg, firm);
  if (lp_debug_enabled()) std::cerr << lp::dump(prob);

  const lp::LpSolution sol = lp::solve(prob);
  if (sol.status != lp::LpStatus::Optimal)
    throw Error(ErrorCode::SolveFailed, sol.status == lp::LpStatus::Infeasible
                                            ? "evaluation program reported infeasible"
                                            : "evaluation program reported unbounded");

  const std::size_t var_t = n + m + p;
  const double t = sol.x[var_t];
  if (t <= kScalingFloor * 1.5)
    throw Error(ErrorCode::DegenerateScaling,
                "scaling variable pinned at its floor for firm '" + ds.firm(firm) + "'");

  KamResult r;
  r.firm = firm;
  r.score = sol.objective;
  r.t_star = t;
  r.lambda.resize(n);
  for (std::size_t i = 0; i < n; ++i) r.lambda[i] = sol.x[i] / t;
  r.slack_in.resize(m);
  r.slack_out.resize(p);
  r.target_in.resize(m);
  r.target_out.resize(p);
  for (std::size_t j = 0; j < m; ++j) {
    r.slack_in[j] = sol.x[n + j] / t;
    r.target_in[j] = ds.input(firm, j) + pr.eps.in[j] - r.slack_in[j];
  }
  for (std::size_t k = 0; k < p; ++k) {
    r.slack_out[k] = sol.x[n + m + k] / t;
    r.target_out[k] = ds.output(firm, k) - pr.eps.out[k] + r.slack_out[k];
  }

  const DualCertificate cert = solve_dual(ds, cfg, firm);
  r.dual_tau = cert.tau;
  r.dual_w_in = cert.w_in;
  r.dual_w_out = cert.w_out;
  return r;
}

std::vector<KamOutcome> evaluate_all(const Dataset& ds, const KamConfig& cfg) {
  std::vector<KamOutcome> out(ds.n());
  for (std::size_t l = 0; l < ds.n(); ++l) {
    try {
      out[l].result = evaluate(ds, cfg, l);
    } catch (const Error& e) {
      out[l].error_code = e.code();
      out[l].error_message = e.what();
    }
  }
  return out;
}

}  // namespace kam

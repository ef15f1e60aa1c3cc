#include "kam/reproduction.hpp"

#include <cmath>
#include <cstdio>

#include "kam/airport_case.hpp"
#include "kam/error.hpp"
#include "kam/report.hpp"
#include "kam/schemes.hpp"

namespace kam::airport_case {

namespace {

constexpr double kScoreTol = 5e-5;
constexpr double kTargetRelTol = 1e-3;

KamConfig benchmark_config(double epsilon, UncontrollableMode mode) {
  KamConfig cfg;
  cfg.weights.kind = WeightKind::Sbm;
  cfg.epsilon.kind = EpsilonKind::PerFirm;
  cfg.epsilon.epsilon = epsilon;
  cfg.mode_override = mode;
  return cfg;
}

std::vector<KamResult> solve_all(const Dataset& ds, const KamConfig& cfg) {
  std::vector<KamResult> out;
  for (const auto& outcome : evaluate_all(ds, cfg)) {
    if (!outcome.ok()) throw Error(*outcome.error_code, outcome.error_message);
    out.push_back(*outcome.result);
  }
  return out;
}

bool rel_close(double a, double b, double tol) {
  return std::fabs(a - b) <= tol * std::max({1.0, std::fabs(a), std::fabs(b)});
}

// Target invariants used by the fallback branch: the target reconstructs
// from the intensities and its weighted output/input ratio does not fall
// below the firm's own ratio (which is 1 under the firm-relative prices).
bool target_invariants_hold(const Dataset& ds, const KamConfig& cfg, const KamResult& r) {
  const NormalizedWeights w = make_weights(ds, cfg.weights, r.firm);
  for (std::size_t j = 0; j < ds.m(); ++j) {
    double combo = 0.0;
    for (std::size_t i = 0; i < ds.n(); ++i) combo += r.lambda[i] * ds.input(i, j);
    if (!rel_close(combo, r.target_in[j], 1e-6)) return false;
  }
  for (std::size_t k = 0; k < ds.p(); ++k) {
    double combo = 0.0;
    for (std::size_t i = 0; i < ds.n(); ++i) combo += r.lambda[i] * ds.output(i, k);
    if (!rel_close(combo, r.target_out[k], 1e-6)) return false;
  }
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < ds.p(); ++k) num += w.v_out[k] * r.target_out[k];
  for (std::size_t j = 0; j < ds.m(); ++j) den += w.v_in[j] * r.target_in[j];
  return den > 0.0 && num / den >= 1.0 - 1e-9;
}

std::string scores_csv(const Dataset& ds, const double scores[4][8]) {
  std::string out = "epsilon";
  for (std::size_t i = 0; i < ds.n(); ++i) out += "," + ds.firm(i);
  out += "\n";
  char buf[64];
  for (std::size_t e = 0; e < kEpsilons.size(); ++e) {
    std::snprintf(buf, sizeof buf, "%g", kEpsilons[e]);
    out += buf;
    for (std::size_t i = 0; i < 8; ++i) {
      std::snprintf(buf, sizeof buf, ",%.5f", scores[e][i]);
      out += buf;
    }
    out += "\n";
  }
  return out;
}

}  // namespace

Reproduction run_reproduction() {
  Reproduction rep;
  const Dataset ds = dataset();

  double got_scores[2][4][8] = {};
  std::vector<KamResult> targets_run[2];
  const UncontrollableMode modes[2] = {UncontrollableMode::Fixed, UncontrollableMode::Bounded};
  const char* mode_name[2] = {"fixed", "bounded"};

  for (int mi = 0; mi < 2; ++mi) {
    for (std::size_t e = 0; e < kEpsilons.size(); ++e) {
      const auto results = solve_all(ds, benchmark_config(kEpsilons[e], modes[mi]));
      for (std::size_t i = 0; i < 8; ++i) got_scores[mi][e][i] = results[i].score;
      if (kEpsilons[e] == 0.0001) targets_run[mi] = results;
    }
  }

  // Score checks, both modes.
  for (int mi = 0; mi < 2; ++mi) {
    const auto& ref = mi == 0 ? kScoresFixed : kScoresBounded;
    int bad = 0;
    double worst = 0.0;
    for (std::size_t e = 0; e < 4; ++e)
      for (std::size_t i = 0; i < 8; ++i) {
        const double d = std::fabs(got_scores[mi][e][i] - ref[e][i]);
        worst = std::max(worst, d);
        if (d > kScoreTol) ++bad;
      }
    char detail[96];
    std::snprintf(detail, sizeof detail, "%d/32 cells within %.0e, worst |diff| %.2e", 32 - bad,
                  kScoreTol, worst);
    rep.checks.push_back({std::string("scores (") + mode_name[mi] + ")", bad == 0, detail});
  }

  // Target checks at epsilon = 1e-4.
  for (int mi = 0; mi < 2; ++mi) {
    const auto& ref = mi == 0 ? kTargetsFixed : kTargetsBounded;
    const auto& ref_scores = mi == 0 ? kScoresFixed : kScoresBounded;
    const KamConfig cfg = benchmark_config(0.0001, modes[mi]);
    int matched = 0, fallback_needed = 0, failed = 0;
    for (std::size_t i = 0; i < 8; ++i) {
      const KamResult& r = targets_run[mi][i];
      bool row_mismatch = false;
      for (std::size_t c = 0; c < 7; ++c) {
        const double got = c < 4 ? r.target_in[c] : r.target_out[c - 4];
        if (rel_close(got, ref[i][c], kTargetRelTol)) ++matched;
        else row_mismatch = true;
      }
      if (row_mismatch) {
        ++fallback_needed;
        const bool score_ok = std::fabs(r.score - ref_scores[1][i]) <= kScoreTol;
        if (!score_ok || !target_invariants_hold(ds, cfg, r)) ++failed;
      }
    }
    // Runway column: pinned under fixed, never below the data under bounded.
    bool runway_ok = true;
    for (std::size_t i = 0; i < 8; ++i) {
      const double data = ds.input(i, 3), got = targets_run[mi][i].target_in[3];
      if (mi == 0 ? !rel_close(got, data, 1e-9) : got < data - 1e-9 * data) runway_ok = false;
    }
    char detail[128];
    std::snprintf(detail, sizeof detail,
                  "%d/56 cells within %.0e; %d firms via fallback (score+invariants), %d failed; "
                  "runway column %s",
                  matched, kTargetRelTol, fallback_needed, failed, runway_ok ? "ok" : "violated");
    rep.checks.push_back(
        {std::string("targets (") + mode_name[mi] + ")", failed == 0 && runway_ok, detail});
  }

  rep.scores_fixed_csv = scores_csv(ds, got_scores[0]);
  rep.scores_bounded_csv = scores_csv(ds, got_scores[1]);
  rep.targets_fixed_csv = format_targets(ds, targets_run[0], ReportFormat::Csv);
  rep.targets_bounded_csv = format_targets(ds, targets_run[1], ReportFormat::Csv);

  rep.all_pass = true;
  for (const auto& c : rep.checks) rep.all_pass = rep.all_pass && c.pass;
  for (const auto& c : rep.checks)
    rep.summary_text += std::string(c.pass ? "[PASS] " : "[FAIL] ") + c.name + ": " + c.detail + "\n";
  rep.summary_text += rep.all_pass ? "all checks passed\n" : "some checks failed\n";
  return rep;
}

}  // namespace kam::airport_case

#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "kam/airport_case.hpp"
#include "kam/analysis.hpp"
#include "kam/error.hpp"
#include "support/random_data.hpp"

using kam::Dataset;
using kam::EpsilonKind;
using kam::KamConfig;
using kam::KamResult;
using kam::Productivity;
using kam::WeightKind;

namespace {

KamConfig unit_custom(const Dataset& ds, double epsilon) {
  KamConfig cfg;
  cfg.weights.kind = WeightKind::Custom;
  cfg.weights.custom_w_in = std::vector<double>(ds.m(), 1.0);
  cfg.weights.custom_w_out = std::vector<double>(ds.p(), 1.0);
  cfg.epsilon.kind = EpsilonKind::PerFirm;
  cfg.epsilon.epsilon = epsilon;
  return cfg;
}

KamConfig sbm(double epsilon) {
  KamConfig cfg;
  cfg.weights.kind = WeightKind::Sbm;
  cfg.epsilon.kind = EpsilonKind::PerFirm;
  cfg.epsilon.epsilon = epsilon;
  return cfg;
}

std::vector<KamResult> fake_results(const Dataset& ds, const std::vector<double>& scores) {
  std::vector<KamResult> rs(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    rs[i].firm = i;
    rs[i].score = scores[i];
    rs[i].t_star = 1.0;
    rs[i].slack_in.assign(ds.m(), 0.0);
    rs[i].slack_out.assign(ds.p(), 0.0);
    rs[i].target_in.assign(ds.m(), 0.0);
    rs[i].target_out.assign(ds.p(), 0.0);
  }
  return rs;
}

Dataset two_firm(const char* rows) {
  return kam::load_dataset(std::string("dmu,in,out\n") + rows,
                           "[in]\nrole = input\n[out]\nrole = output\n");
}

}  // namespace

TEST_CASE("input-side value is one for a lone firm") {
  const Dataset ds = two_firm("solo,1,1\n");
  CHECK(kam::cf_score(ds, unit_custom(ds, 0.0), 0).value == doctest::Approx(1.0));
  CHECK(kam::rf_score(ds, unit_custom(ds, 0.0), 0).value == doctest::Approx(1.0));
}

TEST_CASE("input contraction finds the cheaper peer") {
  const Dataset ds = two_firm("A,2,1\nB,1,1\n");
  const auto r = kam::cf_score(ds, unit_custom(ds, 0.0), 0);
  CHECK(r.value == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(r.slack_in[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r.target[0] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("output expansion doubles against a richer peer") {
  const Dataset ds = two_firm("A,1,1\nB,1,2\n");
  const auto r = kam::rf_score(ds, unit_custom(ds, 0.0), 0);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(r.slack_out[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r.target[0] == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("one-sided values bracket one at zero epsilon on the airport case") {
  const Dataset ds = kam::airport_case::dataset();
  for (std::size_t l = 0; l < ds.n(); ++l) {
    CHECK(kam::cf_score(ds, sbm(0.0), l).value <= 1.0 + 1e-9);
    CHECK(kam::rf_score(ds, sbm(0.0), l).value >= 1.0 - 1e-9);
  }
  // E is not input-minimal, so its contraction value drops strictly below one.
  CHECK(kam::cf_score(ds, sbm(0.0), 4).value < 1.0 - 1e-6);
  CHECK(kam::rf_score(ds, sbm(0.0), 2).value >= 1.0 - 1e-9);
}

TEST_CASE("input contraction misses a shrink-to-win move") {
  // Q improves on L by shrinking both sides, the denominator faster; holding
  // outputs at L's level hides that move entirely.
  const Dataset ds = kam::load_dataset(
      "dmu,in,out1,out2\nL,1,1,1\nQ,0.5,0.9,0.2\n",
      "[in]\nrole = input\n[out1]\nrole = output\n[out2]\nrole = output\n");
  const KamConfig cfg = unit_custom(ds, 0.0);
  CHECK(kam::cf_score(ds, cfg, 0).value == doctest::Approx(1.0).epsilon(1e-9));
  const auto dom = kam::partial_dominance(ds, cfg.weights);
  CHECK(dom.ratios[1] > dom.ratios[0] + 0.1);  // 2.2 vs 2.0
  CHECK(dom.ordering[0] == 1);
}

TEST_CASE("output expansion misses a grow-to-win move") {
  // Q improves on L by growing both sides, the numerator faster; holding
  // inputs at L's level hides the move.
  const Dataset ds = kam::load_dataset(
      "dmu,in1,in2,out\nL,1,1,1\nQ,1.8,0.35,1.1\n",
      "[in1]\nrole = input\n[in2]\nrole = input\n[out]\nrole = output\n");
  const KamConfig cfg = unit_custom(ds, 0.0);
  CHECK(kam::rf_score(ds, cfg, 0).value == doctest::Approx(1.0).epsilon(1e-9));
  const auto dom = kam::partial_dominance(ds, cfg.weights);
  CHECK(dom.ratios[1] > dom.ratios[0] + 1e-3);
  CHECK(dom.ordering[0] == 1);
}

TEST_CASE("ratio ordering on a trivial pair") {
  const Dataset ds = two_firm("A,2,4\nB,1,1\n");
  kam::WeightScheme unit{WeightKind::Custom, std::vector<double>{1.0}, std::vector<double>{1.0}};
  const auto rep = kam::partial_dominance(ds, unit);
  CHECK(rep.ratios[0] == doctest::Approx(2.0));
  CHECK(rep.ratios[1] == doctest::Approx(1.0));
  CHECK(rep.ordering == std::vector<std::size_t>{0, 1});
  CHECK(rep.ties.size() == 2);
}

TEST_CASE("per-firm reciprocal weights cannot rank") {
  const Dataset ds = kam::airport_case::dataset();
  CHECK_THROWS_AS((void)kam::partial_dominance(ds, {WeightKind::Sbm, {}, {}}), kam::Error);
  // The rejection exists because every ratio would be p/m identically.
  for (std::size_t l = 0; l < ds.n(); ++l) {
    const auto w = kam::make_weights(ds, {WeightKind::Sbm, {}, {}}, l);
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < ds.p(); ++k) num += w.w_out[k] * ds.output(l, k);
    for (std::size_t j = 0; j < ds.m(); ++j) den += w.w_in[j] * ds.input(l, j);
    CHECK(num / den == doctest::Approx(3.0 / 4.0).epsilon(1e-12));
  }
}

TEST_CASE("average weights give the airports a strict ordering") {
  const Dataset ds = kam::airport_case::dataset();
  const auto rep = kam::partial_dominance(ds, {WeightKind::Average, {}, {}});
  // Independent arithmetic straight from the column means.
  std::vector<double> expected(ds.n());
  for (std::size_t i = 0; i < ds.n(); ++i) {
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < ds.p(); ++k) {
      double mean = 0.0;
      for (std::size_t r = 0; r < ds.n(); ++r) mean += ds.output(r, k);
      num += ds.output(i, k) / (mean / 8.0);
    }
    for (std::size_t j = 0; j < ds.m(); ++j) {
      double mean = 0.0;
      for (std::size_t r = 0; r < ds.n(); ++r) mean += ds.input(r, j);
      den += ds.input(i, j) / (mean / 8.0);
    }
    expected[i] = num / den;
  }
  for (std::size_t i = 0; i < ds.n(); ++i)
    CHECK(rep.ratios[i] == doctest::Approx(expected[i]).epsilon(1e-12));
  CHECK(rep.ties.size() == 8);  // strict: no group has two members
  for (std::size_t i = 1; i < rep.ordering.size(); ++i)
    CHECK(rep.ratios[rep.ordering[i - 1]] > rep.ratios[rep.ordering[i]]);
}

TEST_CASE("score ranking reproduces the published orderings") {
  const Dataset ds = kam::airport_case::dataset();
  SUBCASE("pinned runway at the largest radius") {
    const auto rs = fake_results(ds, {0.85672, 0.97644, 0.55163, 0.50990, 0.36364, 0.93414,
                                      0.91129, 0.98565});
    const auto order = kam::rank_by_score(ds, rs, 0.1);
    CHECK(order == std::vector<std::size_t>{7, 1, 5, 6, 0, 2, 3, 4});  // H B F G A C D E
  }
  SUBCASE("bounded runway at the middle radius") {
    const auto rs = fake_results(ds, {0.98056, 0.99747, 0.92921, 0.63590, 0.54534, 0.99274,
                                      0.98991, 0.99739});
    const auto order = kam::rank_by_score(ds, rs, 0.01);
    CHECK(order == std::vector<std::size_t>{1, 7, 5, 6, 0, 2, 3, 4});  // B H F G A C D E
  }
}

TEST_CASE("equal scores fall back to name order and zero epsilon refuses") {
  const Dataset ds = kam::airport_case::dataset();
  const auto rs = fake_results(ds, std::vector<double>(8, 0.5));
  const auto order = kam::rank_by_score(ds, rs, 0.01);
  for (std::size_t i = 0; i < order.size(); ++i) CHECK(order[i] == i);  // A..H already sorted
  try {
    (void)kam::rank_by_score(ds, rs, 0.0);
    FAIL("expected RankingAtZeroEpsilon");
  } catch (const kam::Error& e) {
    CHECK(e.code() == kam::ErrorCode::RankingAtZeroEpsilon);
  }
}

TEST_CASE("threshold logic of the productivity classes") {
  const Dataset ds = kam::load_dataset(
      "dmu,in,out\nF1,1,10\nF2,1,20\n",
      "[in]\nrole = input\n[out]\nrole = output\ngoal = 15\n");
  const auto rep = kam::classify_productivity(ds, {1.0, 0.5}, {0.8, 0.6});
  CHECK(rep.rel_efficiency[0] == doctest::Approx(1.0));
  CHECK(rep.rel_efficiency[1] == doctest::Approx(0.5));
  CHECK_FALSE(rep.effective[0]);  // 10 < 15
  CHECK(rep.effective[1]);
  CHECK(rep.rel_effectiveness[0] == doctest::Approx(0.5));
  CHECK(rep.rel_effectiveness[1] == doctest::Approx(1.0));
  CHECK(rep.classes[0] == Productivity::NonProductive);
  CHECK(rep.classes[1] == Productivity::NonProductive);
}

TEST_CASE("a single firm meeting its goal is productive") {
  const Dataset ds = kam::load_dataset(
      "dmu,in,out\nsolo,1,10\n", "[in]\nrole = input\n[out]\nrole = output\ngoal = 8\n");
  const auto rep = kam::classify_productivity(ds, {1.0}, {0.8, 0.6});
  CHECK(rep.rel_efficiency[0] == doctest::Approx(1.0));
  CHECK(rep.rel_effectiveness[0] == doctest::Approx(1.0));
  CHECK(rep.effective[0]);
  CHECK(rep.classes[0] == Productivity::Productive);
}

TEST_CASE("classification requires a goal somewhere") {
  const Dataset ds = two_firm("A,1,1\nB,2,2\n");
  try {
    (void)kam::classify_productivity(ds, {1.0, 1.0}, {0.8, 0.8});
    FAIL("expected NoGoalDefined");
  } catch (const kam::Error& e) {
    CHECK(e.code() == kam::ErrorCode::NoGoalDefined);
  }
}

TEST_CASE("productive firms always clear both thresholds") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const Dataset base = testgen::random_dataset(rng);
    // Re-attach a goal to the first output.
    std::vector<kam::FactorSchema> ins, outs;
    for (std::size_t j = 0; j < base.m(); ++j) ins.push_back(base.input_schema(j));
    for (std::size_t k = 0; k < base.p(); ++k) outs.push_back(base.output_schema(k));
    outs[0].goal = testgen::log_uniform(rng, 0.5, 50.0);
    std::vector<std::vector<double>> x(base.n()), y(base.n());
    for (std::size_t i = 0; i < base.n(); ++i) {
      for (std::size_t j = 0; j < base.m(); ++j) x[i].push_back(base.input(i, j));
      for (std::size_t k = 0; k < base.p(); ++k) y[i].push_back(base.output(i, k));
    }
    const Dataset ds(base.firms(), ins, outs, x, y);
    std::vector<double> scores(ds.n());
    for (auto& s : scores) s = testgen::log_uniform(rng, 0.05, 1.0);
    const auto rep = kam::classify_productivity(ds, scores, {0.8, 0.7});
    for (std::size_t i = 0; i < ds.n(); ++i) {
      if (rep.classes[i] == Productivity::Productive) {
        CHECK(rep.rel_efficiency[i] >= 0.8);
        CHECK(rep.rel_effectiveness[i] >= 0.7);
        CHECK(rep.effective[i]);
      }
    }
    CHECK(*std::max_element(rep.rel_efficiency.begin(), rep.rel_efficiency.end()) ==
          doctest::Approx(1.0));
    CHECK(*std::max_element(rep.rel_effectiveness.begin(), rep.rel_effectiveness.end()) ==
          doctest::Approx(1.0));
  }
}

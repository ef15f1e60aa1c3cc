#pragma once

#include <cstddef>
#include <vector>

#include "kam/dataset.hpp"
#include "kam/model.hpp"

namespace kam {

// One-sided reduced evaluation. These are didactic comparators, not
// efficiency scores: the input-side model cannot credit output reductions
// and the output-side model cannot credit input expansions, so each misses
// one class of ratio-improving moves that the full evaluation catches.
// Uncontrollable-factor sets in the config are ignored here.
struct SideResult {
  double value{0.0};
  std::vector<double> slack_in, slack_out;
  std::vector<double> target;  // inputs for cf_score, outputs for rf_score
};

// Input contraction with outputs held at observed values; <= 1 at epsilon 0.
SideResult cf_score(const Dataset& ds, const KamConfig& cfg, std::size_t firm);

// Output expansion with inputs held at observed values; >= 1 at epsilon 0.
SideResult rf_score(const Dataset& ds, const KamConfig& cfg, std::size_t firm);

struct DominanceReport {
  std::vector<double> ratios;                   // per firm, dataset order
  std::vector<std::size_t> ordering;            // firm indices, descending ratio
  std::vector<std::vector<std::size_t>> ties;   // groups of equal-ratio firms
};

// Shared-weight output/input ratio ranking. Requires firm-independent
// weights; per-firm SBM weights make every ratio identically p/m and are
// rejected.
DominanceReport partial_dominance(const Dataset& ds, const WeightScheme& weights);

// Descending score, ties broken lexicographically by firm name. Refuses
// epsilon = 0 results: technical-efficiency scores are not a ranking tool.
std::vector<std::size_t> rank_by_score(const Dataset& ds, const std::vector<KamResult>& results,
                                       double epsilon);

enum class Productivity { Productive, NonProductive };

struct ProductivityThresholds {
  double efficiency{0.8};
  double effectiveness{0.8};
};

struct ProductivityReport {
  std::vector<double> rel_efficiency;     // score / max score, in (0,1]
  std::vector<double> rel_effectiveness;  // goal attainment / max attainment
  double efficiency_threshold{0.0};
  double effectiveness_threshold{0.0};
  std::vector<bool> effective;            // all goals met
  std::vector<Productivity> classes;
};

// Goal attainment is the minimum over goal-bearing outputs of value/goal;
// a firm is effective when every goal is met, and Productive when it is
// effective and clears both relative thresholds.
ProductivityReport classify_productivity(const Dataset& ds, const std::vector<double>& eff_scores,
                                         const ProductivityThresholds& thresholds);

}  // namespace kam

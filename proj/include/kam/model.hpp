#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kam/dataset.hpp"
#include "kam/error.hpp"
#include "kam/lp.hpp"
#include "kam/schemes.hpp"

namespace kam {

// Uncontrollable factor sets J_u / K_u with a per-factor mode. Fixed pins the
// factor's target at the observed value; Bounded lets it move away from the
// firm only on the harmless side (inputs may rise, outputs may fall) within
// the epsilon neighborhood.
struct UncontrollableSpec {
  std::vector<bool> input_unc;
  std::vector<UncontrollableMode> input_mode;
  std::vector<bool> output_unc;
  std::vector<UncontrollableMode> output_mode;
};

struct KamConfig {
  WeightScheme weights{};
  EpsilonScheme epsilon{};
  // When empty, derived from the dataset schema's controllable flags.
  std::optional<UncontrollableSpec> uncontrollable{};
  // CLI override applied to every uncontrollable factor.
  std::optional<UncontrollableMode> mode_override{};
};

UncontrollableSpec resolve_uncontrollable(const Dataset& ds, const KamConfig& cfg);

// One firm's solved evaluation. Slacks and intensities are reported unscaled
// (raw LP values divided by t_star), so targets read
//   target_in[j]  = x(l,j) + eps_in[j]  - slack_in[j]
//   target_out[k] = y(l,k) - eps_out[k] + slack_out[k]
struct KamResult {
  std::size_t firm{0};
  double score{0.0};
  double t_star{0.0};
  std::vector<double> lambda;
  std::vector<double> slack_in, slack_out;
  std::vector<double> target_in, target_out;
  double dual_tau{0.0};
  std::vector<double> dual_w_in, dual_w_out;
};

struct DualCertificate {
  double tau{0.0};
  std::vector<double> w_in, w_out;
};

lp::LinearProgram build_primal(const Dataset& ds, const KamConfig& cfg, std::size_t firm);

// Independent construction of the dual program (not derived from the primal
// carrier); tau equals the primal score by strong duality on every instance.
DualCertificate solve_dual(const Dataset& ds, const KamConfig& cfg, std::size_t firm);

KamResult evaluate(const Dataset& ds, const KamConfig& cfg, std::size_t firm);

struct KamOutcome {
  std::optional<KamResult> result;
  std::optional<ErrorCode> error_code;
  std::string error_message;
  bool ok() const noexcept { return result.has_value(); }
};

// Evaluates every firm in dataset order; per-firm errors are collected, not
// fail-fast. Deterministic regardless of any execution interleaving.
std::vector<KamOutcome> evaluate_all(const Dataset& ds, const KamConfig& cfg);

// Scaling floor standing in for the strict t > 0 constraint.
inline constexpr double kScalingFloor = 1e-9;

}  // namespace kam

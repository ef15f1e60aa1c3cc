#pragma once

#include <optional>
#include <vector>

#include "kam/dataset.hpp"

namespace kam {

enum class WeightKind { Sbm, Minimum, Average, Custom };

struct WeightScheme {
  WeightKind kind{WeightKind::Sbm};
  std::optional<std::vector<double>> custom_w_in;
  std::optional<std::vector<double>> custom_w_out;
};

// Prices W and their normalization V relative to one firm, so that
// sum_j v_in[j]*x(l,j) = 1 and sum_k v_out[k]*y(l,k) = 1.
struct NormalizedWeights {
  std::vector<double> w_in, w_out;
  std::vector<double> v_in, v_out;
  std::size_t firm_index{0};
};

enum class EpsilonKind { PerWeight, PerFirm, PerAverage, Explicit };

struct EpsilonScheme {
  EpsilonKind kind{EpsilonKind::PerFirm};
  double epsilon{0.0};
  std::optional<std::vector<double>> explicit_in;
  std::optional<std::vector<double>> explicit_out;
  // Force individual components to zero after construction.
  std::optional<std::vector<bool>> zero_mask_in;
  std::optional<std::vector<bool>> zero_mask_out;
};

struct EpsilonVector {
  std::vector<double> in, out;
};

struct RawWeights {
  std::vector<double> w_in, w_out;
};

// W vectors before normalization. `firm` is required for Sbm (weights are the
// reciprocals of that firm's own values) and ignored otherwise. Minimum takes
// the per-column minimum over firms, zeros excluded; Average the plain mean.
RawWeights scheme_weights(const Dataset& ds, const WeightScheme& scheme,
                          std::optional<std::size_t> firm);

NormalizedWeights make_weights(const Dataset& ds, const WeightScheme& scheme, std::size_t firm);

EpsilonVector make_epsilon(const Dataset& ds, const NormalizedWeights& weights,
                           const EpsilonScheme& scheme, std::size_t firm);

}  // namespace kam

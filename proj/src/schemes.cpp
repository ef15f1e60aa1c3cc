#include "kam/schemes.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "kam/error.hpp"

namespace kam {

namespace {

double column_min_nonzero(const std::vector<double>& col, const std::string& name) {
  double best = std::numeric_limits<double>::infinity();
  for (double v : col)
    if (v != 0.0) best = std::min(best, v);
  if (!std::isfinite(best))
    throw Error(ErrorCode::EmptyColumnUnderMinimum, "column '" + name + "' has no nonzero entry");
  return best;
}

double column_mean(const std::vector<double>& col) {
  double s = 0.0;
  for (double v : col) s += v;
  return s / static_cast<double>(col.size());
}

}  // namespace

RawWeights scheme_weights(const Dataset& ds, const WeightScheme& scheme,
                          std::optional<std::size_t> firm) {
  RawWeights w;
  w.w_in.resize(ds.m());
  w.w_out.resize(ds.p());
  switch (scheme.kind) {
    case WeightKind::Sbm: {
      if (!firm) throw Error(ErrorCode::InvalidArgument, "SBM weights need an evaluated firm");
      const std::size_t l = *firm;
      for (std::size_t j = 0; j < ds.m(); ++j) {
        const double v = ds.input(l, j);
        if (!(v > 0.0))
          throw Error(ErrorCode::ZeroDataUnderSbm, "firm '" + ds.firm(l) + "' has non-positive input '" +
                                                       ds.input_schema(j).name + "'");
        w.w_in[j] = 1.0 / v;
      }
      for (std::size_t k = 0; k < ds.p(); ++k) {
        const double v = ds.output(l, k);
        if (!(v > 0.0))
          throw Error(ErrorCode::ZeroDataUnderSbm, "firm '" + ds.firm(l) + "' has non-positive output '" +
                                                       ds.output_schema(k).name + "'");
        w.w_out[k] = 1.0 / v;
      }
      break;
    }
    case WeightKind::Minimum:
      for (std::size_t j = 0; j < ds.m(); ++j)
        w.w_in[j] = 1.0 / column_min_nonzero(ds.input_column(j), ds.input_schema(j).name);
      for (std::size_t k = 0; k < ds.p(); ++k)
        w.w_out[k] = 1.0 / column_min_nonzero(ds.output_column(k), ds.output_schema(k).name);
      break;
    case WeightKind::Average:
      for (std::size_t j = 0; j < ds.m(); ++j) w.w_in[j] = 1.0 / column_mean(ds.input_column(j));
      for (std::size_t k = 0; k < ds.p(); ++k) w.w_out[k] = 1.0 / column_mean(ds.output_column(k));
      break;
    case WeightKind::Custom: {
      if (!scheme.custom_w_in || !scheme.custom_w_out)
        throw Error(ErrorCode::InvalidArgument, "custom weights require both vectors");
      if (scheme.custom_w_in->size() != ds.m() || scheme.custom_w_out->size() != ds.p())
        throw Error(ErrorCode::InvalidArgument, "custom weight vectors have wrong length");
      for (double v : *scheme.custom_w_in)
        if (!(v > 0.0)) throw Error(ErrorCode::InvalidArgument, "custom input weight must be positive");
      for (double v : *scheme.custom_w_out)
        if (!(v > 0.0)) throw Error(ErrorCode::InvalidArgument, "custom output weight must be positive");
      w.w_in = *scheme.custom_w_in;
      w.w_out = *scheme.custom_w_out;
      break;
    }
  }
  return w;
}

NormalizedWeights make_weights(const Dataset& ds, const WeightScheme& scheme, std::size_t firm) {
  if (firm >= ds.n()) throw Error(ErrorCode::InvalidArgument, "firm index out of range");
  RawWeights raw = scheme_weights(ds, scheme, firm);

  double denom_in = 0.0, denom_out = 0.0;
  for (std::size_t j = 0; j < ds.m(); ++j) denom_in += raw.w_in[j] * ds.input(firm, j);
  for (std::size_t k = 0; k < ds.p(); ++k) denom_out += raw.w_out[k] * ds.output(firm, k);
  if (!(denom_in > 0.0) || !(denom_out > 0.0))
    throw Error(ErrorCode::InvalidArgument,
                "firm '" + ds.firm(firm) + "' has zero weighted totals; cannot normalize");

  NormalizedWeights nw;
  nw.firm_index = firm;
  nw.w_in = std::move(raw.w_in);
  nw.w_out = std::move(raw.w_out);
  nw.v_in.resize(ds.m());
  nw.v_out.resize(ds.p());
  for (std::size_t j = 0; j < ds.m(); ++j) nw.v_in[j] = nw.w_in[j] / denom_in;
  for (std::size_t k = 0; k < ds.p(); ++k) nw.v_out[k] = nw.w_out[k] / denom_out;
  return nw;
}

EpsilonVector make_epsilon(const Dataset& ds, const NormalizedWeights& weights,
                           const EpsilonScheme& scheme, std::size_t firm) {
  if (firm >= ds.n()) throw Error(ErrorCode::InvalidArgument, "firm index out of range");
  if (scheme.epsilon < 0.0) throw Error(ErrorCode::InvalidArgument, "epsilon must be non-negative");
  if ((scheme.kind == EpsilonKind::PerWeight || scheme.kind == EpsilonKind::PerFirm) &&
      weights.firm_index != firm)
    throw Error(ErrorCode::InvalidArgument, "weights were normalized for a different firm");

  EpsilonVector eps;
  eps.in.assign(ds.m(), 0.0);
  eps.out.assign(ds.p(), 0.0);
  const double e = scheme.epsilon;
  switch (scheme.kind) {
    case EpsilonKind::PerWeight:
      for (std::size_t j = 0; j < ds.m(); ++j) eps.in[j] = e / weights.w_in[j];
      for (std::size_t k = 0; k < ds.p(); ++k) eps.out[k] = e / weights.w_out[k];
      break;
    case EpsilonKind::PerFirm:
      for (std::size_t j = 0; j < ds.m(); ++j) eps.in[j] = e * ds.input(firm, j);
      for (std::size_t k = 0; k < ds.p(); ++k) eps.out[k] = e * ds.output(firm, k);
      break;
    case EpsilonKind::PerAverage:
      for (std::size_t j = 0; j < ds.m(); ++j) {
        double mean = 0.0;
        for (std::size_t i = 0; i < ds.n(); ++i) mean += ds.input(i, j);
        eps.in[j] = e * mean / static_cast<double>(ds.n());
      }
      for (std::size_t k = 0; k < ds.p(); ++k) {
        double mean = 0.0;
        for (std::size_t i = 0; i < ds.n(); ++i) mean += ds.output(i, k);
        eps.out[k] = e * mean / static_cast<double>(ds.n());
      }
      break;
    case EpsilonKind::Explicit:
      if (!scheme.explicit_in || !scheme.explicit_out)
        throw Error(ErrorCode::InvalidArgument, "explicit epsilon requires both component vectors");
      if (scheme.explicit_in->size() != ds.m() || scheme.explicit_out->size() != ds.p())
        throw Error(ErrorCode::InvalidArgument, "explicit epsilon vectors have wrong length");
      eps.in = *scheme.explicit_in;
      eps.out = *scheme.explicit_out;
      break;
  }
  if (scheme.zero_mask_in) {
    if (scheme.zero_mask_in->size() != ds.m())
      throw Error(ErrorCode::InvalidArgument, "zero mask has wrong length");
    for (std::size_t j = 0; j < ds.m(); ++j)
      if ((*scheme.zero_mask_in)[j]) eps.in[j] = 0.0;
  }
  if (scheme.zero_mask_out) {
    if (scheme.zero_mask_out->size() != ds.p())
      throw Error(ErrorCode::InvalidArgument, "zero mask has wrong length");
    for (std::size_t k = 0; k < ds.p(); ++k)
      if ((*scheme.zero_mask_out)[k]) eps.out[k] = 0.0;
  }
  for (double v : eps.in)
    if (v < 0.0 || !std::isfinite(v))
      throw Error(ErrorCode::InvalidArgument, "epsilon component must be finite and non-negative");
  for (double v : eps.out)
    if (v < 0.0 || !std::isfinite(v))
      throw Error(ErrorCode::InvalidArgument, "epsilon component must be finite and non-negative");
  return eps;
}

}  // namespace kam

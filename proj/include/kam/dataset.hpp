#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace kam {

enum class FactorRole { Input, Output };
enum class UncontrollableMode { Fixed, Bounded };

struct FactorSchema {
  std::string name;
  FactorRole role{FactorRole::Input};
  bool controllable{true};
  // Meaningful only when controllable is false.
  UncontrollableMode uncontrollable_mode{UncontrollableMode::Fixed};
  std::optional<double> goal;    // output factors only
  std::optional<double> weight;  // custom price, all factors when used
};

// Immutable firm/factor data matrix. Inputs precede outputs in internal
// indexing; within each role factors keep data-file column order. Safe for
// shared read access from any number of concurrent evaluators.
class Dataset {
 public:
  Dataset(std::vector<std::string> firms, std::vector<FactorSchema> input_schema,
          std::vector<FactorSchema> output_schema, std::vector<std::vector<double>> x,
          std::vector<std::vector<double>> y);

  std::size_t n() const noexcept { return firms_.size(); }
  std::size_t m() const noexcept { return inputs_.size(); }
  std::size_t p() const noexcept { return outputs_.size(); }

  const std::vector<std::string>& firms() const noexcept { return firms_; }
  const std::string& firm(std::size_t i) const { return firms_.at(i); }
  const FactorSchema& input_schema(std::size_t j) const { return inputs_.at(j); }
  const FactorSchema& output_schema(std::size_t k) const { return outputs_.at(k); }

  double input(std::size_t i, std::size_t j) const { return x_.at(i).at(j); }
  double output(std::size_t i, std::size_t k) const { return y_.at(i).at(k); }

  std::vector<double> input_column(std::size_t j) const;
  std::vector<double> output_column(std::size_t k) const;

  // Serialization in the original column order, 15 significant digits.
  std::string to_csv() const;

 private:
  friend Dataset load_dataset(const std::string&, const std::string&);

  std::vector<std::string> firms_;
  std::vector<FactorSchema> inputs_;
  std::vector<FactorSchema> outputs_;
  std::vector<std::vector<double>> x_;  // n x m
  std::vector<std::vector<double>> y_;  // n x p
  // Original file column order as (role, index-within-role); defaults to
  // inputs followed by outputs when constructed programmatically.
  std::vector<std::pair<FactorRole, std::size_t>> column_order_;
};

// Parses the data CSV (header `dmu,<factor...>`, one row per firm) against a
// schema config. Throws Error with code MissingColumn, DuplicateFirm,
// NonNumericCell, NegativeValue, SchemaMismatch or InvalidDataset; messages
// name the offending row/column.
Dataset load_dataset(const std::string& csv_text, const std::string& schema_text);

// Schema config parser, exposed for custom-weight files: `[factor]` section
// headers with `key = value` lines (role, controllable, uncontrollable_mode,
// goal, weight), `#` comments.
std::vector<FactorSchema> parse_schema(const std::string& schema_text);

// True iff every input and output entry is strictly positive.
bool validate_positive(const Dataset& ds);

}  // namespace kam

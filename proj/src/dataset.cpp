#include "kam/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "kam/error.hpp"

namespace kam {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char ch : text) {
    if (ch == '\n') {
      if (!cur.empty() && cur.back() == '\r') cur.pop_back();
      lines.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty() && cur.back() == '\r') cur.pop_back();
  if (!cur.empty()) lines.push_back(cur);
  return lines;
}

std::vector<std::string> split_cells(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      cells.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  cells.push_back(trim(cur));
  return cells;
}

double parse_number(const std::string& cell, const std::string& where) {
  double v = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || !std::isfinite(v))
    throw Error(ErrorCode::NonNumericCell, "cell '" + cell + "' at " + where + " is not a finite number");
  return v;
}

bool parse_bool(const std::string& value, const std::string& where) {
  if (value == "true") return true;
  if (value == "false") return false;
  throw Error(ErrorCode::SchemaMismatch, "expected true|false for " + where + ", got '" + value + "'");
}

}  // namespace

Dataset::Dataset(std::vector<std::string> firms, std::vector<FactorSchema> input_schema,
                 std::vector<FactorSchema> output_schema, std::vector<std::vector<double>> x,
                 std::vector<std::vector<double>> y)
    : firms_(std::move(firms)),
      inputs_(std::move(input_schema)),
      outputs_(std::move(output_schema)),
      x_(std::move(x)),
      y_(std::move(y)) {
  const std::size_t nn = firms_.size(), mm = inputs_.size(), pp = outputs_.size();
  if (nn < 1 || mm < 1 || pp < 1)
    throw Error(ErrorCode::InvalidDataset, "dataset needs at least one firm, one input and one output");
  if (x_.size() != nn || y_.size() != nn)
    throw Error(ErrorCode::InvalidDataset, "matrix row counts do not match the firm list");
  std::set<std::string> seen;
  for (const auto& f : firms_)
    if (!seen.insert(f).second) throw Error(ErrorCode::DuplicateFirm, "firm '" + f + "' appears twice");
  std::set<std::string> names;
  for (const auto& fs : inputs_) {
    if (!names.insert(fs.name).second)
      throw Error(ErrorCode::SchemaMismatch, "factor '" + fs.name + "' declared twice");
    if (fs.goal) throw Error(ErrorCode::SchemaMismatch, "goal set on input factor '" + fs.name + "'");
  }
  for (const auto& fs : outputs_)
    if (!names.insert(fs.name).second)
      throw Error(ErrorCode::SchemaMismatch, "factor '" + fs.name + "' declared twice");
  for (std::size_t i = 0; i < nn; ++i) {
    if (x_[i].size() != mm || y_[i].size() != pp)
      throw Error(ErrorCode::InvalidDataset, "row for firm '" + firms_[i] + "' has wrong width");
    for (double v : x_[i])
      if (!std::isfinite(v)) throw Error(ErrorCode::InvalidDataset, "non-finite input for firm '" + firms_[i] + "'");
    for (double v : y_[i])
      if (!std::isfinite(v)) throw Error(ErrorCode::InvalidDataset, "non-finite output for firm '" + firms_[i] + "'");
    for (double v : x_[i])
      if (v < 0.0) throw Error(ErrorCode::NegativeValue, "negative input for firm '" + firms_[i] + "'");
    for (double v : y_[i])
      if (v < 0.0) throw Error(ErrorCode::NegativeValue, "negative output for firm '" + firms_[i] + "'");
  }
  for (std::size_t j = 0; j < mm; ++j) {
    bool any = false;
    for (std::size_t i = 0; i < nn; ++i) any = any || x_[i][j] > 0.0;
    if (!any)
      throw Error(ErrorCode::InvalidDataset, "input column '" + inputs_[j].name + "' has no positive entry");
  }
  for (std::size_t k = 0; k < pp; ++k) {
    bool any = false;
    for (std::size_t i = 0; i < nn; ++i) any = any || y_[i][k] > 0.0;
    if (!any)
      throw Error(ErrorCode::InvalidDataset, "output column '" + outputs_[k].name + "' has no positive entry");
  }
  if (column_order_.empty()) {
    for (std::size_t j = 0; j < mm; ++j) column_order_.emplace_back(FactorRole::Input, j);
    for (std::size_t k = 0; k < pp; ++k) column_order_.emplace_back(FactorRole::Output, k);
  }
}

std::vector<double> Dataset::input_column(std::size_t j) const {
  std::vector<double> col(n());
  for (std::size_t i = 0; i < n(); ++i) col[i] = x_[i][j];
  return col;
}

std::vector<double> Dataset::output_column(std::size_t k) const {
  std::vector<double> col(n());
  for (std::size_t i = 0; i < n(); ++i) col[i] = y_[i][k];
  return col;
}

std::string Dataset::to_csv() const {
  std::string out = "dmu";
  for (const auto& [role, idx] : column_order_)
    out += "," + (role == FactorRole::Input ? inputs_[idx].name : outputs_[idx].name);
  out += "\n";
  char buf[40];
  for (std::size_t i = 0; i < n(); ++i) {
    out += firms_[i];
    for (const auto& [role, idx] : column_order_) {
      const double v = role == FactorRole::Input ? x_[i][idx] : y_[i][idx];
      std::snprintf(buf, sizeof buf, ",%.15g", v);
      out += buf;
    }
    out += "\n";
  }
  return out;
}

std::vector<FactorSchema> parse_schema(const std::string& schema_text) {
  std::vector<FactorSchema> schema;
  FactorSchema* cur = nullptr;
  bool role_set = false;
  std::size_t lineno = 0;
  auto finish_section = [&]() {
    if (cur != nullptr && !role_set)
      throw Error(ErrorCode::SchemaMismatch, "factor '" + cur->name + "' does not declare a role");
  };
  for (const auto& raw : split_lines(schema_text)) {
    ++lineno;
    std::string line = raw;
    if (auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = "schema line " + std::to_string(lineno);
    if (line.front() == '[') {
      if (line.back() != ']') throw Error(ErrorCode::SchemaMismatch, "unterminated section at " + where);
      finish_section();
      FactorSchema fs;
      fs.name = trim(line.substr(1, line.size() - 2));
      if (fs.name.empty()) throw Error(ErrorCode::SchemaMismatch, "empty factor name at " + where);
      for (const auto& existing : schema)
        if (existing.name == fs.name)
          throw Error(ErrorCode::SchemaMismatch, "factor '" + fs.name + "' declared twice");
      schema.push_back(fs);
      cur = &schema.back();
      role_set = false;
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos || cur == nullptr)
      throw Error(ErrorCode::SchemaMismatch, "expected `key = value` inside a [factor] section at " + where);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "role") {
      if (value == "input") cur->role = FactorRole::Input;
      else if (value == "output") cur->role = FactorRole::Output;
      else throw Error(ErrorCode::SchemaMismatch, "role must be input|output at " + where);
      role_set = true;
    } else if (key == "controllable") {
      cur->controllable = parse_bool(value, where);
    } else if (key == "uncontrollable_mode") {
      if (value == "fixed") cur->uncontrollable_mode = UncontrollableMode::Fixed;
      else if (value == "bounded") cur->uncontrollable_mode = UncontrollableMode::Bounded;
      else throw Error(ErrorCode::SchemaMismatch, "uncontrollable_mode must be fixed|bounded at " + where);
    } else if (key == "goal") {
      const double g = parse_number(value, where);
      if (g < 0.0) throw Error(ErrorCode::SchemaMismatch, "goal must be non-negative at " + where);
      cur->goal = g;
    } else if (key == "weight") {
      const double w = parse_number(value, where);
      if (w <= 0.0) throw Error(ErrorCode::SchemaMismatch, "weight must be positive at " + where);
      cur->weight = w;
    } else {
      throw Error(ErrorCode::SchemaMismatch, "unknown key '" + key + "' at " + where);
    }
  }
  finish_section();
  if (schema.empty()) throw Error(ErrorCode::SchemaMismatch, "schema declares no factors");
  return schema;
}

Dataset load_dataset(const std::string& csv_text, const std::string& schema_text) {
  const auto schema = parse_schema(schema_text);
  const auto lines = split_lines(csv_text);
  if (lines.empty()) throw Error(ErrorCode::MissingColumn, "data file is empty");

  const auto header = split_cells(lines[0]);
  if (header.empty() || header[0] != "dmu")
    throw Error(ErrorCode::MissingColumn, "header must start with the `dmu` column");
  if (header.size() < 2) throw Error(ErrorCode::MissingColumn, "header declares no factor columns");

  // Match header columns against schema sections by name.
  std::vector<const FactorSchema*> by_column;
  for (std::size_t c = 1; c < header.size(); ++c) {
    const auto& name = header[c];
    auto it = std::find_if(schema.begin(), schema.end(),
                           [&](const FactorSchema& fs) { return fs.name == name; });
    if (it == schema.end())
      throw Error(ErrorCode::SchemaMismatch, "data column '" + name + "' has no schema entry");
    by_column.push_back(&*it);
  }
  for (const auto& fs : schema) {
    const bool present =
        std::any_of(by_column.begin(), by_column.end(), [&](const FactorSchema* c) { return c == &fs; });
    if (!present)
      throw Error(ErrorCode::SchemaMismatch, "schema factor '" + fs.name + "' missing from the data header");
  }
  std::set<std::string> header_names;
  for (std::size_t c = 1; c < header.size(); ++c)
    if (!header_names.insert(header[c]).second)
      throw Error(ErrorCode::SchemaMismatch, "data column '" + header[c] + "' appears twice");

  // Partition columns into inputs then outputs, preserving file order.
  std::vector<FactorSchema> inputs, outputs;
  std::vector<std::pair<FactorRole, std::size_t>> order;
  for (const auto* fs : by_column) {
    if (fs->role == FactorRole::Input) {
      order.emplace_back(FactorRole::Input, inputs.size());
      inputs.push_back(*fs);
    } else {
      order.emplace_back(FactorRole::Output, outputs.size());
      outputs.push_back(*fs);
    }
  }
  if (inputs.empty()) throw Error(ErrorCode::SchemaMismatch, "schema declares no input factors");
  if (outputs.empty()) throw Error(ErrorCode::SchemaMismatch, "schema declares no output factors");

  std::vector<std::string> firms;
  std::vector<std::vector<double>> x, y;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    if (trim(lines[r]).empty()) continue;
    const auto cells = split_cells(lines[r]);
    const std::string rowid = "row " + std::to_string(r + 1);
    if (cells.size() != header.size())
      throw Error(ErrorCode::MissingColumn, rowid + " has " + std::to_string(cells.size()) +
                                                " cells, expected " + std::to_string(header.size()) +
                                                " (thousands separators are not accepted)");
    if (cells[0].empty()) throw Error(ErrorCode::MissingColumn, rowid + " has an empty dmu cell");
    firms.push_back(cells[0]);
    std::vector<double> xi(inputs.size()), yi(outputs.size());
    for (std::size_t c = 1; c < cells.size(); ++c) {
      const std::string where = "column '" + header[c] + "', " + rowid;
      const double v = parse_number(cells[c], where);
      if (v < 0.0) throw Error(ErrorCode::NegativeValue, "negative value at " + where);
      const auto& [role, idx] = order[c - 1];
      (role == FactorRole::Input ? xi[idx] : yi[idx]) = v;
    }
    x.push_back(std::move(xi));
    y.push_back(std::move(yi));
  }
  if (firms.empty()) throw Error(ErrorCode::InvalidDataset, "data file has no firm rows");

  Dataset ds(std::move(firms), std::move(inputs), std::move(outputs), std::move(x), std::move(y));
  ds.column_order_ = std::move(order);
  return ds;
}

bool validate_positive(const Dataset& ds) {
  for (std::size_t i = 0; i < ds.n(); ++i) {
    for (std::size_t j = 0; j < ds.m(); ++j)
      if (!(ds.input(i, j) > 0.0)) return false;
    for (std::size_t k = 0; k < ds.p(); ++k)
      if (!(ds.output(i, k) > 0.0)) return false;
  }
  return true;
}

}  // namespace kam

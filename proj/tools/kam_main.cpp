// Command-line front end: dataset + schema in, score/target/rank/dominance/
// productivity reports out, plus a one-shot `reproduce` command for the
// bundled airport benchmark.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kam/analysis.hpp"
#include "kam/dataset.hpp"
#include "kam/error.hpp"
#include "kam/model.hpp"
#include "kam/report.hpp"
#include "kam/reproduction.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitValidation = 2;
constexpr int kExitSolver = 3;

struct Options {
  std::string data_path = std::string(KAM_DATA_DIR) + "/airports.csv";
  std::string schema_path = std::string(KAM_DATA_DIR) + "/airports.schema";
  double epsilon = 0.0;
  std::string epsilon_scheme = "per-firm";
  std::vector<double> epsilon_in, epsilon_out;
  std::string weights = "sbm";
  std::string uncontrollable_mode;
  double efficiency_threshold = 0.8;
  double effectiveness_threshold = 0.8;
  std::string output = "-";
  std::string format = "csv";
  std::string dual_output;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--data", o.data_path, "Data CSV (header `dmu,<factors>`)");
  cmd->add_option("--schema", o.schema_path, "Factor schema config");
  cmd->add_option("--epsilon", o.epsilon, "Neighborhood radius, >= 0")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--epsilon-scheme", o.epsilon_scheme, "per-weight|per-firm|per-average|explicit")
      ->check(CLI::IsMember({"per-weight", "per-firm", "per-average", "explicit"}));
  cmd->add_option("--epsilon-in", o.epsilon_in, "Explicit input components")->delimiter(',');
  cmd->add_option("--epsilon-out", o.epsilon_out, "Explicit output components")->delimiter(',');
  cmd->add_option("--weights", o.weights, "sbm|min|avg|file:<path>");
  cmd->add_option("--uncontrollable-mode", o.uncontrollable_mode,
                  "Override for factors marked uncontrollable")
      ->check(CLI::IsMember({"fixed", "bounded"}));
  cmd->add_option("--output", o.output, "Report path, `-` for stdout");
  cmd->add_option("--format", o.format, "csv|table")->check(CLI::IsMember({"csv", "table"}));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw kam::Error(kam::ErrorCode::IoError, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw kam::Error(kam::ErrorCode::IoError, "cannot write '" + path + "'");
  out << content;
  if (!out) throw kam::Error(kam::ErrorCode::IoError, "write to '" + path + "' failed");
}

void emit(const Options& o, const std::string& content) {
  if (o.output == "-")
    std::cout << content;
  else
    write_file(o.output, content);
}

kam::Dataset load(const Options& o) {
  return kam::load_dataset(read_file(o.data_path), read_file(o.schema_path));
}

kam::WeightScheme parse_weights(const Options& o, const kam::Dataset& ds) {
  kam::WeightScheme w;
  if (o.weights == "sbm") {
    w.kind = kam::WeightKind::Sbm;
  } else if (o.weights == "min") {
    w.kind = kam::WeightKind::Minimum;
  } else if (o.weights == "avg") {
    w.kind = kam::WeightKind::Average;
  } else if (o.weights.rfind("file:", 0) == 0) {
    w.kind = kam::WeightKind::Custom;
    const auto entries = kam::parse_schema(read_file(o.weights.substr(5)));
    auto weight_of = [&](const std::string& name) {
      for (const auto& fs : entries)
        if (fs.name == name) {
          if (!fs.weight)
            throw kam::Error(kam::ErrorCode::SchemaMismatch,
                             "factor '" + name + "' carries no weight in the weight file");
          return *fs.weight;
        }
      throw kam::Error(kam::ErrorCode::SchemaMismatch,
                       "factor '" + name + "' missing from the weight file");
    };
    std::vector<double> win, wout;
    for (std::size_t j = 0; j < ds.m(); ++j) win.push_back(weight_of(ds.input_schema(j).name));
    for (std::size_t k = 0; k < ds.p(); ++k) wout.push_back(weight_of(ds.output_schema(k).name));
    w.custom_w_in = std::move(win);
    w.custom_w_out = std::move(wout);
  } else {
    throw kam::Error(kam::ErrorCode::InvalidArgument,
                     "--weights must be sbm|min|avg|file:<path>, got '" + o.weights + "'");
  }
  return w;
}

kam::KamConfig make_config(const Options& o, const kam::Dataset& ds) {
  kam::KamConfig cfg;
  cfg.weights = parse_weights(o, ds);
  cfg.epsilon.epsilon = o.epsilon;
  if (o.epsilon_scheme == "per-weight") cfg.epsilon.kind = kam::EpsilonKind::PerWeight;
  else if (o.epsilon_scheme == "per-firm") cfg.epsilon.kind = kam::EpsilonKind::PerFirm;
  else if (o.epsilon_scheme == "per-average") cfg.epsilon.kind = kam::EpsilonKind::PerAverage;
  else {
    cfg.epsilon.kind = kam::EpsilonKind::Explicit;
    cfg.epsilon.explicit_in = o.epsilon_in;
    cfg.epsilon.explicit_out = o.epsilon_out;
  }
  if (o.uncontrollable_mode == "fixed") cfg.mode_override = kam::UncontrollableMode::Fixed;
  else if (o.uncontrollable_mode == "bounded") cfg.mode_override = kam::UncontrollableMode::Bounded;
  return cfg;
}

kam::ReportFormat report_format(const Options& o) {
  return o.format == "table" ? kam::ReportFormat::PrettyTable : kam::ReportFormat::Csv;
}

// Collects per-firm results; prints collected errors and throws the first
// one if any firm failed.
std::vector<kam::KamResult> solve_all(const kam::Dataset& ds, const kam::KamConfig& cfg) {
  std::vector<kam::KamResult> results;
  std::optional<kam::Error> first;
  for (const auto& outcome : kam::evaluate_all(ds, cfg)) {
    if (outcome.ok()) {
      results.push_back(*outcome.result);
    } else {
      std::cerr << "error: " << outcome.error_message << "\n";
      if (!first) first = kam::Error(*outcome.error_code, outcome.error_message);
    }
  }
  if (first) throw *first;
  return results;
}

int run_reproduce(const Options& o) {
  namespace fs = std::filesystem;
  const std::string dir = o.output == "-" ? "reproduction" : o.output;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw kam::Error(kam::ErrorCode::IoError, "cannot create directory '" + dir + "'");

  const auto rep = kam::airport_case::run_reproduction();
  write_file(dir + "/scores_fixed.csv", rep.scores_fixed_csv);
  write_file(dir + "/scores_bounded.csv", rep.scores_bounded_csv);
  write_file(dir + "/targets_fixed.csv", rep.targets_fixed_csv);
  write_file(dir + "/targets_bounded.csv", rep.targets_bounded_csv);
  write_file(dir + "/summary.txt", rep.summary_text);
  std::cout << rep.summary_text;
  return rep.all_pass ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Efficiency analysis of homogeneous decision-making units"};
  app.require_subcommand(1);
  Options o;

  auto* cmd_evaluate =
      app.add_subcommand("evaluate", "Scores, slacks and targets for every firm");
  add_common(cmd_evaluate, o);
  cmd_evaluate->add_option("--dual-output", o.dual_output, "Also write the dual certificate CSV");
  auto* cmd_targets = app.add_subcommand("targets", "Frontier targets for every firm");
  add_common(cmd_targets, o);
  auto* cmd_rank = app.add_subcommand("rank", "Rank firms by score (requires epsilon > 0)");
  add_common(cmd_rank, o);
  auto* cmd_dominance =
      app.add_subcommand("dominance", "Shared-weight output/input ratio ordering");
  add_common(cmd_dominance, o);
  auto* cmd_productivity =
      app.add_subcommand("productivity", "Efficiency + effectiveness classification");
  add_common(cmd_productivity, o);
  cmd_productivity->add_option("--efficiency-threshold", o.efficiency_threshold,
                               "Relative efficiency cut for the productive class");
  cmd_productivity->add_option("--effectiveness-threshold", o.effectiveness_threshold,
                               "Relative effectiveness cut for the productive class");
  auto* cmd_reproduce = app.add_subcommand(
      "reproduce", "Run the bundled airport benchmark and check reference values");
  add_common(cmd_reproduce, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (cmd_reproduce->parsed()) return run_reproduce(o);

    const kam::Dataset ds = load(o);
    if (cmd_dominance->parsed()) {
      const auto report = kam::partial_dominance(ds, parse_weights(o, ds));
      emit(o, kam::format_dominance(ds, report, report_format(o)));
      return kExitOk;
    }

    const kam::KamConfig cfg = make_config(o, ds);
    if (cmd_evaluate->parsed()) {
      const auto results = solve_all(ds, cfg);
      emit(o, kam::format_results(ds, results, report_format(o)));
      if (!o.dual_output.empty())
        write_file(o.dual_output, kam::format_dual(ds, results, kam::ReportFormat::Csv));
    } else if (cmd_targets->parsed()) {
      const auto results = solve_all(ds, cfg);
      emit(o, kam::format_targets(ds, results, report_format(o)));
    } else if (cmd_rank->parsed()) {
      const auto results = solve_all(ds, cfg);
      const auto ordering = kam::rank_by_score(ds, results, o.epsilon);
      emit(o, kam::format_rank(ds, results, ordering, report_format(o)));
    } else if (cmd_productivity->parsed()) {
      const auto results = solve_all(ds, cfg);
      std::vector<double> scores;
      for (const auto& r : results) scores.push_back(r.score);
      const auto report = kam::classify_productivity(
          ds, scores, {o.efficiency_threshold, o.effectiveness_threshold});
      emit(o, kam::format_productivity(ds, report, report_format(o)));
      if (o.output == "-") {
        std::cout << "\n" << kam::format_scatter(report);
      } else {
        write_file(o.output + ".scatter.csv", kam::format_scatter(report));
      }
    }
    return kExitOk;
  } catch (const kam::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kam::is_solver_error(e.code()) ? kExitSolver : kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}

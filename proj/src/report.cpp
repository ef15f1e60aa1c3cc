#include "kam/report.hpp"

#include <algorithm>
#include <cstdio>

#include "kam/error.hpp"

namespace kam {

namespace {

std::string num(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

std::string score5(double v) { return num("%.5f", v); }
std::string target2(double v) { return num("%.2f", v); }
std::string value6(double v) { return num("%.6f", v); }

// Rows of pre-formatted cells to CSV or an aligned table. The first column is
// left-aligned in table mode, the rest right-aligned.
std::string render(const std::vector<std::string>& header,
                   const std::vector<std::vector<std::string>>& rows, ReportFormat format) {
  std::string out;
  if (format == ReportFormat::Csv) {
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (c) out += ",";
      out += header[c];
    }
    out += "\n";
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c) out += ",";
        out += row[c];
      }
      out += "\n";
    }
    return out;
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  auto pad = [&](const std::string& s, std::size_t w, bool left) {
    std::string cell = s;
    while (cell.size() < w) {
      if (left) cell += ' ';
      else cell.insert(cell.begin(), ' ');
    }
    return cell;
  };
  auto emit_row = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += "  ";
      out += pad(row[c], width[c], c == 0);
    }
    out += "\n";
  };
  emit_row(header);
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c) out += "  ";
    out += std::string(width[c], '-');
  }
  out += "\n";
  for (const auto& row : rows) emit_row(row);
  return out;
}

void require_results(const std::vector<KamResult>& results) {
  if (results.empty()) throw Error(ErrorCode::InvalidArgument, "no results to report");
}

}  // namespace

std::string format_results(const Dataset& ds, const std::vector<KamResult>& results,
                           ReportFormat format) {
  require_results(results);
  std::vector<std::string> header{"dmu", "score", "t_star"};
  for (std::size_t j = 0; j < ds.m(); ++j) header.push_back("s_in_" + std::to_string(j + 1));
  for (std::size_t k = 0; k < ds.p(); ++k) header.push_back("s_out_" + std::to_string(k + 1));
  for (std::size_t c = 0; c < ds.m() + ds.p(); ++c)
    header.push_back("target_" + std::to_string(c + 1));
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : results) {
    std::vector<std::string> row{ds.firm(r.firm), score5(r.score), value6(r.t_star)};
    for (double v : r.slack_in) row.push_back(value6(v));
    for (double v : r.slack_out) row.push_back(value6(v));
    for (double v : r.target_in) row.push_back(target2(v));
    for (double v : r.target_out) row.push_back(target2(v));
    rows.push_back(std::move(row));
  }
  return render(header, rows, format);
}

std::string format_targets(const Dataset& ds, const std::vector<KamResult>& results,
                           ReportFormat format) {
  require_results(results);
  std::vector<std::string> header{"dmu"};
  for (std::size_t j = 0; j < ds.m(); ++j) header.push_back(ds.input_schema(j).name);
  for (std::size_t k = 0; k < ds.p(); ++k) header.push_back(ds.output_schema(k).name);
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : results) {
    std::vector<std::string> row{ds.firm(r.firm)};
    for (double v : r.target_in) row.push_back(target2(v));
    for (double v : r.target_out) row.push_back(target2(v));
    rows.push_back(std::move(row));
  }
  return render(header, rows, format);
}

std::string format_dual(const Dataset& ds, const std::vector<KamResult>& results,
                        ReportFormat format) {
  require_results(results);
  std::vector<std::string> header{"dmu", "tau"};
  for (std::size_t j = 0; j < ds.m(); ++j) header.push_back("w_in_" + std::to_string(j + 1));
  for (std::size_t k = 0; k < ds.p(); ++k) header.push_back("w_out_" + std::to_string(k + 1));
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : results) {
    std::vector<std::string> row{ds.firm(r.firm), score5(r.dual_tau)};
    for (double v : r.dual_w_in) row.push_back(num("%.10g", v));
    for (double v : r.dual_w_out) row.push_back(num("%.10g", v));
    rows.push_back(std::move(row));
  }
  return render(header, rows, format);
}

std::string format_rank(const Dataset& ds, const std::vector<KamResult>& results,
                        const std::vector<std::size_t>& ordering, ReportFormat format) {
  require_results(results);
  std::vector<std::string> header{"rank", "dmu", "score"};
  std::vector<std::vector<std::string>> rows;
  for (std::size_t pos = 0; pos < ordering.size(); ++pos) {
    const auto& r = results[ordering[pos]];
    rows.push_back({std::to_string(pos + 1), ds.firm(r.firm), score5(r.score)});
  }
  return render(header, rows, format);
}

std::string format_dominance(const Dataset& ds, const DominanceReport& report,
                             ReportFormat format) {
  std::vector<std::string> header{"rank", "dmu", "ratio"};
  std::vector<std::vector<std::string>> rows;
  for (std::size_t pos = 0; pos < report.ordering.size(); ++pos) {
    const std::size_t firm = report.ordering[pos];
    rows.push_back({std::to_string(pos + 1), ds.firm(firm), value6(report.ratios[firm])});
  }
  return render(header, rows, format);
}

std::string format_productivity(const Dataset& ds, const ProductivityReport& report,
                                ReportFormat format) {
  std::vector<std::string> header{"dmu", "rel_efficiency", "rel_effectiveness", "effective",
                                  "class"};
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < ds.n(); ++i) {
    rows.push_back({ds.firm(i), score5(report.rel_efficiency[i]),
                    score5(report.rel_effectiveness[i]), report.effective[i] ? "true" : "false",
                    report.classes[i] == Productivity::Productive ? "productive"
                                                                  : "non-productive"});
  }
  return render(header, rows, format);
}

std::string format_scatter(const ProductivityReport& report) {
  std::string out = "rel_efficiency,rel_effectiveness,class\n";
  for (std::size_t i = 0; i < report.classes.size(); ++i) {
    out += score5(report.rel_efficiency[i]) + "," + score5(report.rel_effectiveness[i]) + "," +
           (report.classes[i] == Productivity::Productive ? "productive" : "non-productive") + "\n";
  }
  return out;
}

}  // namespace kam

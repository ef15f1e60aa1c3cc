#pragma once

#include <string>
#include <vector>

#include "kam/analysis.hpp"
#include "kam/dataset.hpp"
#include "kam/model.hpp"

namespace kam {

enum class ReportFormat { Csv, PrettyTable };

// All emitters are pure formatting: byte-identical output for identical
// inputs. Scores print with 5 decimals, targets with 2.

// dmu,score,t_star,s_in_1..m,s_out_1..p,target_1..m+p
std::string format_results(const Dataset& ds, const std::vector<KamResult>& results,
                           ReportFormat format);

// dmu plus one target column per factor (inputs then outputs, factor names).
std::string format_targets(const Dataset& ds, const std::vector<KamResult>& results,
                           ReportFormat format);

// dmu,tau,w_in_1..m,w_out_1..p
std::string format_dual(const Dataset& ds, const std::vector<KamResult>& results,
                        ReportFormat format);

std::string format_rank(const Dataset& ds, const std::vector<KamResult>& results,
                        const std::vector<std::size_t>& ordering, ReportFormat format);

std::string format_dominance(const Dataset& ds, const DominanceReport& report, ReportFormat format);

std::string format_productivity(const Dataset& ds, const ProductivityReport& report,
                                ReportFormat format);

// (rel_efficiency, rel_effectiveness, class) triples for external plotting.
std::string format_scatter(const ProductivityReport& report);

}  // namespace kam

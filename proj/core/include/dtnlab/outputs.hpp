#pragma once

#include <string>
#include <vector>

#include "dtnlab/report.hpp"
#include "dtnlab/stats.hpp"

namespace dtnlab {

/// One pairwise significance-test row of comparison.csv. Degenerate inputs
/// (identical samples, too few pairs) keep the run going and are flagged.
struct ComparisonRow {
    std::string metric;
    std::string router_a;
    std::string router_b;
    StatMethod method = StatMethod::paired_t;
    bool degenerate = false;
    StatTestResult result;
};

/// Header: scenario_id,seed,router,created,started,relayed,aborted,dropped,
/// removed,delivered,delivery_prob,overhead_ratio,latency_avg,latency_med,
/// hopcount_avg — undefined metrics serialize as empty fields.
void write_reports_csv(const std::vector<MessageStatsReport>& reports, const std::string& path);

/// Header: metric,router_a,router_b,method,n,statistic,p_value,significant.
void write_comparison_csv(const std::vector<ComparisonRow>& rows, const std::string& path);

/// Static per-metric bar charts (mean over seeds per router): delivery
/// probability, overhead ratio on a log scale, latency.
void write_comparison_plots(const std::vector<MessageStatsReport>& reports,
                            const std::string& out_dir);

std::string format_metric(double v);

} // namespace dtnlab

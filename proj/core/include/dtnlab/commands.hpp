#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dtnlab/gbdt.hpp"
#include "dtnlab/outputs.hpp"
#include "dtnlab/report.hpp"
#include "dtnlab/scenario.hpp"

namespace dtnlab {

/// Validated, loaded inputs shared by every run of a command: the scenario,
/// its map, and any referenced models. Immutable after construction, safe
/// to share across concurrently executing runs.
struct RunPlan {
    ScenarioConfig cfg;
    MapGraph map;
    std::map<std::string, std::unique_ptr<GbdtModel>> models; // keyed by path

    const GbdtModel* model_for(const GroupConfig& group) const;
};

RunPlan make_plan(const std::string& config_path);

/// One deterministic simulation. `router_override`, when set, replaces
/// every group's router (compare mode). Mobility and traffic streams are
/// pure functions of (cfg, seed); router choice never perturbs them.
EventLog run_scenario(const RunPlan& plan, const ScenarioConfig& cfg, std::uint64_t seed,
                      std::optional<RouterKind> router_override = std::nullopt);

/// compute_report plus the identifying columns of reports.csv.
MessageStatsReport report_from_log(const EventLog& log, std::string scenario_id,
                                   std::uint64_t seed, std::string router);

struct RunOptions {
    std::string config_path;
    std::optional<std::uint64_t> seed; // overrides Scenario.seed
    std::string out_dir = "out";
    bool plots = false;
};

struct RunResult {
    MessageStatsReport report;
    std::string events_path;
    std::string reports_path;
};

/// `run`: one simulation, writes events.csv and a one-row reports.csv.
RunResult cmd_run(const RunOptions& opt);

struct SweepOptions {
    std::string config_path;
    // axis name -> values, applied as config overrides in the given order
    std::vector<std::pair<std::string, std::vector<std::string>>> axes;
    int seeds = 10;
    std::string out_dir = "out";
    int grid_cap = 1000; // cells x seeds above this is an error
};

struct SweepResult {
    std::vector<MessageStatsReport> reports;
    std::string reports_path;
};

/// `sweep`: the full cross product of axis values, `seeds` runs per cell
/// with seeds 0..seeds-1 shared across cells so downstream tests pair up.
SweepResult cmd_sweep(const SweepOptions& opt);

struct TrainOptions {
    std::vector<std::string> log_paths; // collect-mode event logs
    GbdtParams params;
    double train_fraction = 0.8;
    std::uint64_t split_seed = 0;
    std::string out_model_path;
};

struct TrainResult {
    TrainReport report;
    std::size_t dataset_size = 0;
    std::string model_path;
    std::string summary; // gain importances and test metrics, printable
};

/// `train`: dataset from the logs, 80/20 split, boosted-tree fit, model
/// file plus a gain/AUC summary.
TrainResult cmd_train(const TrainOptions& opt);

struct CompareOptions {
    std::string config_path;
    std::vector<std::string> routers;
    int seeds = 10;
    std::string out_dir = "out";
    bool plots = false;
};

struct CompareResult {
    std::vector<MessageStatsReport> reports; // |routers| x seeds rows
    std::vector<ComparisonRow> comparisons;
    std::string comparison_path;
    std::string reports_path;
    std::string verdict; // printable per-pair significance summary
};

/// `compare`: every router on identical (config, seed) pairs — same
/// mobility and traffic per seed regardless of router — then paired t and
/// Wilcoxon tests per metric per router pair at alpha 0.05. Degenerate
/// pairs are flagged and the run continues.
CompareResult cmd_compare(const CompareOptions& opt);

} // namespace dtnlab

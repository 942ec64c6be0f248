// Command-line front end: run / sweep / train / compare.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dtnlab/commands.hpp"
#include "dtnlab/error.hpp"

namespace {

// "name=v1,v2,v3" -> (name, [v1 v2 v3])
std::pair<std::string, std::vector<std::string>> parse_axis(const std::string& arg) {
    const auto eq = arg.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw dtnlab::ConfigError("bad --axis '" + arg + "', expected name=v1,v2,...");
    }
    std::pair<std::string, std::vector<std::string>> axis;
    axis.first = arg.substr(0, eq);
    std::size_t start = eq + 1;
    for (std::size_t i = start; i <= arg.size(); ++i) {
        if (i == arg.size() || arg[i] == ',') {
            if (i > start) axis.second.push_back(arg.substr(start, i - start));
            start = i + 1;
        }
    }
    if (axis.second.empty()) {
        throw dtnlab::ConfigError("bad --axis '" + arg + "', no values");
    }
    return axis;
}

void print_report_line(const dtnlab::MessageStatsReport& r) {
    std::cout << "router " << r.router << " seed " << r.seed << ": created " << r.created
              << ", delivered " << r.delivered << ", delivery_prob "
              << dtnlab::format_metric(r.delivery_prob);
    if (r.overhead_ratio) {
        std::cout << ", overhead " << dtnlab::format_metric(*r.overhead_ratio);
    }
    if (r.latency_avg) {
        std::cout << ", latency_avg " << dtnlab::format_metric(*r.latency_avg) << "s";
    }
    std::cout << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dtnlab - delay-tolerant network routing workbench"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "run one simulation");
    dtnlab::RunOptions run_opt;
    std::int64_t run_seed = -1;
    run->add_option("--config", run_opt.config_path, "scenario config file")->required();
    run->add_option("--seed", run_seed, "override Scenario.seed");
    run->add_option("--out", run_opt.out_dir, "output directory (default: out)");
    run->add_flag("--plots", run_opt.plots, "write SVG charts");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "run a parameter grid");
    dtnlab::SweepOptions sweep_opt;
    std::vector<std::string> axis_args;
    sweep->add_option("--config", sweep_opt.config_path, "scenario config file")->required();
    sweep->add_option("--axis", axis_args, "axis as name=v1,v2,... (repeatable)")->required();
    sweep->add_option("--seeds", sweep_opt.seeds, "seeds per grid cell (default: 10)");
    sweep->add_option("--out", sweep_opt.out_dir, "output directory (default: out)");
    sweep->add_option("--cap", sweep_opt.grid_cap, "maximum runs in the grid (default: 1000)");

    // train
    auto* train = app.add_subcommand("train", "train the forwarding model from collect logs");
    dtnlab::TrainOptions train_opt;
    std::vector<std::string> log_args;
    train->add_option("--logs", log_args, "collect-mode event logs, comma separated")
        ->required()
        ->delimiter(',');
    train->add_option("--out", train_opt.out_model_path, "output model file")->required();
    train->add_option("--rounds", train_opt.params.rounds, "boosting rounds (default: 100)");
    train->add_option("--depth", train_opt.params.max_depth, "max tree depth (default: 3)");
    train->add_option("--eta", train_opt.params.learning_rate, "learning rate (default: 0.1)");
    train->add_option("--l2", train_opt.params.l2_lambda, "L2 regularization (default: 1.0)");
    train->add_option("--min-split-gain", train_opt.params.min_split_gain,
                      "minimum split gain (default: 0)");
    train->add_option("--min-leaf", train_opt.params.min_leaf_examples,
                      "minimum examples per leaf (default: 5)");
    train->add_option("--split-seed", train_opt.split_seed, "train/test split seed (default: 0)");

    // compare
    auto* compare = app.add_subcommand("compare", "compare routers on paired seeds");
    dtnlab::CompareOptions compare_opt;
    compare->add_option("--config", compare_opt.config_path, "scenario config file")->required();
    compare->add_option("--routers", compare_opt.routers, "routers, comma separated")
        ->required()
        ->delimiter(',');
    compare->add_option("--seeds", compare_opt.seeds, "paired seeds per router (default: 10)");
    compare->add_option("--out", compare_opt.out_dir, "output directory (default: out)");
    compare->add_flag("--plots", compare_opt.plots, "write SVG charts");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            if (run_seed >= 0) run_opt.seed = static_cast<std::uint64_t>(run_seed);
            const auto result = dtnlab::cmd_run(run_opt);
            print_report_line(result.report);
            std::cout << "events: " << result.events_path << "\nreports: " << result.reports_path
                      << "\n";
        } else if (*sweep) {
            for (const auto& arg : axis_args) sweep_opt.axes.push_back(parse_axis(arg));
            const auto result = dtnlab::cmd_sweep(sweep_opt);
            std::cout << result.reports.size() << " runs -> " << result.reports_path << "\n";
        } else if (*train) {
            train_opt.log_paths = log_args;
            const auto result = dtnlab::cmd_train(train_opt);
            std::cout << result.summary;
        } else if (*compare) {
            const auto result = dtnlab::cmd_compare(compare_opt);
            std::cout << result.verdict;
            std::cout << "reports: " << result.reports_path
                      << "\ncomparison: " << result.comparison_path << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

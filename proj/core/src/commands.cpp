#include "dtnlab/commands.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <functional>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "dtnlab/dataset.hpp"
#include "dtnlab/error.hpp"
#include "dtnlab/world.hpp"

namespace dtnlab {

namespace fs = std::filesystem;

namespace {

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error("cannot create output directory " + dir + ": " + ec.message());
}

/// Runs `jobs` indexed tasks on a small pool; task i writes only slot i of
/// its output, so execution order cannot change any result.
void run_indexed(std::size_t jobs, const std::function<void(std::size_t)>& task) {
    const unsigned hw = std::thread::hardware_concurrency();
    const std::size_t workers = std::min<std::size_t>(jobs, hw > 0 ? hw : 1);
    if (workers <= 1) {
        for (std::size_t i = 0; i < jobs; ++i) task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= jobs) return;
                try {
                    task(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

void warn_missing_model(const ScenarioConfig& cfg, std::optional<RouterKind> override) {
    for (const auto& g : cfg.groups) {
        const RouterKind kind = override.value_or(g.router);
        if (kind == RouterKind::mlmaxprop && g.model_path.empty()) {
            std::cerr << "warning: " << g.name
                      << " runs mlmaxprop without a model, forwarding gate falls back to MaxProp\n";
        }
    }
}

} // namespace

const GbdtModel* RunPlan::model_for(const GroupConfig& group) const {
    if (group.model_path.empty()) return nullptr;
    const auto it = models.find(group.model_path);
    return it == models.end() ? nullptr : it->second.get();
}

RunPlan make_plan(const std::string& config_path) {
    RunPlan plan;
    plan.cfg = load_scenario(config_path);
    validate_files(plan.cfg);
    plan.map = load_wkt_map(plan.cfg.map_path);
    for (const auto& g : plan.cfg.groups) {
        if (!g.model_path.empty() && !plan.models.count(g.model_path)) {
            plan.models.emplace(g.model_path,
                                std::make_unique<GbdtModel>(GbdtModel::load(g.model_path)));
        }
    }
    return plan;
}

EventLog run_scenario(const RunPlan& plan, const ScenarioConfig& cfg, std::uint64_t seed,
                      std::optional<RouterKind> router_override) {
    World world(&plan.map, cfg.step, seed, cfg.collect);
    for (const auto& g : cfg.groups) {
        HostSpec spec;
        spec.group = g.name;
        spec.range = g.range;
        spec.bitrate = g.bitrate;
        spec.buffer_capacity = g.buffer_size;
        spec.speed = g.speed;
        spec.pause = g.pause;
        spec.router = router_override.value_or(g.router);
        spec.router_params.snw_copies = g.snw_copies;
        spec.router_params.hop_threshold = g.hop_threshold;
        spec.router_params.ml_threshold = g.ml_threshold;
        spec.router_params.model =
            spec.router == RouterKind::mlmaxprop ? plan.model_for(g) : nullptr;
        for (int i = 0; i < g.count; ++i) world.add_host(spec);
    }
    world.set_traffic(cfg.traffic, cfg.ttl);
    world.run(cfg.duration);
    return world.take_log();
}

MessageStatsReport report_from_log(const EventLog& log, std::string scenario_id,
                                   std::uint64_t seed, std::string router) {
    MessageStatsReport rep = compute_report(log);
    rep.scenario_id = std::move(scenario_id);
    rep.seed = seed;
    rep.router = std::move(router);
    return rep;
}

// -------------------------------------------------------------------- run

RunResult cmd_run(const RunOptions& opt) {
    const RunPlan plan = make_plan(opt.config_path);
    const std::uint64_t seed = opt.seed.value_or(plan.cfg.seed);
    warn_missing_model(plan.cfg, std::nullopt);

    const EventLog log = run_scenario(plan, plan.cfg, seed);

    ensure_dir(opt.out_dir);
    RunResult result;
    result.events_path = opt.out_dir + "/events.csv";
    result.reports_path = opt.out_dir + "/reports.csv";
    log.write_csv_file(result.events_path);
    result.report = report_from_log(log, "run", seed, plan.cfg.router_label());
    write_reports_csv({result.report}, result.reports_path);
    if (opt.plots) write_comparison_plots({result.report}, opt.out_dir);
    return result;
}

// ------------------------------------------------------------------ sweep

SweepResult cmd_sweep(const SweepOptions& opt) {
    if (opt.axes.empty()) throw ConfigError("sweep: no axes given");
    if (opt.seeds < 1) throw ConfigError("sweep: seeds must be >= 1");
    for (const auto& [key, values] : opt.axes) {
        if (values.empty()) throw ConfigError("sweep: axis '" + key + "' has no values");
        if (key == "Scenario.map" || key == "Scenario.seed" || key.find("modelPath") != std::string::npos) {
            throw ConfigError("sweep: '" + key + "' cannot be an axis");
        }
    }

    const RunPlan plan = make_plan(opt.config_path);

    // cartesian product, first axis slowest
    std::vector<std::vector<std::pair<std::string, std::string>>> cells{{}};
    for (const auto& [key, values] : opt.axes) {
        std::vector<std::vector<std::pair<std::string, std::string>>> expanded;
        expanded.reserve(cells.size() * values.size());
        for (const auto& cell : cells) {
            for (const auto& value : values) {
                auto next = cell;
                next.emplace_back(key, value);
                expanded.push_back(std::move(next));
            }
        }
        cells = std::move(expanded);
    }

    const std::size_t total = cells.size() * static_cast<std::size_t>(opt.seeds);
    if (total > static_cast<std::size_t>(opt.grid_cap)) {
        throw ConfigError("sweep: grid of " + std::to_string(total) + " runs exceeds cap of " +
                          std::to_string(opt.grid_cap));
    }

    struct Job {
        ScenarioConfig cfg;
        std::string scenario_id;
        std::uint64_t seed;
    };
    std::vector<Job> jobs;
    jobs.reserve(total);
    for (const auto& cell : cells) {
        ScenarioConfig cfg = plan.cfg;
        std::string id;
        for (const auto& [key, value] : cell) {
            apply_override(cfg, key, value);
            if (!id.empty()) id += ";";
            id += key + "=" + value;
        }
        for (int s = 0; s < opt.seeds; ++s) {
            jobs.push_back({cfg, id, static_cast<std::uint64_t>(s)});
        }
    }

    SweepResult result;
    result.reports.resize(jobs.size());
    run_indexed(jobs.size(), [&](std::size_t i) {
        const Job& job = jobs[i];
        const EventLog log = run_scenario(plan, job.cfg, job.seed);
        result.reports[i] = report_from_log(log, job.scenario_id, job.seed, job.cfg.router_label());
    });

    ensure_dir(opt.out_dir);
    result.reports_path = opt.out_dir + "/reports.csv";
    write_reports_csv(result.reports, result.reports_path);
    return result;
}

// ------------------------------------------------------------------ train

TrainResult cmd_train(const TrainOptions& opt) {
    if (opt.log_paths.empty()) throw ConfigError("train: no event logs given");
    if (opt.out_model_path.empty()) throw ConfigError("train: no output model path given");

    Dataset ds;
    for (const auto& path : opt.log_paths) {
        append_dataset(ds, EventLog::read_csv_file(path));
    }
    if (ds.empty()) throw Error("train: the logs contain no relayed events, dataset is empty");

    auto [train, test] = split_dataset(ds, opt.train_fraction, opt.split_seed);
    auto [model, report] = train_gbdt(train, opt.params);
    if (!test.empty()) evaluate_model(model, test, report);
    model.save(opt.out_model_path);

    std::ostringstream out;
    out << "dataset: " << ds.size() << " examples, " << train.size() << " train / " << test.size()
        << " test\n";
    out << "train log-loss " << format_metric(report.train_log_loss) << ", test log-loss "
        << format_metric(report.test_log_loss) << "\n";
    out << "test AUC " << format_metric(report.test_auc) << ", accuracy at 0.5 "
        << format_metric(report.test_accuracy) << " (tp " << report.tp << " fp " << report.fp
        << " tn " << report.tn << " fn " << report.fn << ")\n";
    out << "gain importance:\n";
    std::vector<std::size_t> order(RelayFeatureVector::kCount);
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return report.feature_gain[a] > report.feature_gain[b];
    });
    for (std::size_t i : order) {
        out << "  " << RelayFeatureVector::kNames[i] << " "
            << format_metric(report.feature_gain[i]) << "\n";
    }
    out << "model written to " << opt.out_model_path << "\n";

    TrainResult result;
    result.report = report;
    result.dataset_size = ds.size();
    result.model_path = opt.out_model_path;
    result.summary = out.str();
    return result;
}

// ---------------------------------------------------------------- compare

namespace {

std::optional<double> metric_value(const MessageStatsReport& r, const std::string& name) {
    if (name == "delivery_prob") return r.delivery_prob;
    if (name == "overhead_ratio") return r.overhead_ratio;
    if (name == "latency_avg") return r.latency_avg;
    if (name == "latency_med") return r.latency_med;
    if (name == "hopcount_avg") return r.hopcount_avg;
    return std::nullopt;
}

const std::vector<std::string> kComparedMetrics = {
    "delivery_prob", "overhead_ratio", "latency_avg", "latency_med", "hopcount_avg"};

} // namespace

CompareResult cmd_compare(const CompareOptions& opt) {
    if (opt.routers.size() < 2) throw ConfigError("compare: need at least 2 routers");
    if (opt.seeds < 2) throw ConfigError("compare: need at least 2 seeds");

    std::vector<RouterKind> kinds;
    kinds.reserve(opt.routers.size());
    for (const auto& name : opt.routers) kinds.push_back(router_kind_from_string(name));

    const RunPlan plan = make_plan(opt.config_path);
    for (RouterKind kind : kinds) warn_missing_model(plan.cfg, kind);

    const auto n_routers = kinds.size();
    const auto n_seeds = static_cast<std::size_t>(opt.seeds);
    CompareResult result;
    result.reports.resize(n_routers * n_seeds);
    run_indexed(n_routers * n_seeds, [&](std::size_t i) {
        const std::size_t r = i / n_seeds;
        const std::uint64_t seed = plan.cfg.seed + (i % n_seeds);
        const EventLog log = run_scenario(plan, plan.cfg, seed, kinds[r]);
        result.reports[i] = report_from_log(log, "compare", seed, opt.routers[r]);
    });

    std::ostringstream verdict;
    for (const auto& metric : kComparedMetrics) {
        for (std::size_t a = 0; a < n_routers; ++a) {
            for (std::size_t b = a + 1; b < n_routers; ++b) {
                std::vector<double> xs;
                std::vector<double> ys;
                for (std::size_t s = 0; s < n_seeds; ++s) {
                    const auto va = metric_value(result.reports[a * n_seeds + s], metric);
                    const auto vb = metric_value(result.reports[b * n_seeds + s], metric);
                    if (va && vb) {
                        xs.push_back(*va);
                        ys.push_back(*vb);
                    }
                }
                verdict << metric << " " << opt.routers[a] << " vs " << opt.routers[b] << ":";
                for (StatMethod method : {StatMethod::paired_t, StatMethod::wilcoxon}) {
                    ComparisonRow row;
                    row.metric = metric;
                    row.router_a = opt.routers[a];
                    row.router_b = opt.routers[b];
                    row.method = method;
                    try {
                        row.result = method == StatMethod::paired_t
                                         ? paired_t_test(xs, ys)
                                         : wilcoxon_signed_rank(xs, ys);
                        verdict << " " << to_string(method) << " p="
                                << format_metric(row.result.p_value)
                                << (row.result.significant ? " *" : "");
                    } catch (const Error&) {
                        row.degenerate = true;
                        row.result.n = static_cast<int>(xs.size());
                        verdict << " " << to_string(method) << " degenerate";
                    }
                    result.comparisons.push_back(std::move(row));
                }
                verdict << "\n";
            }
        }
    }
    result.verdict = verdict.str();

    ensure_dir(opt.out_dir);
    result.reports_path = opt.out_dir + "/reports.csv";
    result.comparison_path = opt.out_dir + "/comparison.csv";
    write_reports_csv(result.reports, result.reports_path);
    write_comparison_csv(result.comparisons, result.comparison_path);
    if (opt.plots) write_comparison_plots(result.reports, opt.out_dir);
    return result;
}

} // namespace dtnlab

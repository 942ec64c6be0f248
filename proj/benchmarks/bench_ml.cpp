#include <benchmark/benchmark.h>

#include "dtnlab/gbdt.hpp"
#include "dtnlab/rng.hpp"
#include "dtnlab/stats.hpp"

namespace {

dtnlab::Dataset synthetic_dataset(std::size_t n) {
    dtnlab::Rng rng(11);
    dtnlab::Dataset ds;
    ds.examples.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        dtnlab::RelayFeatureVector x;
        x.contact_frequency = rng.uniform(0.0, 10.0);
        x.buffer_occupancy = rng.uniform01();
        x.hop_count = static_cast<double>(rng.uniform_int(0, 6));
        x.message_age = rng.uniform(0.0, 3000.0);
        x.ttl_remaining = rng.uniform(0.0, 3600.0);
        const double score =
            x.ttl_remaining / 3600.0 - x.buffer_occupancy + 0.1 * x.contact_frequency;
        ds.examples.push_back({x, score + rng.uniform(-0.3, 0.3) > 0.5 ? 1 : 0});
    }
    return ds;
}

void BM_TrainGbdt(benchmark::State& state) {
    const auto ds = synthetic_dataset(static_cast<std::size_t>(state.range(0)));
    dtnlab::GbdtParams params;
    params.rounds = 50;
    for (auto _ : state) {
        auto [model, report] = dtnlab::train_gbdt(ds, params);
        benchmark::DoNotOptimize(report.train_log_loss);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TrainGbdt)->Arg(1000)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_PredictProb(benchmark::State& state) {
    const auto ds = synthetic_dataset(5000);
    dtnlab::GbdtParams params;
    params.rounds = 100;
    const auto [model, report] = dtnlab::train_gbdt(ds, params);
    dtnlab::Rng rng(3);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(model.predict_prob(ds.examples[i % ds.size()].features));
        ++i;
    }
}
BENCHMARK(BM_PredictProb);

void BM_WilcoxonExact(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    dtnlab::Rng rng(5);
    std::vector<double> xs(n);
    std::vector<double> ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        ys[i] = rng.uniform(0.0, 5.0);
        xs[i] = ys[i] + rng.uniform(-1.0, 1.2);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(dtnlab::wilcoxon_signed_rank(xs, ys));
    }
}
BENCHMARK(BM_WilcoxonExact)->Arg(10)->Arg(16)->Arg(20);

} // namespace

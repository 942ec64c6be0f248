#include <benchmark/benchmark.h>

#include <sstream>

#include "dtnlab/world.hpp"

namespace {

const dtnlab::MapGraph& grid_map() {
    static const dtnlab::MapGraph g = [] {
        std::ostringstream wkt;
        for (int r = 0; r < 11; ++r) {
            wkt << "LINESTRING (";
            for (int c = 0; c < 11; ++c) {
                if (c) wkt << ", ";
                wkt << c * 100 << " " << r * 100;
            }
            wkt << ")\n";
        }
        for (int c = 0; c < 11; ++c) {
            wkt << "LINESTRING (";
            for (int r = 0; r < 11; ++r) {
                if (r) wkt << ", ";
                wkt << c * 100 << " " << r * 100;
            }
            wkt << ")\n";
        }
        return dtnlab::parse_wkt_map(wkt.str());
    }();
    return g;
}

void run_world(dtnlab::RouterKind router, int hosts, double duration) {
    dtnlab::World world(&grid_map(), 1.0, 42, false);
    dtnlab::HostSpec spec;
    spec.range = 100.0;
    spec.bitrate = 250'000.0;
    spec.buffer_capacity = 5'000'000;
    spec.speed = {2.0, 4.0};
    spec.pause = {0.0, 30.0};
    spec.router = router;
    for (int i = 0; i < hosts; ++i) world.add_host(spec);
    dtnlab::TrafficConfig traffic;
    traffic.interval_min = 25.0;
    traffic.interval_max = 35.0;
    traffic.size_min = 500'000;
    traffic.size_max = 1'000'000;
    traffic.src_hosts = {0, static_cast<dtnlab::HostId>(hosts - 1)};
    traffic.dst_hosts = {0, static_cast<dtnlab::HostId>(hosts - 1)};
    traffic.stop = duration;
    world.set_traffic(traffic, 3600.0);
    world.run(duration);
    benchmark::DoNotOptimize(world.log().size());
}

void BM_SimHour(benchmark::State& state) {
    const auto router = static_cast<dtnlab::RouterKind>(state.range(0));
    for (auto _ : state) {
        run_world(router, 40, 3600.0);
    }
    state.SetItemsProcessed(state.iterations() * 3600);
}
BENCHMARK(BM_SimHour)
    ->Arg(static_cast<int>(dtnlab::RouterKind::epidemic))
    ->Arg(static_cast<int>(dtnlab::RouterKind::snw))
    ->Arg(static_cast<int>(dtnlab::RouterKind::maxprop))
    ->Unit(benchmark::kMillisecond);

void BM_SimNodeCount(benchmark::State& state) {
    for (auto _ : state) {
        run_world(dtnlab::RouterKind::maxprop, static_cast<int>(state.range(0)), 1800.0);
    }
}
BENCHMARK(BM_SimNodeCount)->Arg(20)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);

} // namespace

#include <benchmark/benchmark.h>

#include <sstream>

#include "dtnlab/map_graph.hpp"
#include "dtnlab/mobility.hpp"
#include "dtnlab/rng.hpp"

namespace {

std::string grid_wkt(int n, double spacing) {
    std::ostringstream wkt;
    for (int r = 0; r < n; ++r) {
        wkt << "LINESTRING (";
        for (int c = 0; c < n; ++c) {
            if (c) wkt << ", ";
            wkt << c * spacing << " " << r * spacing;
        }
        wkt << ")\n";
    }
    for (int c = 0; c < n; ++c) {
        wkt << "LINESTRING (";
        for (int r = 0; r < n; ++r) {
            if (r) wkt << ", ";
            wkt << c * spacing << " " << r * spacing;
        }
        wkt << ")\n";
    }
    return wkt.str();
}

void BM_ParseWkt(benchmark::State& state) {
    const auto text = grid_wkt(static_cast<int>(state.range(0)), 100.0);
    for (auto _ : state) {
        auto g = dtnlab::parse_wkt_map(text);
        benchmark::DoNotOptimize(g);
    }
}
BENCHMARK(BM_ParseWkt)->Arg(11)->Arg(31);

void BM_ShortestPath(benchmark::State& state) {
    const auto g = dtnlab::parse_wkt_map(grid_wkt(static_cast<int>(state.range(0)), 100.0));
    dtnlab::Rng rng(7);
    const auto n = g.waypoint_count();
    for (auto _ : state) {
        const auto src = static_cast<dtnlab::WaypointId>(rng.uniform_index(n));
        const auto dst = static_cast<dtnlab::WaypointId>(rng.uniform_index(n));
        benchmark::DoNotOptimize(g.shortest_path(src, dst));
    }
}
BENCHMARK(BM_ShortestPath)->Arg(11)->Arg(31)->Arg(51);

void BM_PlanNextLeg(benchmark::State& state) {
    const auto g = dtnlab::parse_wkt_map(grid_wkt(11, 100.0));
    dtnlab::Rng rng(7);
    dtnlab::WaypointId at = 0;
    for (auto _ : state) {
        const auto leg = dtnlab::plan_next_leg(g, at, rng, {0.5, 1.5}, {0.0, 120.0}, 0.0);
        at = leg.to_wp;
        benchmark::DoNotOptimize(leg);
    }
}
BENCHMARK(BM_PlanNextLeg);

} // namespace

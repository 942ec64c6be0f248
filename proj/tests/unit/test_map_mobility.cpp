#include "doctest.h"

#include <cmath>
#include <sstream>

#include "dtnlab/error.hpp"
#include "dtnlab/map_graph.hpp"
#include "dtnlab/mobility.hpp"
#include "dtnlab/rng.hpp"
#include "support/oracles.hpp"

using namespace dtnlab;

TEST_SUITE_BEGIN("map-mobility");

TEST_CASE("wkt: single linestring") {
    const auto g = parse_wkt_map(std::string("LINESTRING (0 0, 10 0)\n"));
    CHECK(g.waypoint_count() == 2);
    REQUIRE(g.edges().size() == 1);
    CHECK(g.edges()[0].length == doctest::Approx(10.0));
}

TEST_CASE("wkt: shared vertices merge exactly") {
    const auto g = parse_wkt_map(std::string("LINESTRING (0 0, 10 0)\nLINESTRING (10 0, 10 5)\n"));
    CHECK(g.waypoint_count() == 3);
    CHECK(g.edges().size() == 2);
}

TEST_CASE("wkt: nearly equal vertices stay distinct but disconnect the map") {
    // exact-equality merging is the contract; an off-by-epsilon vertex makes
    // a separate component and load fails
    CHECK_THROWS_AS(
        parse_wkt_map(std::string("LINESTRING (0 0, 10 0)\nLINESTRING (10.0000001 0, 10 5)\n")),
        ParseError);
}

TEST_CASE("wkt: degenerate and malformed input") {
    CHECK_THROWS_AS(parse_wkt_map(std::string("LINESTRING (0 0)\n")), ParseError);
    CHECK_THROWS_AS(parse_wkt_map(std::string("LINESTRING (0 zero, 1 1)\n")), ParseError);
    CHECK_THROWS_AS(parse_wkt_map(std::string("")), ParseError);
    CHECK_THROWS_AS(parse_wkt_map(std::string("POLYGON ((0 0, 1 1, 0 1, 0 0))\n")), ParseError);
}

TEST_CASE("wkt: comments, blank lines, duplicate edges") {
    const auto g = parse_wkt_map(
        std::string("# a comment\n\nLINESTRING (0 0, 1 0, 1 1)\nLINESTRING (1 0, 0 0)\n"));
    CHECK(g.waypoint_count() == 3);
    CHECK(g.edges().size() == 2); // duplicate 0-1 collapsed
}

TEST_CASE("wkt: round trip through to_wkt is isomorphic") {
    const auto g = parse_wkt_map(
        std::string("LINESTRING (0 0, 100 0, 100 100)\nLINESTRING (0 0, 0 100, 100 100)\n"));
    const auto g2 = parse_wkt_map(g.to_wkt());
    CHECK(g2.waypoint_count() == g.waypoint_count());
    REQUIRE(g2.edges().size() == g.edges().size());
    double len1 = 0.0;
    double len2 = 0.0;
    for (const auto& e : g.edges()) len1 += e.length;
    for (const auto& e : g2.edges()) len2 += e.length;
    CHECK(len1 == doctest::Approx(len2));
}

namespace {

// connected random graph on n waypoints: a random spanning chain plus extras
MapGraph random_graph(Rng& rng, int n) {
    std::ostringstream wkt;
    std::vector<Point> pts;
    for (int i = 0; i < n; ++i) {
        pts.push_back({std::floor(rng.uniform(0, 1000)), std::floor(rng.uniform(0, 1000))});
    }
    wkt << "LINESTRING (";
    for (int i = 0; i < n; ++i) {
        if (i) wkt << ", ";
        wkt << pts[i].x << " " << pts[i].y;
    }
    wkt << ")\n";
    const int extras = static_cast<int>(rng.uniform_int(1, n));
    for (int k = 0; k < extras; ++k) {
        const auto a = static_cast<std::size_t>(rng.uniform_index(pts.size()));
        const auto b = static_cast<std::size_t>(rng.uniform_index(pts.size()));
        if (a == b || pts[a] == pts[b]) continue;
        wkt << "LINESTRING (" << pts[a].x << " " << pts[a].y << ", " << pts[b].x << " " << pts[b].y
            << ")\n";
    }
    return parse_wkt_map(wkt.str());
}

} // namespace

TEST_CASE("shortest_path: detour wins over a longer direct edge") {
    // A=(0,0) B=(3,0) C=(3,4): direct A-C edge is 5, the detour via B is 7,
    // direct must win; removing the diagonal forces [A,B,C]
    const auto tri =
        parse_wkt_map(std::string("LINESTRING (0 0, 3 0, 3 4)\nLINESTRING (0 0, 3 4)\n"));
    CHECK(tri.path_length(tri.shortest_path(0, 2)) == doctest::Approx(5.0));
    CHECK(tri.shortest_path(1, 1) == std::vector<WaypointId>{1});

    const auto bent = parse_wkt_map(std::string("LINESTRING (0 0, 3 0)\nLINESTRING (3 0, 3 4)\n"));
    const auto path = bent.shortest_path(0, 2);
    CHECK(path == std::vector<WaypointId>{0, 1, 2});
    CHECK(bent.path_length(path) == doctest::Approx(7.0));
}

TEST_CASE("shortest_path: matches simple-path enumeration on random 8-waypoint graphs") {
    Rng rng(12345);
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const auto g = random_graph(rng, 8);
        const auto n = static_cast<int>(g.waypoint_count());
        const auto src = static_cast<WaypointId>(rng.uniform_index(n));
        const auto dst = static_cast<WaypointId>(rng.uniform_index(n));
        const double expect = oracles::shortest_path_by_enumeration(g, src, dst);
        const double got = g.path_length(g.shortest_path(src, dst));
        CHECK(got == doctest::Approx(expect).epsilon(1e-12));
        ++checked;
    }
    CHECK(checked == 60);
}

TEST_CASE("shortest_path: equal-length tie broken toward smaller waypoint index") {
    // two symmetric routes 0->1->2 and 0->3->2 of identical length
    const auto g = parse_wkt_map(std::string(
        "LINESTRING (0 0, 10 10, 20 0)\nLINESTRING (0 0, 10 -10, 20 0)\n"));
    REQUIRE(g.waypoint_count() == 4);
    const auto path = g.shortest_path(0, 2);
    REQUIRE(path.size() == 3);
    CHECK(path[1] == 1);
}

TEST_CASE("plan_next_leg: two-waypoint graph always picks the other waypoint") {
    const auto g = parse_wkt_map(std::string("LINESTRING (0 0, 10 0)\n"));
    Rng rng(7);
    for (int i = 0; i < 20; ++i) {
        const auto leg = plan_next_leg(g, 0, rng, {1.0, 2.0}, {0.0, 10.0}, 0.0);
        CHECK(leg.to_wp == 1);
        CHECK(leg.speed >= 1.0);
        CHECK(leg.speed <= 2.0);
        CHECK(leg.pause_after >= 0.0);
        CHECK(leg.pause_after <= 10.0);
    }
}

TEST_CASE("plan_next_leg: identical rng state gives identical legs") {
    const auto g = parse_wkt_map(
        std::string("LINESTRING (0 0, 10 0, 20 0, 20 10)\nLINESTRING (0 0, 0 10, 20 10)\n"));
    Rng rng1 = Rng::from_stream(42, "mobility", 3);
    Rng rng2 = Rng::from_stream(42, "mobility", 3);
    for (int i = 0; i < 10; ++i) {
        const auto a = plan_next_leg(g, 0, rng1, {0.5, 1.5}, {0.0, 120.0}, 5.0);
        const auto b = plan_next_leg(g, 0, rng2, {0.5, 1.5}, {0.0, 120.0}, 5.0);
        CHECK(a.to_wp == b.to_wp);
        CHECK(a.speed == b.speed);
        CHECK(a.pause_after == b.pause_after);
        CHECK(a.path == b.path);
    }
}

TEST_CASE("plan_next_leg: destination draw is uniform over the other waypoints") {
    // 5 waypoints in a star so every waypoint is reachable
    const auto g = parse_wkt_map(std::string(
        "LINESTRING (0 0, 10 0)\nLINESTRING (0 0, -10 0)\nLINESTRING (0 0, 0 10)\nLINESTRING (0 0, 0 -10)\n"));
    REQUIRE(g.waypoint_count() == 5);
    Rng rng(99);
    std::array<int, 5> counts{};
    const int draws = 10000;
    for (int i = 0; i < draws; ++i) {
        const auto leg = plan_next_leg(g, 0, rng, {1.0, 1.0}, {0.0, 0.0}, 0.0);
        counts[static_cast<std::size_t>(leg.to_wp)]++;
    }
    CHECK(counts[0] == 0);
    for (int w = 1; w < 5; ++w) {
        const double freq = static_cast<double>(counts[static_cast<std::size_t>(w)]) / draws;
        CHECK(freq > 0.20);
        CHECK(freq < 0.30);
    }
}

TEST_CASE("plan_next_leg: single-waypoint graph is an error") {
    // a degenerate linestring collapses to one waypoint
    const auto g = parse_wkt_map(std::string("LINESTRING (0 0, 0 0)\n"));
    REQUIRE(g.waypoint_count() == 1);
    Rng rng(1);
    CHECK_THROWS_AS(plan_next_leg(g, 0, rng, {1.0, 1.0}, {0.0, 0.0}, 0.0), Error);
}

TEST_CASE("position_at: linear motion, clamp, polyline corner") {
    const auto g = parse_wkt_map(std::string("LINESTRING (0 0, 10 0)\nLINESTRING (0 0, 3 0, 3 4)\n"));
    // waypoints: 0=(0,0) 1=(10,0) 2=(3,0) 3=(3,4)
    MovementLeg straight{0, 1, {0, 1}, 1.0, 0.0, 0.0};
    const auto p4 = position_at(g, straight, 4.0);
    CHECK(p4.x == doctest::Approx(4.0));
    CHECK(p4.y == doctest::Approx(0.0));
    const auto beyond = position_at(g, straight, 1000.0);
    CHECK(beyond.x == doctest::Approx(10.0));

    MovementLeg corner{0, 3, {0, 2, 3}, 1.0, 0.0, 0.0};
    const auto p5 = position_at(g, corner, 5.0);
    CHECK(p5.x == doctest::Approx(3.0));
    CHECK(p5.y == doctest::Approx(2.0));
}

TEST_CASE("position_at: every sample lies on the leg's polyline") {
    Rng rng(4242);
    const auto g = random_graph(rng, 8);
    for (int trial = 0; trial < 40; ++trial) {
        Rng leg_rng(static_cast<std::uint64_t>(trial) * 7919 + 1);
        const auto from = static_cast<WaypointId>(rng.uniform_index(g.waypoint_count()));
        const auto leg = plan_next_leg(g, from, leg_rng, {0.5, 3.0}, {0.0, 60.0}, 0.0);
        const double travel = leg.travel_time(g);
        for (int s = 0; s <= 20; ++s) {
            const double t = travel * s / 20.0 * 1.1; // beyond arrival too
            const auto p = position_at(g, leg, t);
            double best = 1e18;
            for (std::size_t i = 1; i < leg.path.size(); ++i) {
                const Point a = g.waypoint(leg.path[i - 1]);
                const Point b = g.waypoint(leg.path[i]);
                const double len2 = distance_sq(a, b);
                double u = len2 > 0 ? ((p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y)) / len2
                                    : 0.0;
                u = std::clamp(u, 0.0, 1.0);
                const Point proj{a.x + u * (b.x - a.x), a.y + u * (b.y - a.y)};
                best = std::min(best, distance(p, proj));
            }
            CHECK(best < 1e-9);
        }
    }
}

TEST_SUITE_END();

#pragma once

#include <vector>

#include "dtnlab/map_graph.hpp"
#include "dtnlab/rng.hpp"

namespace dtnlab {

/// One shortest-path movement leg: depart from a waypoint, follow the path
/// at a constant speed, then pause at the destination.
struct MovementLeg {
    WaypointId from_wp = 0;
    WaypointId to_wp = 0;
    std::vector<WaypointId> path; // from_wp ... to_wp, consecutive pairs share an edge
    double speed = 1.0;           // m/s
    double depart_at = 0.0;       // seconds
    double pause_after = 0.0;     // seconds, spent at to_wp

    double travel_time(const MapGraph& g) const {
        return g.path_length(path) / speed;
    }
    double arrival_time(const MapGraph& g) const { return depart_at + travel_time(g); }
    /// When the pause at the destination is over and the next leg may start.
    double end_time(const MapGraph& g) const { return arrival_time(g) + pause_after; }
};

struct SpeedRange {
    double min = 0.5;
    double max = 1.5;

    friend bool operator==(const SpeedRange&, const SpeedRange&) = default;
};

struct PauseRange {
    double min = 0.0;
    double max = 120.0;

    friend bool operator==(const PauseRange&, const PauseRange&) = default;
};

/// Shortest Path Map-Based Movement: the destination waypoint is drawn
/// uniformly from all waypoints except the current one, the route is the
/// shortest map path, speed and pause are drawn uniformly from their ranges.
/// Identical rng state yields an identical leg.
MovementLeg plan_next_leg(const MapGraph& g, WaypointId current_wp, Rng& rng,
                          SpeedRange speed, PauseRange pause, double depart_at);

/// Position along the leg at time t (>= depart_at): the point at distance
/// speed * (t - depart_at) along the path polyline, clamped to the final
/// waypoint once arrived (and throughout the pause).
Point position_at(const MapGraph& g, const MovementLeg& leg, double t);

} // namespace dtnlab

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dtnlab/geometry.hpp"

namespace dtnlab {

using WaypointId = std::int32_t;

/// Undirected road graph for map-based movement. Immutable once built and
/// validated; safe to share read-only across concurrent simulation runs.
class MapGraph {
public:
    struct Edge {
        WaypointId a = 0; // a < b
        WaypointId b = 0;
        double length = 0.0; // meters, Euclidean distance between endpoints
    };

    const std::vector<Point>& waypoints() const { return waypoints_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const Point& waypoint(WaypointId id) const { return waypoints_[static_cast<std::size_t>(id)]; }
    std::size_t waypoint_count() const { return waypoints_.size(); }

    /// Neighbors of `id` with edge lengths, sorted by waypoint index.
    struct Neighbor {
        WaypointId to;
        double length;
    };
    const std::vector<Neighbor>& neighbors(WaypointId id) const {
        return adjacency_[static_cast<std::size_t>(id)];
    }

    /// Minimum-total-length waypoint path from src to dst (both inclusive).
    /// Ties are broken by always stepping to the smallest next waypoint
    /// index among optimal continuations, so the result is reproducible.
    std::vector<WaypointId> shortest_path(WaypointId src, WaypointId dst) const;

    /// Total polyline length of a waypoint path.
    double path_length(const std::vector<WaypointId>& path) const;

    /// One LINESTRING per edge; parse_wkt_map(to_wkt()) reproduces the graph.
    std::string to_wkt() const;

    friend MapGraph parse_wkt_map(std::istream& in);

private:
    void build_adjacency();
    void validate() const; // connectivity, no self loops

    std::vector<Point> waypoints_;
    std::vector<Edge> edges_;
    std::vector<std::vector<Neighbor>> adjacency_;
};

/// Parses a map from WKT text: one `LINESTRING (x1 y1, x2 y2, ...)` per line,
/// coordinates in meters. Blank lines and lines starting with `#` are
/// ignored. Vertices with exactly equal coordinates are merged into one
/// waypoint; duplicate edges are collapsed.
///
/// Throws ParseError on malformed numeric tokens, a LINESTRING with fewer
/// than 2 points, an empty map, or a disconnected result.
MapGraph parse_wkt_map(std::istream& in);
MapGraph parse_wkt_map(const std::string& text);
MapGraph load_wkt_map(const std::string& path);

} // namespace dtnlab

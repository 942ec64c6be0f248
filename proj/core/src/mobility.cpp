#include "dtnlab/mobility.hpp"

#include "dtnlab/error.hpp"

namespace dtnlab {

MovementLeg plan_next_leg(const MapGraph& g, WaypointId current_wp, Rng& rng,
                          SpeedRange speed, PauseRange pause, double depart_at) {
    const auto n = static_cast<std::int64_t>(g.waypoint_count());
    if (n < 2) throw Error("plan_next_leg: map has fewer than 2 waypoints");

    // uniform over waypoints excluding the current one
    auto dest = static_cast<WaypointId>(rng.uniform_int(0, n - 2));
    if (dest >= current_wp) ++dest;

    MovementLeg leg;
    leg.from_wp = current_wp;
    leg.to_wp = dest;
    leg.path = g.shortest_path(current_wp, dest);
    leg.speed = rng.uniform(speed.min, speed.max);
    leg.pause_after = rng.uniform(pause.min, pause.max);
    leg.depart_at = depart_at;
    return leg;
}

Point position_at(const MapGraph& g, const MovementLeg& leg, double t) {
    double remaining = leg.speed * (t - leg.depart_at);
    if (remaining < 0.0) remaining = 0.0;
    for (std::size_t i = 1; i < leg.path.size(); ++i) {
        const Point& a = g.waypoint(leg.path[i - 1]);
        const Point& b = g.waypoint(leg.path[i]);
        const double seg = distance(a, b);
        if (remaining <= seg) {
            const double f = seg > 0.0 ? remaining / seg : 0.0;
            return {a.x + (b.x - a.x) * f, a.y + (b.y - a.y) * f};
        }
        remaining -= seg;
    }
    return g.waypoint(leg.path.back()); // arrived (or pausing)
}

} // namespace dtnlab

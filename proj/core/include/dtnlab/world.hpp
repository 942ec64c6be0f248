#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "dtnlab/event_log.hpp"
#include "dtnlab/message.hpp"
#include "dtnlab/mobility.hpp"
#include "dtnlab/rng.hpp"
#include "dtnlab/routing.hpp"
#include "dtnlab/traffic.hpp"

namespace dtnlab {

/// Symmetric connectivity: two hosts are in contact iff their distance does
/// not exceed the smaller of the two ranges.
inline bool connected(const Point& pos_a, double range_a, const Point& pos_b, double range_b) {
    const double r = range_a < range_b ? range_a : range_b;
    return distance_sq(pos_a, pos_b) <= r * r;
}

struct HostSpec {
    std::string group = "Group1";
    double range = 100.0;            // meters
    double bitrate = 250'000.0;      // bytes/s
    std::uint64_t buffer_capacity = 5'000'000;
    SpeedRange speed;
    PauseRange pause;
    RouterKind router = RouterKind::epidemic;
    RouterParams router_params;
};

/// Deterministic time-stepped store-carry-forward world. One instance per
/// run, strictly single threaded; distinct runs may execute concurrently
/// and share only the immutable map and model.
class World {
public:
    /// `map` may be null when every host is pinned (crafted test worlds).
    World(const MapGraph* map, double step, std::uint64_t seed, bool collect);
    ~World();

    World(const World&) = delete;
    World& operator=(const World&) = delete;

    /// Adds a host moving per SPMBM; spawn waypoint and legs come from the
    /// host's own mobility stream, so router choice never perturbs them.
    HostId add_host(const HostSpec& spec);
    /// Adds a stationary host at an explicit position (test scenarios).
    HostId add_pinned_host(const HostSpec& spec, Point position);

    void set_traffic(const TrafficConfig& cfg, double ttl);
    /// Creates a message directly, bypassing the traffic generator.
    MessageSeq inject_message(HostId src, HostId dst, std::uint64_t size, double ttl);
    /// Repositions a pinned host between steps (crafted test scenarios).
    void teleport(HostId id, Point position);

    /// Advances the clock from 0 to `duration` in steps of the configured
    /// step width. Each step runs, in order: traffic generation, movement,
    /// connectivity update, transfer progression, TTL expiry.
    void run(double duration);
    void step_once();

    double now() const { return now_; }
    const EventLog& log() const { return log_; }
    EventLog take_log() { return std::move(log_); }
    std::size_t host_count() const { return hosts_.size(); }
    const Buffer& host_buffer(HostId id) const;
    Point host_position(HostId id) const;
    int completed_contacts(HostId a, HostId b) const;

private:
    struct Host;
    struct TransferState;
    struct Direction;
    struct Connection;
    class HostCtx;

    Host& host(HostId id) { return *hosts_[static_cast<std::size_t>(id)]; }
    const Host& host(HostId id) const { return *hosts_[static_cast<std::size_t>(id)]; }
    RouterContext& ctx(HostId id);

    void phase_traffic();
    void phase_movement();
    void phase_connectivity();
    void phase_transfers();
    void phase_ttl();

    void contact_up(HostId a, HostId b);
    void contact_down(HostId a, HostId b);
    void try_start(Connection& conn, bool forward);
    void progress_transfer(Connection& conn, bool forward);
    void complete_transfer(Connection& conn, bool forward);
    void abort_transfer(Connection& conn, bool forward, EventReason reason);

    void create_message(Message msg);
    bool insert_into_buffer(HostId id, Message msg);
    void remove_buffered(HostId id, MessageSeq seq, EventReason reason);
    std::vector<MessageSeq> protected_seqs(const Host& h) const;

    void emit(EventRecord rec) { log_.append(std::move(rec)); }

    const MapGraph* map_;
    double step_width_;
    std::uint64_t seed_;
    bool collect_;
    double now_ = 0.0;
    bool started_ = false;

    std::vector<std::unique_ptr<Host>> hosts_;
    std::vector<std::unique_ptr<HostCtx>> ctxs_;
    std::map<std::pair<HostId, HostId>, Connection> connections_;
    std::vector<char> in_range_; // host_count^2 adjacency snapshot
    std::map<std::pair<HostId, HostId>, int> contact_counts_;
    std::set<MessageSeq> delivered_;
    std::optional<TrafficGenerator> traffic_;
    MessageSeq inject_seq_ = 0;
    EventLog log_;
};

} // namespace dtnlab

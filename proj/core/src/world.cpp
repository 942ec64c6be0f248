#include "dtnlab/world.hpp"

#include <algorithm>
#include <cmath>

#include "dtnlab/error.hpp"
#include "dtnlab/features.hpp"

namespace dtnlab {

struct World::TransferState {
    MessageSeq seq = 0;
    double bytes_remaining = 0.0;
    double started_at = 0.0;
    Message payload; // sender's copy at start time
    std::optional<RelayFeatureVector> features;
};

struct World::Direction {
    std::optional<TransferState> transfer;
    std::set<MessageSeq> known; // ids the peer holds or refuses, as far as we know
    std::uint64_t eval_version = kNeverEvaluated;

    static constexpr std::uint64_t kNeverEvaluated = static_cast<std::uint64_t>(-1);
};

struct World::Connection {
    HostId a = -1; // a < b
    HostId b = -1;
    double up_since = 0.0;
    Direction forward;  // a -> b
    Direction backward; // b -> a
};

struct World::Host {
    HostId id = -1;
    HostSpec spec;
    bool pinned = false;
    Point pos;
    MovementLeg leg;
    Rng mobility_rng{0};
    Buffer buffer;
    std::unique_ptr<Router> router;
    std::uint64_t version = 0; // bumped on any state offers depend on
    std::map<MessageSeq, int> in_flight; // active outgoing transfers per message
};

/// Engine services for one host's router.
class World::HostCtx final : public RouterContext {
public:
    HostCtx(World* world, HostId id) : world_(world), id_(id) {}

    HostId self() const override { return id_; }
    double now() const override { return world_->now_; }
    const Buffer& buffer() const override { return world_->host(id_).buffer; }
    void remove_message(MessageSeq seq, EventReason reason) override {
        world_->remove_buffered(id_, seq, reason);
    }
    int completed_contacts(HostId a, HostId b) const override {
        return world_->completed_contacts(a, b);
    }
    const Buffer& peer_buffer(HostId peer) const override {
        return world_->host(peer).buffer;
    }

private:
    World* world_;
    HostId id_;
};

World::World(const MapGraph* map, double step, std::uint64_t seed, bool collect)
    : map_(map), step_width_(step), seed_(seed), collect_(collect) {
    if (step <= 0.0) throw ConfigError("world: step width must be positive");
}

World::~World() = default;

RouterContext& World::ctx(HostId id) { return *ctxs_[static_cast<std::size_t>(id)]; }

HostId World::add_host(const HostSpec& spec) {
    if (!map_) throw Error("world: moving hosts need a map");
    if (started_) throw Error("world: cannot add hosts after the run started");
    const auto id = static_cast<HostId>(hosts_.size());
    auto h = std::make_unique<Host>();
    h->id = id;
    h->spec = spec;
    h->buffer = Buffer(spec.buffer_capacity);
    h->router = make_router(spec.router, spec.router_params);
    h->mobility_rng = Rng::from_stream(seed_, "mobility", static_cast<std::uint64_t>(id));
    const auto spawn = static_cast<WaypointId>(
        h->mobility_rng.uniform_index(map_->waypoint_count()));
    h->leg = plan_next_leg(*map_, spawn, h->mobility_rng, spec.speed, spec.pause, 0.0);
    h->pos = map_->waypoint(spawn);
    hosts_.push_back(std::move(h));
    ctxs_.push_back(std::make_unique<HostCtx>(this, id));
    return id;
}

HostId World::add_pinned_host(const HostSpec& spec, Point position) {
    if (started_) throw Error("world: cannot add hosts after the run started");
    const auto id = static_cast<HostId>(hosts_.size());
    auto h = std::make_unique<Host>();
    h->id = id;
    h->spec = spec;
    h->pinned = true;
    h->pos = position;
    h->buffer = Buffer(spec.buffer_capacity);
    h->router = make_router(spec.router, spec.router_params);
    hosts_.push_back(std::move(h));
    ctxs_.push_back(std::make_unique<HostCtx>(this, id));
    return id;
}

void World::set_traffic(const TrafficConfig& cfg, double ttl) {
    traffic_.emplace(cfg, ttl, Rng::from_stream(seed_, "traffic"));
}

MessageSeq World::inject_message(HostId src, HostId dst, std::uint64_t size, double ttl) {
    if (traffic_) throw Error("world: inject_message cannot be mixed with a traffic generator");
    Message m;
    m.seq = ++inject_seq_;
    m.src = src;
    m.dst = dst;
    m.size = size;
    m.created_at = now_;
    m.ttl = ttl;
    m.path = {src};
    const MessageSeq seq = m.seq;
    create_message(std::move(m));
    return seq;
}

void World::teleport(HostId id, Point position) {
    Host& h = host(id);
    if (!h.pinned) throw Error("world: teleport is only valid for pinned hosts");
    h.pos = position;
}

const Buffer& World::host_buffer(HostId id) const { return host(id).buffer; }

Point World::host_position(HostId id) const { return host(id).pos; }

int World::completed_contacts(HostId a, HostId b) const {
    const auto key = std::minmax(a, b);
    const auto it = contact_counts_.find(key);
    return it == contact_counts_.end() ? 0 : it->second;
}

std::vector<MessageSeq> World::protected_seqs(const Host& h) const {
    std::vector<MessageSeq> out;
    out.reserve(h.in_flight.size());
    for (const auto& [seq, count] : h.in_flight) out.push_back(seq);
    return out;
}

void World::run(double duration) {
    if (duration <= 0.0) throw ConfigError("world: duration must be positive");
    const auto steps = static_cast<long long>(std::floor(duration / step_width_ + 1e-9));
    for (long long k = 0; k <= steps; ++k) {
        now_ = static_cast<double>(k) * step_width_;
        started_ = true;
        phase_traffic();
        phase_movement();
        phase_connectivity();
        phase_transfers();
        phase_ttl();
    }
}

void World::step_once() {
    if (started_) now_ += step_width_;
    started_ = true;
    phase_traffic();
    phase_movement();
    phase_connectivity();
    phase_transfers();
    phase_ttl();
}

// ---------------------------------------------------------------- phase 1

void World::create_message(Message msg) {
    Host& src = host(msg.src);
    EventRecord rec;
    rec.time = msg.created_at;
    rec.kind = EventKind::created;
    rec.msg = msg.seq;
    rec.from = msg.src;
    rec.to = msg.dst;
    rec.size = msg.size;
    rec.hop_count = 0;
    emit(std::move(rec));

    const Message copy = msg; // keep a copy for the router hook
    if (insert_into_buffer(src.id, std::move(msg))) {
        src.router->on_message_created(ctx(src.id), copy);
    }
}

void World::phase_traffic() {
    if (!traffic_) return;
    for (auto& m : traffic_->poll(now_)) {
        create_message(std::move(m));
    }
}

// ---------------------------------------------------------------- phase 2

void World::phase_movement() {
    for (auto& hp : hosts_) {
        Host& h = *hp;
        if (h.pinned) continue;
        while (h.leg.end_time(*map_) <= now_) {
            const double depart = h.leg.end_time(*map_);
            h.leg = plan_next_leg(*map_, h.leg.to_wp, h.mobility_rng, h.spec.speed,
                                  h.spec.pause, depart);
        }
        h.pos = position_at(*map_, h.leg, now_);
    }
}

// ---------------------------------------------------------------- phase 3

void World::phase_connectivity() {
    const auto n = hosts_.size();
    if (in_range_.size() != n * n) in_range_.assign(n * n, 0);

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const Host& a = *hosts_[i];
            const Host& b = *hosts_[j];
            const bool now_connected = connected(a.pos, a.spec.range, b.pos, b.spec.range);
            char& cell = in_range_[i * n + j];
            if (now_connected && !cell) {
                cell = 1;
                contact_up(a.id, b.id);
            } else if (!now_connected && cell) {
                cell = 0;
                contact_down(a.id, b.id);
            }
        }
    }
}

void World::contact_up(HostId a, HostId b) {
    EventRecord rec;
    rec.time = now_;
    rec.kind = EventKind::contact_up;
    rec.from = a;
    rec.to = b;
    emit(std::move(rec));

    Host& ha = host(a);
    Host& hb = host(b);

    ha.router->on_meet(ctx(a), b);
    hb.router->on_meet(ctx(b), a);

    // symmetric metadata exchange: both sides export before either absorbs
    const PeerMetadata meta_a = ha.router->export_metadata(ctx(a));
    const PeerMetadata meta_b = hb.router->export_metadata(ctx(b));
    ha.router->exchange_metadata(ctx(a), meta_b);
    hb.router->exchange_metadata(ctx(b), meta_a);
    ha.router->on_contact_up(ctx(a), b);
    hb.router->on_contact_up(ctx(b), a);

    Connection conn;
    conn.a = a;
    conn.b = b;
    conn.up_since = now_;
    auto seed_known = [](Direction& dir, const PeerMetadata& theirs, const PeerMetadata& ours) {
        dir.known = theirs.held;
        dir.known.insert(theirs.acked.begin(), theirs.acked.end());
        dir.known.insert(ours.acked.begin(), ours.acked.end());
    };
    seed_known(conn.forward, meta_b, meta_a);
    seed_known(conn.backward, meta_a, meta_b);
    connections_.emplace(std::make_pair(a, b), std::move(conn));

    ++ha.version;
    ++hb.version;
}

void World::contact_down(HostId a, HostId b) {
    const auto key = std::make_pair(a, b);
    auto it = connections_.find(key);
    if (it == connections_.end()) return;

    if (it->second.forward.transfer) abort_transfer(it->second, true, EventReason::link_down);
    if (it->second.backward.transfer) abort_transfer(it->second, false, EventReason::link_down);

    EventRecord rec;
    rec.time = now_;
    rec.kind = EventKind::contact_down;
    rec.from = a;
    rec.to = b;
    emit(std::move(rec));

    host(a).router->on_contact_down(ctx(a), b);
    host(b).router->on_contact_down(ctx(b), a);

    ++contact_counts_[key];
    connections_.erase(it);
    ++host(a).version;
    ++host(b).version;
}

// ---------------------------------------------------------------- phase 4

void World::phase_transfers() {
    // idle directions re-evaluate their offers once something changed
    for (auto& [key, conn] : connections_) {
        if (!conn.forward.transfer &&
            conn.forward.eval_version != host(conn.a).version) {
            try_start(conn, true);
        }
        if (!conn.backward.transfer &&
            conn.backward.eval_version != host(conn.b).version) {
            try_start(conn, false);
        }
    }
    // byte progression; transfers started this step wait for the next one
    for (auto& [key, conn] : connections_) {
        if (conn.forward.transfer && conn.forward.transfer->started_at < now_) {
            progress_transfer(conn, true);
        }
        if (conn.backward.transfer && conn.backward.transfer->started_at < now_) {
            progress_transfer(conn, false);
        }
    }
}

void World::try_start(Connection& conn, bool forward) {
    Direction& dir = forward ? conn.forward : conn.backward;
    const HostId sender_id = forward ? conn.a : conn.b;
    const HostId receiver_id = forward ? conn.b : conn.a;
    Host& sender = host(sender_id);
    Host& receiver = host(receiver_id);

    dir.eval_version = sender.version;

    const ContactView view{receiver_id, &dir.known};
    for (MessageSeq seq : sender.router->offer_list(ctx(sender_id), view)) {
        const Message* msg = sender.buffer.find(seq);
        if (!msg) continue;
        if (receiver.buffer.has(seq) || receiver.router->has_acked(seq)) {
            dir.known.insert(seq); // learned the hard way, skip silently
            continue;
        }

        TransferState t;
        t.seq = seq;
        t.bytes_remaining = static_cast<double>(msg->size);
        t.started_at = now_;
        t.payload = *msg;
        if (collect_) {
            t.features = extract_features(*msg, receiver.buffer,
                                          completed_contacts(receiver_id, msg->dst), now_);
        }

        EventRecord rec;
        rec.time = now_;
        rec.kind = EventKind::started;
        rec.msg = seq;
        rec.from = sender_id;
        rec.to = receiver_id;
        rec.size = msg->size;
        rec.hop_count = msg->hop_count();
        emit(std::move(rec));

        ++sender.in_flight[seq];
        dir.transfer = std::move(t);
        return;
    }
}

void World::progress_transfer(Connection& conn, bool forward) {
    Direction& dir = forward ? conn.forward : conn.backward;
    const HostId sender_id = forward ? conn.a : conn.b;
    dir.transfer->bytes_remaining -= host(sender_id).spec.bitrate * step_width_;
    if (dir.transfer->bytes_remaining <= 0.0) {
        complete_transfer(conn, forward);
        try_start(conn, forward); // the freed slot takes the next queued offer
    }
}

void World::abort_transfer(Connection& conn, bool forward, EventReason reason) {
    Direction& dir = forward ? conn.forward : conn.backward;
    const HostId sender_id = forward ? conn.a : conn.b;
    const HostId receiver_id = forward ? conn.b : conn.a;
    const TransferState& t = *dir.transfer;

    EventRecord rec;
    rec.time = now_;
    rec.kind = EventKind::aborted;
    rec.msg = t.seq;
    rec.from = sender_id;
    rec.to = receiver_id;
    rec.size = t.payload.size;
    rec.hop_count = t.payload.hop_count();
    rec.reason = reason;
    emit(std::move(rec));

    Host& sender = host(sender_id);
    auto it = sender.in_flight.find(t.seq);
    if (it != sender.in_flight.end() && --it->second == 0) sender.in_flight.erase(it);
    dir.transfer.reset();
    ++sender.version;
    ++host(receiver_id).version;
}

void World::complete_transfer(Connection& conn, bool forward) {
    Direction& dir = forward ? conn.forward : conn.backward;
    const HostId sender_id = forward ? conn.a : conn.b;
    const HostId receiver_id = forward ? conn.b : conn.a;
    Host& sender = host(sender_id);
    Host& receiver = host(receiver_id);

    const TransferState t = std::move(*dir.transfer);
    dir.transfer.reset();
    auto fit = sender.in_flight.find(t.seq);
    if (fit != sender.in_flight.end() && --fit->second == 0) sender.in_flight.erase(fit);

    // the sender may have entered the wait phase while the bytes were in
    // the air; quota routers veto such relays
    if (!sender.router->approve_completion(ctx(sender_id), t.seq, receiver_id)) {
        EventRecord rec;
        rec.time = now_;
        rec.kind = EventKind::aborted;
        rec.msg = t.seq;
        rec.from = sender_id;
        rec.to = receiver_id;
        rec.size = t.payload.size;
        rec.hop_count = t.payload.hop_count();
        rec.reason = EventReason::quota;
        emit(std::move(rec));
        ++sender.version;
        ++receiver.version;
        return;
    }

    if (receiver.buffer.has(t.seq)) {
        // a copy arrived over another contact while this one was in flight
        EventRecord rec;
        rec.time = now_;
        rec.kind = EventKind::aborted;
        rec.msg = t.seq;
        rec.from = sender_id;
        rec.to = receiver_id;
        rec.size = t.payload.size;
        rec.hop_count = t.payload.hop_count();
        rec.reason = EventReason::duplicate;
        emit(std::move(rec));
        dir.known.insert(t.seq);
        ++sender.version;
        ++receiver.version;
        return;
    }

    const Message received = t.payload.relayed_to(receiver_id);

    EventRecord rec;
    rec.time = now_;
    rec.kind = EventKind::relayed;
    rec.msg = t.seq;
    rec.from = sender_id;
    rec.to = receiver_id;
    rec.size = received.size;
    rec.hop_count = received.hop_count(); // receiver's post-receive hop count
    rec.features = t.features;
    emit(std::move(rec));

    dir.known.insert(t.seq);
    const std::uint64_t note = sender.router->on_relayed(ctx(sender_id), t.seq, receiver_id);

    if (receiver_id == received.dst) {
        if (!delivered_.count(t.seq)) {
            delivered_.insert(t.seq);
            EventRecord del;
            del.time = now_;
            del.kind = EventKind::delivered;
            del.msg = t.seq;
            del.from = sender_id;
            del.to = receiver_id;
            del.size = received.size;
            del.hop_count = received.hop_count();
            del.delivered_path = received.path;
            emit(std::move(del));
            receiver.router->on_delivered_as_destination(ctx(receiver_id), received);
        }
        // delivered copies are not buffered for further relaying
    } else if (receiver.router->has_acked(t.seq)) {
        // refused on receipt: the transmission happened, the copy dies here
    } else if (insert_into_buffer(receiver_id, received)) {
        receiver.router->on_received(ctx(receiver_id), received, sender_id, note);
    }

    ++sender.version;
    ++receiver.version;
}

// ---------------------------------------------------------------- phase 5

void World::phase_ttl() {
    for (auto& hp : hosts_) {
        Host& h = *hp;
        if (h.buffer.empty()) continue;
        for (auto& expired : expire_ttl(h.buffer, now_, protected_seqs(h))) {
            EventRecord rec;
            rec.time = now_;
            rec.kind = EventKind::removed;
            rec.msg = expired.seq;
            rec.from = h.id;
            rec.size = expired.size;
            rec.hop_count = expired.hop_count();
            rec.reason = EventReason::ttl;
            emit(std::move(rec));
            h.router->on_message_gone(ctx(h.id), expired.seq);
            ++h.version;
        }
    }
}

// ------------------------------------------------------------ buffer plumbing

bool World::insert_into_buffer(HostId id, Message msg) {
    Host& h = host(id);
    const MessageSeq seq = msg.seq;
    const std::uint64_t size = msg.size;
    const int hops = msg.hop_count();

    auto result = buffer_insert(h.buffer, std::move(msg), h.router->drop_order(ctx(id)),
                                protected_seqs(h));
    for (const auto& victim : result.evicted) {
        EventRecord rec;
        rec.time = now_;
        rec.kind = EventKind::dropped;
        rec.msg = victim.seq;
        rec.from = id;
        rec.size = victim.size;
        rec.hop_count = victim.hop_count();
        rec.reason = EventReason::buffer_full;
        emit(std::move(rec));
        h.router->on_message_gone(ctx(id), victim.seq);
    }
    if (!result.accepted) {
        EventRecord rec;
        rec.time = now_;
        rec.kind = EventKind::dropped;
        rec.msg = seq;
        rec.from = id;
        rec.size = size;
        rec.hop_count = hops;
        rec.reason = result.too_big ? EventReason::too_big : EventReason::buffer_full;
        emit(std::move(rec));
    }
    ++h.version;
    return result.accepted;
}

void World::remove_buffered(HostId id, MessageSeq seq, EventReason reason) {
    Host& h = host(id);
    if (h.in_flight.count(seq)) return; // in-flight copies stay pinned
    Message removed;
    if (!h.buffer.remove(seq, &removed)) return;

    EventRecord rec;
    rec.time = now_;
    rec.kind = EventKind::removed;
    rec.msg = seq;
    rec.from = id;
    rec.size = removed.size;
    rec.hop_count = removed.hop_count();
    rec.reason = reason;
    emit(std::move(rec));
    h.router->on_message_gone(ctx(id), seq);
    ++h.version;
}

} // namespace dtnlab

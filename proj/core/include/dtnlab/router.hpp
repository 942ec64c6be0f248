#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string_view>
#include <vector>

#include "dtnlab/event_log.hpp"
#include "dtnlab/message.hpp"

namespace dtnlab {

/// Per-host likelihood vector over encountered peers: f[p] estimates the
/// probability of meeting p next. Empty until the first encounter; after
/// every update the values sum to 1.
struct DeliveryLikelihoodTable {
    HostId owner = -1;
    std::map<HostId, double> f;

    /// Encounter update: f[met_peer] += 1, then renormalize to sum 1.
    void meet(HostId met_peer);

    double sum() const;
};

/// Everything a host knows about other hosts' likelihood tables, keyed by
/// owner. The self entry is kept current by the owning router; foreign
/// entries are last-writer-wins by receipt time.
using LikelihoodSnapshot = std::map<HostId, DeliveryLikelihoodTable>;

/// Minimum over relay paths src -> dst of the summed (1 - f) edge weights,
/// computed by Dijkstra over the hosts appearing in the snapshot (owners and
/// table keys). A missing f entry counts as edge weight 1; a destination
/// absent from the snapshot entirely costs +infinity.
double maxprop_path_cost(const LikelihoodSnapshot& snapshot, HostId src, HostId dst);

/// What one host shares with a peer when a contact comes up.
struct PeerMetadata {
    HostId peer = -1;
    std::set<MessageSeq> held;  // message ids in the peer's buffer
    std::set<MessageSeq> acked; // ids the peer knows were delivered
    LikelihoodSnapshot tables;  // empty unless the peer runs a MaxProp family router
};

/// Sender-side view of one live contact direction, maintained by the engine:
/// `known` accumulates what the peer held or acked at contact setup plus
/// everything exchanged since.
struct ContactView {
    HostId peer = -1;
    const std::set<MessageSeq>* known = nullptr;

    bool knows(MessageSeq seq) const { return known && known->count(seq) > 0; }
};

/// Engine services exposed to router callbacks. One instance per host,
/// implemented by the simulation world.
class RouterContext {
public:
    virtual ~RouterContext() = default;
    virtual HostId self() const = 0;
    virtual double now() const = 0;
    virtual const Buffer& buffer() const = 0;
    /// Removes a buffered message and logs a `removed` event.
    virtual void remove_message(MessageSeq seq, EventReason reason) = 0;
    /// Completed contacts between two hosts so far (forwarding-gate input).
    virtual int completed_contacts(HostId a, HostId b) const = 0;
    virtual const Buffer& peer_buffer(HostId peer) const = 0;
};

/// The store-carry-forward routing contract. State is per host and single
/// threaded within a run; routers see peers only through exchanged metadata
/// and the contact views the engine maintains.
class Router {
public:
    virtual ~Router() = default;
    virtual std::string_view name() const = 0;

    /// Ordered message ids to offer to the peer. Never includes ids the
    /// peer already holds or has acknowledged (per `view.known`); messages
    /// addressed to the peer come first.
    virtual std::vector<MessageSeq> offer_list(RouterContext& ctx, const ContactView& view) = 0;

    /// Eviction order for buffer overflow, first entry evicted first.
    virtual std::vector<MessageSeq> drop_order(RouterContext& ctx) = 0;

    /// Called before metadata export when a contact comes up (both sides).
    virtual void on_meet(RouterContext& ctx, HostId peer) { (void)ctx, (void)peer; }
    /// Receives the peer's metadata; runs before any offers.
    virtual void exchange_metadata(RouterContext& ctx, const PeerMetadata& meta) {
        (void)ctx, (void)meta;
    }
    virtual void on_contact_up(RouterContext& ctx, HostId peer) { (void)ctx, (void)peer; }
    virtual void on_contact_down(RouterContext& ctx, HostId peer) { (void)ctx, (void)peer; }

    /// Sender-side veto evaluated when a transfer completes; returning
    /// false aborts the relay (used by quota routers).
    virtual bool approve_completion(RouterContext& ctx, MessageSeq seq, HostId to) {
        (void)ctx, (void)seq, (void)to;
        return true;
    }
    /// Sender-side bookkeeping after a successful relay. The returned note
    /// is handed to the receiver's on_received (copy quotas ride here).
    virtual std::uint64_t on_relayed(RouterContext& ctx, MessageSeq seq, HostId to) {
        (void)ctx, (void)seq, (void)to;
        return 0;
    }
    /// Receiver-side hook after the relayed copy entered the buffer.
    virtual void on_received(RouterContext& ctx, const Message& msg, HostId from,
                             std::uint64_t note) {
        (void)ctx, (void)msg, (void)from, (void)note;
    }
    virtual void on_message_created(RouterContext& ctx, const Message& msg) {
        (void)ctx, (void)msg;
    }
    /// Called whenever a buffered message leaves the buffer for any reason.
    virtual void on_message_gone(RouterContext& ctx, MessageSeq seq) { (void)ctx, (void)seq; }

    virtual void on_delivered_as_destination(RouterContext& ctx, const Message& msg) {
        (void)ctx;
        acked_.insert(msg.seq);
    }

    /// Metadata shared with a peer at contact setup.
    virtual PeerMetadata export_metadata(RouterContext& ctx) const;

    const std::set<MessageSeq>& acked() const { return acked_; }
    bool has_acked(MessageSeq seq) const { return acked_.count(seq) > 0; }

protected:
    std::set<MessageSeq> acked_; // delivered ids known to this host
};

} // namespace dtnlab

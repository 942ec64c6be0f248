#pragma once

#include <functional>
#include <map>

#include "dtnlab/gbdt.hpp"
#include "dtnlab/router.hpp"

namespace dtnlab {

struct MaxPropQueueOrder {
    std::vector<MessageSeq> transmit;
    std::vector<MessageSeq> drop; // reverse of transmit
};

/// MaxProp queue ordering: messages with hop_count below the threshold go
/// first, sorted by ascending hop count (ties: creation time, then id); the
/// rest follow sorted by ascending delivery path cost (ties: id). The drop
/// order is the reverse.
MaxPropQueueOrder maxprop_order_queue(const std::vector<Message>& entries, int hop_threshold,
                                      const std::function<double(HostId dst)>& path_cost);

/// MaxProp: likelihood tables updated on every encounter and flooded to
/// peers, path costs from Dijkstra over (1 - f) edge weights, hop-count
/// prioritized queueing, and acknowledgment-driven buffer cleaning.
class MaxPropRouter : public Router {
public:
    explicit MaxPropRouter(int hop_threshold) : hop_threshold_(hop_threshold) {}

    std::string_view name() const override { return "maxprop"; }

    std::vector<MessageSeq> offer_list(RouterContext& ctx, const ContactView& view) override;
    std::vector<MessageSeq> drop_order(RouterContext& ctx) override;

    void on_meet(RouterContext& ctx, HostId peer) override;
    void exchange_metadata(RouterContext& ctx, const PeerMetadata& meta) override;
    PeerMetadata export_metadata(RouterContext& ctx) const override;

    const LikelihoodSnapshot& snapshot() const { return snapshot_; }
    const DeliveryLikelihoodTable* own_table(HostId self) const {
        auto it = snapshot_.find(self);
        return it == snapshot_.end() ? nullptr : &it->second;
    }

protected:
    /// ML-MaxProp hook; evaluated only for messages not addressed to the
    /// peer. The base protocol forwards unconditionally.
    virtual bool offer_allowed(RouterContext& ctx, const Message& msg, HostId peer) {
        (void)ctx, (void)msg, (void)peer;
        return true;
    }

    double path_cost(HostId self, HostId dst) const;
    MaxPropQueueOrder queue_order(RouterContext& ctx) const;

    int hop_threshold_;
    LikelihoodSnapshot snapshot_; // includes the self entry once met someone

private:
    std::uint64_t snapshot_version_ = 0;
    mutable std::uint64_t cost_cache_version_ = static_cast<std::uint64_t>(-1);
    mutable std::map<HostId, double> cost_cache_;
};

/// Forwarding-gate decision: offer msg to peer iff the peer is the
/// destination (gate bypassed), no model is loaded (MaxProp fallback), or
/// the predicted relay probability reaches the threshold.
bool mlmaxprop_gate(const GbdtModel* model, const Message& msg, HostId peer,
                    const Buffer& peer_buffer, int peer_dst_contacts, double now,
                    double threshold);

/// MaxProp queueing and acknowledgments with a learned forwarding gate in
/// front of every non-destination offer. Without a model it behaves exactly
/// like MaxPropRouter.
class MlMaxPropRouter : public MaxPropRouter {
public:
    MlMaxPropRouter(int hop_threshold, const GbdtModel* model, double threshold)
        : MaxPropRouter(hop_threshold), model_(model), threshold_(threshold) {}

    std::string_view name() const override { return "mlmaxprop"; }

    void on_contact_down(RouterContext& ctx, HostId peer) override;

protected:
    bool offer_allowed(RouterContext& ctx, const Message& msg, HostId peer) override;

private:
    const GbdtModel* model_; // shared, read-only; may be null
    double threshold_;
    // gate verdicts are sticky per contact: a rejected message is not
    // re-offered to the same peer until the next contact
    std::map<HostId, std::set<MessageSeq>> rejected_;
};

} // namespace dtnlab

#include "dtnlab/routing_maxprop.hpp"

#include <algorithm>

#include "dtnlab/features.hpp"

namespace dtnlab {

MaxPropQueueOrder maxprop_order_queue(const std::vector<Message>& entries, int hop_threshold,
                                      const std::function<double(HostId dst)>& path_cost) {
    std::vector<const Message*> low_hop;
    std::vector<const Message*> by_cost;
    for (const auto& m : entries) {
        (m.hop_count() < hop_threshold ? low_hop : by_cost).push_back(&m);
    }
    std::sort(low_hop.begin(), low_hop.end(), [](const Message* a, const Message* b) {
        if (a->hop_count() != b->hop_count()) return a->hop_count() < b->hop_count();
        if (a->created_at != b->created_at) return a->created_at < b->created_at;
        return a->seq < b->seq;
    });
    std::vector<std::pair<double, const Message*>> costed;
    costed.reserve(by_cost.size());
    for (const Message* m : by_cost) costed.emplace_back(path_cost(m->dst), m);
    std::sort(costed.begin(), costed.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second->seq < b.second->seq;
    });

    MaxPropQueueOrder order;
    order.transmit.reserve(entries.size());
    for (const Message* m : low_hop) order.transmit.push_back(m->seq);
    for (const auto& [cost, m] : costed) order.transmit.push_back(m->seq);
    order.drop.assign(order.transmit.rbegin(), order.transmit.rend());
    return order;
}

double MaxPropRouter::path_cost(HostId self, HostId dst) const {
    if (cost_cache_version_ != snapshot_version_) {
        cost_cache_.clear();
        cost_cache_version_ = snapshot_version_;
    }
    auto it = cost_cache_.find(dst);
    if (it != cost_cache_.end()) return it->second;
    const double cost = maxprop_path_cost(snapshot_, self, dst);
    cost_cache_.emplace(dst, cost);
    return cost;
}

MaxPropQueueOrder MaxPropRouter::queue_order(RouterContext& ctx) const {
    const HostId self = ctx.self();
    return maxprop_order_queue(ctx.buffer().entries(), hop_threshold_,
                               [&](HostId dst) { return path_cost(self, dst); });
}

std::vector<MessageSeq> MaxPropRouter::offer_list(RouterContext& ctx, const ContactView& view) {
    const auto order = queue_order(ctx);
    const Buffer& buf = ctx.buffer();

    std::vector<MessageSeq> offer;
    offer.reserve(order.transmit.size());
    for (MessageSeq seq : order.transmit) {
        const Message* m = buf.find(seq);
        if (m->dst == view.peer && !view.knows(seq)) offer.push_back(seq);
    }
    for (MessageSeq seq : order.transmit) {
        const Message* m = buf.find(seq);
        if (m->dst == view.peer || view.knows(seq)) continue;
        if (offer_allowed(ctx, *m, view.peer)) offer.push_back(seq);
    }
    return offer;
}

std::vector<MessageSeq> MaxPropRouter::drop_order(RouterContext& ctx) {
    return queue_order(ctx).drop;
}

void MaxPropRouter::on_meet(RouterContext& ctx, HostId peer) {
    auto& own = snapshot_[ctx.self()];
    own.owner = ctx.self();
    own.meet(peer);
    ++snapshot_version_;
}

PeerMetadata MaxPropRouter::export_metadata(RouterContext& ctx) const {
    PeerMetadata meta = Router::export_metadata(ctx);
    meta.tables = snapshot_; // own table plus every table relayed to us
    return meta;
}

void MaxPropRouter::exchange_metadata(RouterContext& ctx, const PeerMetadata& meta) {
    // last-writer-wins by receipt time; only the self entry is protected
    for (const auto& [owner, table] : meta.tables) {
        if (owner != ctx.self()) snapshot_[owner] = table;
    }
    ++snapshot_version_;

    acked_.insert(meta.acked.begin(), meta.acked.end());

    // acknowledgment-driven cleaning: delivered messages leave the buffer
    std::vector<MessageSeq> victims;
    for (const auto& m : ctx.buffer().entries()) {
        if (acked_.count(m.seq)) victims.push_back(m.seq);
    }
    for (MessageSeq seq : victims) ctx.remove_message(seq, EventReason::ack);
}

bool mlmaxprop_gate(const GbdtModel* model, const Message& msg, HostId peer,
                    const Buffer& peer_buffer, int peer_dst_contacts, double now,
                    double threshold) {
    if (peer == msg.dst) return true; // never block a guaranteed delivery
    if (!model) return true;          // MaxProp fallback
    const RelayFeatureVector x = extract_features(msg, peer_buffer, peer_dst_contacts, now);
    return model->predict_prob(x) >= threshold;
}

bool MlMaxPropRouter::offer_allowed(RouterContext& ctx, const Message& msg, HostId peer) {
    if (!model_) return true;
    auto& rejected = rejected_[peer];
    if (rejected.count(msg.seq)) return false;
    const bool ok = mlmaxprop_gate(model_, msg, peer, ctx.peer_buffer(peer),
                                   ctx.completed_contacts(peer, msg.dst), ctx.now(), threshold_);
    if (!ok) rejected.insert(msg.seq);
    return ok;
}

void MlMaxPropRouter::on_contact_down(RouterContext& ctx, HostId peer) {
    rejected_.erase(peer);
    MaxPropRouter::on_contact_down(ctx, peer);
}

} // namespace dtnlab

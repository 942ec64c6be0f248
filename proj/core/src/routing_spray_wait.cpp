#include "dtnlab/routing_spray_wait.hpp"

namespace dtnlab {

std::vector<MessageSeq> SprayAndWaitRouter::offer_list(RouterContext& ctx,
                                                       const ContactView& view) {
    const auto& entries = ctx.buffer().entries();
    std::vector<MessageSeq> offer;
    for (const auto& m : entries) {
        if (m.dst == view.peer && !view.knows(m.seq)) offer.push_back(m.seq);
    }
    for (const auto& m : entries) {
        if (m.dst == view.peer || view.knows(m.seq)) continue;
        if (copies_remaining(m.seq) > 1) offer.push_back(m.seq); // spray phase only
    }
    return offer;
}

std::vector<MessageSeq> SprayAndWaitRouter::drop_order(RouterContext& ctx) {
    std::vector<MessageSeq> order;
    order.reserve(ctx.buffer().count());
    for (const auto& m : ctx.buffer().entries()) order.push_back(m.seq);
    return order;
}

void SprayAndWaitRouter::on_message_created(RouterContext& ctx, const Message& msg) {
    (void)ctx;
    copies_[msg.seq] = initial_copies_;
}

void SprayAndWaitRouter::on_received(RouterContext& ctx, const Message& msg, HostId from,
                                     std::uint64_t note) {
    (void)ctx, (void)from;
    copies_[msg.seq] = note > 0 ? static_cast<std::uint32_t>(note) : 1;
}

bool SprayAndWaitRouter::approve_completion(RouterContext& ctx, MessageSeq seq, HostId to) {
    const Message* m = ctx.buffer().find(seq);
    if (!m) return false;
    if (m->dst == to) return true;
    // the quota may have been halved by a concurrent relay since the offer
    return copies_remaining(seq) > 1;
}

std::uint64_t SprayAndWaitRouter::on_relayed(RouterContext& ctx, MessageSeq seq, HostId to) {
    const Message* m = ctx.buffer().find(seq);
    if (m && m->dst == to) return 0; // delivery consumes no quota
    auto it = copies_.find(seq);
    if (it == copies_.end()) return 1;
    const std::uint32_t l = it->second;
    const std::uint32_t give = (l + 1) / 2; // receiver gets ceil(L/2)
    it->second = l / 2;
    return give;
}

void SprayAndWaitRouter::on_message_gone(RouterContext& ctx, MessageSeq seq) {
    (void)ctx;
    copies_.erase(seq);
}

} // namespace dtnlab

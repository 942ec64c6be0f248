#include "dtnlab/routing_epidemic.hpp"

namespace dtnlab {

std::vector<MessageSeq> epidemic_offer(const std::vector<Message>& buffered,
                                       const std::set<MessageSeq>& peer_summary, HostId peer) {
    std::vector<MessageSeq> offer;
    offer.reserve(buffered.size());
    for (const auto& m : buffered) {
        if (m.dst == peer && !peer_summary.count(m.seq)) offer.push_back(m.seq);
    }
    for (const auto& m : buffered) {
        if (m.dst != peer && !peer_summary.count(m.seq)) offer.push_back(m.seq);
    }
    return offer;
}

std::vector<MessageSeq> EpidemicRouter::offer_list(RouterContext& ctx, const ContactView& view) {
    const auto& entries = ctx.buffer().entries();
    std::vector<MessageSeq> offer;
    offer.reserve(entries.size());
    for (const auto& m : entries) {
        if (m.dst == view.peer && !view.knows(m.seq)) offer.push_back(m.seq);
    }
    for (const auto& m : entries) {
        if (m.dst != view.peer && !view.knows(m.seq)) offer.push_back(m.seq);
    }
    return offer;
}

std::vector<MessageSeq> EpidemicRouter::drop_order(RouterContext& ctx) {
    std::vector<MessageSeq> order;
    order.reserve(ctx.buffer().count());
    for (const auto& m : ctx.buffer().entries()) order.push_back(m.seq); // oldest first
    return order;
}

} // namespace dtnlab

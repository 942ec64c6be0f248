#pragma once

#include "dtnlab/router.hpp"

namespace dtnlab {

/// Flooding: offer everything the peer does not have, destination-addressed
/// messages first, the rest in FIFO insertion order. Eviction is FIFO.
class EpidemicRouter : public Router {
public:
    std::string_view name() const override { return "epidemic"; }

    std::vector<MessageSeq> offer_list(RouterContext& ctx, const ContactView& view) override;
    std::vector<MessageSeq> drop_order(RouterContext& ctx) override;
};

/// The summary-vector difference behind EpidemicRouter::offer_list, exposed
/// for direct testing: all of `buffered` not in `peer_summary`, messages
/// addressed to `peer` first, remainder in the input (FIFO) order.
std::vector<MessageSeq> epidemic_offer(const std::vector<Message>& buffered,
                                       const std::set<MessageSeq>& peer_summary, HostId peer);

} // namespace dtnlab

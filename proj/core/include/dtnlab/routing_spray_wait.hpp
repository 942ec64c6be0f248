#pragma once

#include <cstdint>
#include <map>

#include "dtnlab/router.hpp"

namespace dtnlab {

/// Binary Spray-and-Wait: every message carries a copy quota L. A relay to
/// a non-destination hands the receiver ceil(L/2) copies and keeps
/// floor(L/2); once a host is down to one copy it waits and forwards only
/// to the destination itself.
class SprayAndWaitRouter : public Router {
public:
    explicit SprayAndWaitRouter(std::uint32_t initial_copies) : initial_copies_(initial_copies) {}

    std::string_view name() const override { return "snw"; }

    std::vector<MessageSeq> offer_list(RouterContext& ctx, const ContactView& view) override;
    std::vector<MessageSeq> drop_order(RouterContext& ctx) override;

    void on_message_created(RouterContext& ctx, const Message& msg) override;
    void on_received(RouterContext& ctx, const Message& msg, HostId from,
                     std::uint64_t note) override;
    std::uint64_t on_relayed(RouterContext& ctx, MessageSeq seq, HostId to) override;
    bool approve_completion(RouterContext& ctx, MessageSeq seq, HostId to) override;
    void on_message_gone(RouterContext& ctx, MessageSeq seq) override;

    std::uint32_t copies_remaining(MessageSeq seq) const {
        auto it = copies_.find(seq);
        return it == copies_.end() ? 0 : it->second;
    }

private:
    std::uint32_t initial_copies_;
    std::map<MessageSeq, std::uint32_t> copies_;
};

} // namespace dtnlab

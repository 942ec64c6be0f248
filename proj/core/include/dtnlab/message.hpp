#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dtnlab {

using HostId = std::int32_t;
using MessageSeq = std::uint64_t;

/// Renders the external id of message number `seq` ("M1", "M2", ...).
inline std::string message_id(MessageSeq seq) { return "M" + std::to_string(seq); }

/// A store-carry-forward payload. Each host holds its own copy; `path` is
/// the copy lineage starting at the source, so hop_count() is per copy.
struct Message {
    MessageSeq seq = 0;
    HostId src = 0;
    HostId dst = 0;
    std::uint64_t size = 0;    // bytes
    double created_at = 0.0;   // seconds
    double ttl = 0.0;          // seconds of life after creation
    std::vector<HostId> path;  // starts [src], extended by one host per relay

    std::string id() const { return message_id(seq); }
    int hop_count() const { return static_cast<int>(path.size()) - 1; }
    bool expired(double now) const { return now - created_at > ttl; }

    /// The copy the receiver stores after a relay.
    Message relayed_to(HostId receiver) const {
        Message copy = *this;
        copy.path.push_back(receiver);
        return copy;
    }
};

/// Fixed-capacity message store with insertion-order iteration. `used()`
/// always equals the sum of stored entry sizes; overflow handling lives in
/// buffer_insert so the eviction policy stays with the router.
class Buffer {
public:
    explicit Buffer(std::uint64_t capacity = 0) : capacity_(capacity) {}

    std::uint64_t capacity() const { return capacity_; }
    std::uint64_t used() const { return used_; }
    double occupancy() const {
        return capacity_ > 0 ? static_cast<double>(used_) / static_cast<double>(capacity_) : 1.0;
    }
    bool empty() const { return entries_.empty(); }
    std::size_t count() const { return entries_.size(); }

    /// Entries in insertion order.
    const std::vector<Message>& entries() const { return entries_; }

    bool has(MessageSeq seq) const;
    const Message* find(MessageSeq seq) const;
    Message* find(MessageSeq seq);

    /// Unconditional insert; fails (throws) on duplicate id or capacity
    /// violation. Use buffer_insert for policy-driven insertion.
    void push(Message msg);

    /// Removes and returns the message; false if absent.
    bool remove(MessageSeq seq, Message* out = nullptr);

private:
    std::uint64_t capacity_ = 0;
    std::uint64_t used_ = 0;
    std::vector<Message> entries_;
};

/// Outcome of a policy-driven insertion.
struct InsertResult {
    bool accepted = false;
    bool too_big = false;          // message larger than total capacity
    std::vector<Message> evicted;  // dropped to make room, in eviction order
};

/// Inserts `msg`, evicting messages in `drop_order` (first = evicted first)
/// until it fits. Messages listed in `protected_seqs` (e.g. copies with an
/// active outgoing transfer) are skipped by eviction. The incoming message
/// is never evicted to make room for itself; if it cannot fit even after
/// evicting everything evictable, it is rejected and nothing is evicted.
InsertResult buffer_insert(Buffer& buf, Message msg,
                           const std::vector<MessageSeq>& drop_order,
                           const std::vector<MessageSeq>& protected_seqs = {});

/// Removes every message whose age exceeds its TTL (strictly) at `now`,
/// except those listed in `protected_seqs`. Returns removed messages in
/// insertion order.
std::vector<Message> expire_ttl(Buffer& buf, double now,
                                const std::vector<MessageSeq>& protected_seqs = {});

} // namespace dtnlab

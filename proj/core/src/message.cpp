#include "dtnlab/message.hpp"

#include <algorithm>

#include "dtnlab/error.hpp"

namespace dtnlab {

bool Buffer::has(MessageSeq seq) const { return find(seq) != nullptr; }

const Message* Buffer::find(MessageSeq seq) const {
    for (const auto& m : entries_) {
        if (m.seq == seq) return &m;
    }
    return nullptr;
}

Message* Buffer::find(MessageSeq seq) {
    for (auto& m : entries_) {
        if (m.seq == seq) return &m;
    }
    return nullptr;
}

void Buffer::push(Message msg) {
    if (has(msg.seq)) throw Error("buffer: duplicate message id " + msg.id());
    if (used_ + msg.size > capacity_) throw Error("buffer: capacity exceeded inserting " + msg.id());
    used_ += msg.size;
    entries_.push_back(std::move(msg));
}

bool Buffer::remove(MessageSeq seq, Message* out) {
    for (auto it = entries_.begin(); it != entries_.end(); ++it) {
        if (it->seq == seq) {
            used_ -= it->size;
            if (out) *out = std::move(*it);
            entries_.erase(it);
            return true;
        }
    }
    return false;
}

InsertResult buffer_insert(Buffer& buf, Message msg,
                           const std::vector<MessageSeq>& drop_order,
                           const std::vector<MessageSeq>& protected_seqs) {
    if (buf.has(msg.seq)) throw Error("buffer_insert: duplicate message id " + msg.id());

    InsertResult result;
    if (msg.size > buf.capacity()) {
        result.too_big = true;
        return result;
    }

    auto is_protected = [&](MessageSeq seq) {
        return std::find(protected_seqs.begin(), protected_seqs.end(), seq) != protected_seqs.end();
    };

    // check first so a doomed insert does not evict anything
    std::uint64_t reclaimable = 0;
    for (const auto& m : buf.entries()) {
        if (!is_protected(m.seq)) reclaimable += m.size;
    }
    if (buf.used() - reclaimable + msg.size > buf.capacity()) {
        return result; // rejected, reason buffer_full
    }

    for (MessageSeq victim : drop_order) {
        if (buf.used() + msg.size <= buf.capacity()) break;
        if (victim == msg.seq || is_protected(victim)) continue;
        Message dropped;
        if (buf.remove(victim, &dropped)) {
            result.evicted.push_back(std::move(dropped));
        }
    }
    if (buf.used() + msg.size > buf.capacity()) {
        // drop_order did not cover enough; should not happen with a
        // complete ordering, roll forward by rejecting
        for (auto& m : result.evicted) buf.push(std::move(m));
        result.evicted.clear();
        return result;
    }
    buf.push(std::move(msg));
    result.accepted = true;
    return result;
}

std::vector<Message> expire_ttl(Buffer& buf, double now,
                                const std::vector<MessageSeq>& protected_seqs) {
    std::vector<MessageSeq> victims;
    for (const auto& m : buf.entries()) {
        if (m.expired(now) &&
            std::find(protected_seqs.begin(), protected_seqs.end(), m.seq) == protected_seqs.end()) {
            victims.push_back(m.seq);
        }
    }
    std::vector<Message> removed;
    removed.reserve(victims.size());
    for (MessageSeq seq : victims) {
        Message m;
        buf.remove(seq, &m);
        removed.push_back(std::move(m));
    }
    return removed;
}

} // namespace dtnlab

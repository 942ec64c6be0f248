#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dtnlab/features.hpp"
#include "dtnlab/message.hpp"

namespace dtnlab {

enum class EventKind : std::uint8_t {
    created,
    started,
    relayed,
    aborted,
    dropped,
    removed,
    delivered,
    contact_up,
    contact_down,
};

enum class EventReason : std::uint8_t {
    none,
    ttl,         // removed: lifetime exceeded
    ack,         // removed: known delivered
    too_big,     // dropped: larger than buffer capacity
    buffer_full, // dropped: evicted or rejected for space
    link_down,   // aborted: contact ended mid-transfer
    duplicate,   // aborted: receiver already held the message
    quota,       // aborted: sender entered the wait phase mid-transfer
};

std::string_view to_string(EventKind k);
std::string_view to_string(EventReason r);

/// One line of the canonical simulation log.
struct EventRecord {
    double time = 0.0;
    EventKind kind = EventKind::created;
    MessageSeq msg = 0; // 0 for contact events
    HostId from = -1;
    HostId to = -1;
    std::uint64_t size = 0;
    int hop_count = -1; // -1 prints empty
    EventReason reason = EventReason::none;
    std::optional<RelayFeatureVector> features; // relayed events, collect mode
    std::vector<HostId> delivered_path;         // delivered events only
};

/// Append-only event sequence with the CSV serialization used by every
/// downstream consumer (reports, training, tests).
class EventLog {
public:
    void append(EventRecord rec) { records_.push_back(std::move(rec)); }
    const std::vector<EventRecord>& records() const { return records_; }
    std::size_t size() const { return records_.size(); }
    bool empty() const { return records_.empty(); }
    void reserve(std::size_t n) { records_.reserve(n); }

    /// Header: time,event,msg_id,from,to,size,hop_count,reason,
    ///         f_contact_freq,f_buf_occ,f_hop,f_age,f_ttl_rem
    /// Times use 3 decimal places; undefined fields stay empty; delivered
    /// rows carry the copy's hop path in the reason column ("path:a>b>c").
    void write_csv(std::ostream& out) const;
    void write_csv_file(const std::string& path) const;

    static EventLog read_csv(std::istream& in);
    static EventLog read_csv_file(const std::string& path);

private:
    std::vector<EventRecord> records_;
};

} // namespace dtnlab

#pragma once

#include <cstdint>
#include <vector>

#include "dtnlab/message.hpp"
#include "dtnlab/rng.hpp"

namespace dtnlab {

/// Inclusive host-id range.
struct HostRange {
    HostId lo = 0;
    HostId hi = 0;

    std::int64_t count() const { return static_cast<std::int64_t>(hi) - lo + 1; }
    bool contains(HostId h) const { return h >= lo && h <= hi; }
    friend bool operator==(const HostRange&, const HostRange&) = default;
};

struct TrafficConfig {
    double interval_min = 25.0; // seconds between creations
    double interval_max = 35.0;
    std::uint64_t size_min = 500'000; // bytes
    std::uint64_t size_max = 1'000'000;
    HostRange src_hosts;
    HostRange dst_hosts;
    double start = 0.0;
    double stop = 0.0; // no creations scheduled after this time

    friend bool operator==(const TrafficConfig&, const TrafficConfig&) = default;
};

/// Draws the message workload. Creation times advance by a uniform interval
/// per message; source and destination are uniform over their ranges with
/// dst redrawn until it differs from src. Ids are sequential from M1.
class TrafficGenerator {
public:
    TrafficGenerator(TrafficConfig cfg, double ttl, Rng rng);

    /// All messages whose scheduled creation time is <= now (and <= stop),
    /// in creation order. created_at carries the scheduled time.
    std::vector<Message> poll(double now);

    MessageSeq created_count() const { return next_seq_ - 1; }

private:
    Message make_message(double at);

    TrafficConfig cfg_;
    double ttl_;
    Rng rng_;
    double next_time_;
    MessageSeq next_seq_ = 1;
};

} // namespace dtnlab

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "dtnlab/event_log.hpp"

namespace dtnlab {

/// Per-run counters and the four evaluation metrics. Latency, hop count and
/// overhead are undefined (nullopt) when nothing was delivered.
struct MessageStatsReport {
    std::string scenario_id;
    std::uint64_t seed = 0;
    std::string router;

    std::uint64_t created = 0;
    std::uint64_t started = 0;
    std::uint64_t relayed = 0;
    std::uint64_t aborted = 0;
    std::uint64_t dropped = 0;
    std::uint64_t removed = 0;
    std::uint64_t delivered = 0;

    double delivery_prob = 0.0;              // delivered / created
    std::optional<double> overhead_ratio;    // relayed / delivered
    std::optional<double> latency_avg;       // mean delivery_time - creation_time
    std::optional<double> latency_med;
    std::optional<double> hopcount_avg;      // mean hops of delivered copies
};

/// Derives the report from an event log. Throws when the log contains no
/// created messages (empty scenario).
MessageStatsReport compute_report(const EventLog& log);

} // namespace dtnlab

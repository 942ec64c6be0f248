#pragma once

// Event-log replay checks used by unit and acceptance tests. Each check
// rebuilds state from the raw log only and returns an empty string on
// success or a description of the first violation.

#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "dtnlab/event_log.hpp"

namespace log_checks {

using dtnlab::EventKind;
using dtnlab::EventLog;
using dtnlab::HostId;
using dtnlab::MessageSeq;

inline std::string describe(const dtnlab::EventRecord& r) {
    std::ostringstream out;
    out << "t=" << r.time << " " << dtnlab::to_string(r.kind) << " msg=" << r.msg
        << " from=" << r.from << " to=" << r.to;
    return out.str();
}

/// Counters: started >= relayed + aborted, relayed >= delivered (per
/// message and in total), times non-decreasing, no unknown message ids.
inline std::string check_conservation(const EventLog& log) {
    std::map<MessageSeq, std::uint64_t> started, relayed, aborted, delivered;
    std::set<MessageSeq> known;
    double last_time = -1.0;
    for (const auto& r : log.records()) {
        if (r.time + 1e-9 < last_time) return "times decrease at " + describe(r);
        last_time = r.time;
        if (r.kind == EventKind::created) known.insert(r.msg);
        if (r.msg != 0 && !known.count(r.msg)) return "unknown message at " + describe(r);
        switch (r.kind) {
            case EventKind::started: ++started[r.msg]; break;
            case EventKind::relayed: ++relayed[r.msg]; break;
            case EventKind::aborted: ++aborted[r.msg]; break;
            case EventKind::delivered: ++delivered[r.msg]; break;
            default: break;
        }
    }
    for (const auto& [msg, n] : relayed) {
        if (started[msg] < n + aborted[msg]) {
            return "started < relayed + aborted for msg " + std::to_string(msg);
        }
        if (n < delivered[msg]) return "relayed < delivered for msg " + std::to_string(msg);
    }
    for (const auto& [msg, n] : delivered) {
        if (n > 1) return "message delivered twice: " + std::to_string(msg);
    }
    return {};
}

/// A relayed event for (m, a->b) must be preceded by a started event for
/// the same triple with no intervening contact_down of {a,b}; hop counts
/// must grow by exactly one per relay along each copy lineage.
inline std::string check_relay_causality(const EventLog& log) {
    std::map<std::tuple<MessageSeq, HostId, HostId>, int> open_started;
    std::map<std::pair<MessageSeq, HostId>, int> copy_hops; // hop count of the copy held
    for (const auto& r : log.records()) {
        switch (r.kind) {
            case EventKind::created:
                copy_hops[{r.msg, r.from}] = 0;
                break;
            case EventKind::started:
                ++open_started[{r.msg, r.from, r.to}];
                break;
            case EventKind::contact_down:
                // drop every pending start on this link, both directions
                for (auto& [key, n] : open_started) {
                    const auto& [msg, a, b] = key;
                    const bool same_link = (a == r.from && b == r.to) || (a == r.to && b == r.from);
                    if (same_link) n = 0;
                }
                break;
            case EventKind::relayed: {
                auto it = open_started.find({r.msg, r.from, r.to});
                if (it == open_started.end() || it->second <= 0) {
                    return "relayed without live started: " + describe(r);
                }
                --it->second;
                const auto sender = copy_hops.find({r.msg, r.from});
                if (sender == copy_hops.end()) {
                    return "relayed from host without a copy: " + describe(r);
                }
                if (r.hop_count != sender->second + 1) {
                    return "hop count not sender+1: " + describe(r);
                }
                copy_hops[{r.msg, r.to}] = r.hop_count;
                break;
            }
            case EventKind::aborted: {
                auto it = open_started.find({r.msg, r.from, r.to});
                if (it != open_started.end() && it->second > 0) --it->second;
                break;
            }
            case EventKind::dropped:
            case EventKind::removed:
                copy_hops.erase({r.msg, r.from});
                break;
            default:
                break;
        }
    }
    return {};
}

/// Replays buffer occupancy by holder: no host receives a copy it already
/// holds (destination receipts excluded, they are consumed not buffered).
inline std::string check_no_duplicate_holding(const EventLog& log) {
    std::map<MessageSeq, HostId> dst;
    std::map<MessageSeq, std::set<HostId>> holders;
    for (const auto& r : log.records()) {
        switch (r.kind) {
            case EventKind::created:
                dst[r.msg] = r.to;
                holders[r.msg].insert(r.from);
                break;
            case EventKind::relayed:
                if (r.to == dst[r.msg]) break;
                if (!holders[r.msg].insert(r.to).second) {
                    return "host received a copy it already holds: " + describe(r);
                }
                break;
            case EventKind::dropped:
            case EventKind::removed:
                holders[r.msg].erase(r.from);
                break;
            default:
                break;
        }
    }
    return {};
}

/// Spray-and-Wait quota: replayed copy tokens never exceed the initial L,
/// and a host at one copy only ever relays to the destination.
inline std::string check_spray_quota(const EventLog& log, std::uint32_t initial_copies) {
    std::map<MessageSeq, HostId> dst;
    std::map<std::pair<MessageSeq, HostId>, std::uint32_t> tokens;
    std::map<MessageSeq, std::set<HostId>> holders;
    for (const auto& r : log.records()) {
        switch (r.kind) {
            case EventKind::created:
                dst[r.msg] = r.to;
                tokens[{r.msg, r.from}] = initial_copies;
                holders[r.msg].insert(r.from);
                break;
            case EventKind::relayed: {
                if (r.to == dst[r.msg]) break; // delivery consumes no quota
                auto it = tokens.find({r.msg, r.from});
                if (it == tokens.end()) return "relay from host without tokens: " + describe(r);
                if (it->second <= 1) {
                    return "wait-phase host relayed to a non-destination: " + describe(r);
                }
                const std::uint32_t give = (it->second + 1) / 2;
                it->second -= give;
                tokens[{r.msg, r.to}] = give;
                holders[r.msg].insert(r.to);
                if (holders[r.msg].size() > initial_copies) {
                    return "live copies exceed L: " + describe(r);
                }
                break;
            }
            case EventKind::dropped:
            case EventKind::removed:
                tokens.erase({r.msg, r.from});
                holders[r.msg].erase(r.from);
                break;
            default:
                break;
        }
    }
    return {};
}

/// After a host removed a message with reason ack, that message never
/// reappears at the host (no later relay from it, no later drop/removal).
inline std::string check_ack_finality(const EventLog& log) {
    std::set<std::pair<MessageSeq, HostId>> acked_at;
    for (const auto& r : log.records()) {
        switch (r.kind) {
            case EventKind::removed:
                if (r.reason == dtnlab::EventReason::ack) acked_at.insert({r.msg, r.from});
                break;
            case EventKind::relayed:
                if (acked_at.count({r.msg, r.from})) {
                    return "ack-removed message relayed again from the same host: " + describe(r);
                }
                break;
            case EventKind::dropped:
                if (acked_at.count({r.msg, r.from})) {
                    return "ack-removed message buffered again at the same host: " + describe(r);
                }
                break;
            default:
                break;
        }
    }
    return {};
}

/// Highest simultaneous holder count over the log for any message.
inline std::size_t max_live_copies(const EventLog& log) {
    std::map<MessageSeq, HostId> dst;
    std::map<MessageSeq, std::set<HostId>> holders;
    std::size_t peak = 0;
    for (const auto& r : log.records()) {
        switch (r.kind) {
            case EventKind::created:
                dst[r.msg] = r.to;
                holders[r.msg].insert(r.from);
                break;
            case EventKind::relayed:
                if (r.to != dst[r.msg]) holders[r.msg].insert(r.to);
                peak = std::max(peak, holders[r.msg].size());
                break;
            case EventKind::dropped:
            case EventKind::removed:
                holders[r.msg].erase(r.from);
                break;
            default:
                break;
        }
    }
    for (const auto& [msg, set] : holders) peak = std::max(peak, set.size());
    return peak;
}

} // namespace log_checks

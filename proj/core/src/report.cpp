#include "dtnlab/report.hpp"

#include <algorithm>
#include <unordered_map>
#include <vector>

#include "dtnlab/error.hpp"

namespace dtnlab {

MessageStatsReport compute_report(const EventLog& log) {
    MessageStatsReport rep;
    std::unordered_map<MessageSeq, double> creation_time;
    std::vector<double> latencies;
    double hops_total = 0.0;

    for (const auto& r : log.records()) {
        switch (r.kind) {
            case EventKind::created:
                ++rep.created;
                creation_time.emplace(r.msg, r.time);
                break;
            case EventKind::started: ++rep.started; break;
            case EventKind::relayed: ++rep.relayed; break;
            case EventKind::aborted: ++rep.aborted; break;
            case EventKind::dropped: ++rep.dropped; break;
            case EventKind::removed: ++rep.removed; break;
            case EventKind::delivered: {
                ++rep.delivered;
                auto it = creation_time.find(r.msg);
                if (it == creation_time.end()) {
                    throw Error("compute_report: delivered event for unknown message " + message_id(r.msg));
                }
                latencies.push_back(r.time - it->second);
                hops_total += r.hop_count;
                break;
            }
            case EventKind::contact_up:
            case EventKind::contact_down:
                break;
        }
    }

    if (rep.created == 0) throw Error("compute_report: log contains no created messages");

    rep.delivery_prob = static_cast<double>(rep.delivered) / static_cast<double>(rep.created);
    if (rep.delivered > 0) {
        rep.overhead_ratio = static_cast<double>(rep.relayed) / static_cast<double>(rep.delivered);
        double sum = 0.0;
        for (double l : latencies) sum += l;
        rep.latency_avg = sum / static_cast<double>(rep.delivered);
        std::sort(latencies.begin(), latencies.end());
        const std::size_t n = latencies.size();
        rep.latency_med = (n % 2 == 1) ? latencies[n / 2]
                                       : 0.5 * (latencies[n / 2 - 1] + latencies[n / 2]);
        rep.hopcount_avg = hops_total / static_cast<double>(rep.delivered);
    }
    return rep;
}

} // namespace dtnlab

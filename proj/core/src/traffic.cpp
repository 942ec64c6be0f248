#include "dtnlab/traffic.hpp"

#include "dtnlab/error.hpp"

namespace dtnlab {

TrafficGenerator::TrafficGenerator(TrafficConfig cfg, double ttl, Rng rng)
    : cfg_(cfg), ttl_(ttl), rng_(rng) {
    if (cfg_.src_hosts.count() == 1 && cfg_.dst_hosts.count() == 1 &&
        cfg_.src_hosts.lo == cfg_.dst_hosts.lo) {
        throw ConfigError("traffic: src and dst ranges contain only the same host, no valid pair");
    }
    next_time_ = cfg_.start + rng_.uniform(cfg_.interval_min, cfg_.interval_max);
}

Message TrafficGenerator::make_message(double at) {
    Message m;
    m.seq = next_seq_++;
    m.src = static_cast<HostId>(rng_.uniform_int(cfg_.src_hosts.lo, cfg_.src_hosts.hi));
    do {
        m.dst = static_cast<HostId>(rng_.uniform_int(cfg_.dst_hosts.lo, cfg_.dst_hosts.hi));
    } while (m.dst == m.src);
    m.size = static_cast<std::uint64_t>(
        rng_.uniform_int(static_cast<std::int64_t>(cfg_.size_min), static_cast<std::int64_t>(cfg_.size_max)));
    m.created_at = at;
    m.ttl = ttl_;
    m.path = {m.src};
    return m;
}

std::vector<Message> TrafficGenerator::poll(double now) {
    std::vector<Message> out;
    while (next_time_ <= now && next_time_ <= cfg_.stop) {
        out.push_back(make_message(next_time_));
        next_time_ += rng_.uniform(cfg_.interval_min, cfg_.interval_max);
    }
    return out;
}

} // namespace dtnlab

#include "dtnlab/features.hpp"

#include <algorithm>

namespace dtnlab {

RelayFeatureVector extract_features(const Message& msg, const Buffer& candidate_buffer,
                                    int completed_contacts_with_dst, double now) {
    RelayFeatureVector f;
    f.contact_frequency = 3600.0 * completed_contacts_with_dst / std::max(now, 1.0);
    f.buffer_occupancy = candidate_buffer.occupancy();
    f.hop_count = msg.hop_count();
    f.message_age = now - msg.created_at;
    f.ttl_remaining = std::max(0.0, msg.ttl - f.message_age);
    return f;
}

} // namespace dtnlab

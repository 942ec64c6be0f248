#pragma once

#include <array>
#include <string_view>

#include "dtnlab/message.hpp"

namespace dtnlab {

/// The five contextual inputs of the forwarding classifier, describing one
/// candidate relay decision (message m, carried by a, offered to b).
struct RelayFeatureVector {
    double contact_frequency = 0.0; // completed contacts/hour between candidate and m.dst
    double buffer_occupancy = 0.0;  // candidate's buffer fill fraction in [0,1]
    double hop_count = 0.0;         // m's hops so far on this copy
    double message_age = 0.0;       // seconds since creation
    double ttl_remaining = 0.0;     // seconds of life left, clamped at 0

    static constexpr std::size_t kCount = 5;
    static constexpr std::array<std::string_view, kCount> kNames = {
        "contact_frequency", "buffer_occupancy", "hop_count", "message_age", "ttl_remaining"};

    double operator[](std::size_t i) const {
        switch (i) {
            case 0: return contact_frequency;
            case 1: return buffer_occupancy;
            case 2: return hop_count;
            case 3: return message_age;
            default: return ttl_remaining;
        }
    }

    std::array<double, kCount> values() const {
        return {contact_frequency, buffer_occupancy, hop_count, message_age, ttl_remaining};
    }

    friend bool operator==(const RelayFeatureVector&, const RelayFeatureVector&) = default;
};

/// Computes the feature vector for offering `msg` to `candidate` at `now`.
/// `completed_contacts_with_dst` counts contacts between the candidate and
/// the message destination that came up and went down in [0, now].
RelayFeatureVector extract_features(const Message& msg, const Buffer& candidate_buffer,
                                    int completed_contacts_with_dst, double now);

} // namespace dtnlab

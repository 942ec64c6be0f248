#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dtnlab/mobility.hpp"
#include "dtnlab/routing.hpp"
#include "dtnlab/traffic.hpp"

namespace dtnlab {

/// One host group: count hosts sharing radio, buffer, movement and router
/// parameters. Host ids are assigned sequentially across groups in order.
struct GroupConfig {
    std::string name = "Group1";
    int count = 0;
    SpeedRange speed{0.5, 1.5};
    PauseRange pause{0.0, 120.0};
    double range = 100.0;          // meters
    double bitrate = 250'000.0;    // bytes/s
    std::uint64_t buffer_size = 5'000'000;
    RouterKind router = RouterKind::epidemic;
    std::uint32_t snw_copies = 8;
    int hop_threshold = 3;
    double ml_threshold = 0.5;
    std::string model_path; // empty: mlmaxprop falls back to plain MaxProp

    friend bool operator==(const GroupConfig&, const GroupConfig&) = default;
};

struct ScenarioConfig {
    double duration = 0.0; // seconds, required
    double step = 1.0;
    std::string map_path; // required
    double ttl = 3600.0;
    std::uint64_t seed = 0;
    bool collect = false;
    std::vector<GroupConfig> groups;
    TrafficConfig traffic;

    int total_hosts() const;
    /// Comma-free label of the routers in use ("maxprop" or "maxprop+snw").
    std::string router_label() const;

    /// Serializes to the flat `Section.key = value` text format;
    /// parse_scenario(to_text()) yields an equal config.
    std::string to_text() const;

    friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Parses and validates a scenario. Unknown keys, missing required keys
/// (duration, map, at least one group, traffic) and invariant violations
/// all raise ConfigError naming the offending key. File existence is
/// checked separately by validate_files (commands call it before running).
ScenarioConfig parse_scenario(const std::string& text);
ScenarioConfig load_scenario(const std::string& path);

/// Checks that the map and every referenced model file exist.
void validate_files(const ScenarioConfig& cfg);

/// Applies one `Section.key = value` override (sweep axes). Bare aliases
/// nodeCount, bufferSize, range, bitrate, ttl and duration are accepted;
/// the group aliases apply to every group (nodeCount requires a single
/// group). Re-validates the result.
void apply_override(ScenarioConfig& cfg, const std::string& key, const std::string& value);

} // namespace dtnlab

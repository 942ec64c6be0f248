#include "dtnlab/scenario.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dtnlab/error.hpp"

namespace dtnlab {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return std::string(s.substr(b, e - b));
}

double parse_double(const std::string& key, const std::string& value) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || p != value.data() + value.size()) {
        throw ConfigError(key + ": expected a number, got '" + value + "'");
    }
    return v;
}

std::int64_t parse_int(const std::string& key, const std::string& value) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || p != value.data() + value.size()) {
        throw ConfigError(key + ": expected an integer, got '" + value + "'");
    }
    return v;
}

std::int64_t parse_positive_int(const std::string& key, const std::string& value) {
    const std::int64_t v = parse_int(key, value);
    if (v <= 0) throw ConfigError(key + ": must be positive, got " + value);
    return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw ConfigError(key + ": expected true or false, got '" + value + "'");
}

HostRange parse_host_range(const std::string& key, const std::string& value) {
    HostRange r;
    const auto dash = value.find('-');
    if (dash == std::string::npos) {
        r.lo = r.hi = static_cast<HostId>(parse_int(key, value));
    } else {
        r.lo = static_cast<HostId>(parse_int(key, value.substr(0, dash)));
        r.hi = static_cast<HostId>(parse_int(key, value.substr(dash + 1)));
    }
    if (r.lo < 0 || r.hi < r.lo) throw ConfigError(key + ": bad host range '" + value + "'");
    return r;
}

struct ParseState {
    ScenarioConfig cfg;
    bool has_duration = false;
    bool has_map = false;
    bool has_stop = false;
    bool has_traffic_interval = false;
    bool has_traffic_size = false;
    bool has_traffic_src = false;
    bool has_traffic_dst = false;
    std::vector<std::pair<bool, bool>> group_required; // (count set, router set)
};

GroupConfig& group_for(ParseState& st, const std::string& section) {
    for (std::size_t i = 0; i < st.cfg.groups.size(); ++i) {
        if (st.cfg.groups[i].name == section) return st.cfg.groups[i];
    }
    GroupConfig g;
    g.name = section;
    st.cfg.groups.push_back(g);
    st.group_required.emplace_back(false, false);
    return st.cfg.groups.back();
}

void apply_scenario_key(ParseState& st, const std::string& key, const std::string& field,
                        const std::string& value) {
    auto& cfg = st.cfg;
    if (field == "duration") {
        cfg.duration = parse_double(key, value);
        st.has_duration = true;
    } else if (field == "step") {
        cfg.step = parse_double(key, value);
    } else if (field == "map") {
        cfg.map_path = value;
        st.has_map = true;
    } else if (field == "ttl") {
        cfg.ttl = parse_double(key, value);
    } else if (field == "seed") {
        cfg.seed = static_cast<std::uint64_t>(parse_int(key, value));
    } else if (field == "collect") {
        cfg.collect = parse_bool(key, value);
    } else {
        throw ConfigError("unknown key '" + key + "'");
    }
}

void apply_group_key(ParseState& st, const std::string& key, const std::string& section,
                     const std::string& field, const std::string& value) {
    GroupConfig& g = group_for(st, section);
    const std::size_t gi = static_cast<std::size_t>(&g - st.cfg.groups.data());
    if (field == "count") {
        g.count = static_cast<int>(parse_positive_int(key, value));
        st.group_required[gi].first = true;
    } else if (field == "router") {
        g.router = router_kind_from_string(value);
        st.group_required[gi].second = true;
    } else if (field == "speedMin") {
        g.speed.min = parse_double(key, value);
    } else if (field == "speedMax") {
        g.speed.max = parse_double(key, value);
    } else if (field == "pauseMin") {
        g.pause.min = parse_double(key, value);
    } else if (field == "pauseMax") {
        g.pause.max = parse_double(key, value);
    } else if (field == "range") {
        g.range = parse_double(key, value);
    } else if (field == "bitrate") {
        g.bitrate = parse_double(key, value);
    } else if (field == "bufferSize") {
        g.buffer_size = static_cast<std::uint64_t>(parse_positive_int(key, value));
    } else if (field == "snwCopies") {
        g.snw_copies = static_cast<std::uint32_t>(parse_positive_int(key, value));
    } else if (field == "hopThreshold") {
        const auto v = parse_int(key, value);
        if (v < 0) throw ConfigError(key + ": must be >= 0");
        g.hop_threshold = static_cast<int>(v);
    } else if (field == "mlThreshold") {
        g.ml_threshold = parse_double(key, value);
    } else if (field == "modelPath") {
        g.model_path = value;
    } else {
        throw ConfigError("unknown key '" + key + "'");
    }
}

void apply_traffic_key(ParseState& st, const std::string& key, const std::string& field,
                       const std::string& value) {
    auto& t = st.cfg.traffic;
    if (field == "intervalMin") {
        t.interval_min = parse_double(key, value);
        st.has_traffic_interval = true;
    } else if (field == "intervalMax") {
        t.interval_max = parse_double(key, value);
        st.has_traffic_interval = true;
    } else if (field == "sizeMin") {
        t.size_min = static_cast<std::uint64_t>(parse_positive_int(key, value));
        st.has_traffic_size = true;
    } else if (field == "sizeMax") {
        t.size_max = static_cast<std::uint64_t>(parse_positive_int(key, value));
        st.has_traffic_size = true;
    } else if (field == "srcHosts") {
        t.src_hosts = parse_host_range(key, value);
        st.has_traffic_src = true;
    } else if (field == "dstHosts") {
        t.dst_hosts = parse_host_range(key, value);
        st.has_traffic_dst = true;
    } else if (field == "start") {
        t.start = parse_double(key, value);
    } else if (field == "stop") {
        t.stop = parse_double(key, value);
        st.has_stop = true;
    } else {
        throw ConfigError("unknown key '" + key + "'");
    }
}

void apply_key(ParseState& st, const std::string& key, const std::string& value) {
    const auto dot = key.find('.');
    if (dot == std::string::npos) throw ConfigError("unknown key '" + key + "' (expected Section.key)");
    const std::string section = key.substr(0, dot);
    const std::string field = key.substr(dot + 1);
    if (section == "Scenario") {
        apply_scenario_key(st, key, field, value);
    } else if (section.rfind("Group", 0) == 0 && section.size() > 5) {
        apply_group_key(st, key, section, field, value);
    } else if (section == "Traffic") {
        apply_traffic_key(st, key, field, value);
    } else {
        throw ConfigError("unknown key '" + key + "'");
    }
}

void validate(const ScenarioConfig& cfg) {
    if (cfg.duration <= 0.0) throw ConfigError("Scenario.duration: must be positive");
    if (cfg.step <= 0.0) throw ConfigError("Scenario.step: must be positive");
    if (cfg.ttl <= 0.0) throw ConfigError("Scenario.ttl: must be positive");
    if (cfg.groups.empty()) throw ConfigError("config needs at least one group");
    if (cfg.total_hosts() < 2) throw ConfigError("total host count must be >= 2");

    for (const auto& g : cfg.groups) {
        const std::string p = g.name + ".";
        if (g.count < 1) throw ConfigError(p + "count: must be >= 1");
        if (g.speed.min <= 0.0 || g.speed.max < g.speed.min) {
            throw ConfigError(p + "speedMin/speedMax: need 0 < min <= max");
        }
        if (g.pause.min < 0.0 || g.pause.max < g.pause.min) {
            throw ConfigError(p + "pauseMin/pauseMax: need 0 <= min <= max");
        }
        if (g.range <= 0.0) throw ConfigError(p + "range: must be positive");
        if (g.bitrate <= 0.0) throw ConfigError(p + "bitrate: must be positive");
        if (g.buffer_size == 0) throw ConfigError(p + "bufferSize: must be positive");
        if (g.snw_copies < 1) throw ConfigError(p + "snwCopies: must be >= 1");
        if (g.ml_threshold < 0.0 || g.ml_threshold > 1.0) {
            throw ConfigError(p + "mlThreshold: must be in [0,1]");
        }
    }

    const auto& t = cfg.traffic;
    if (t.interval_min <= 0.0 || t.interval_max < t.interval_min) {
        throw ConfigError("Traffic.intervalMin/intervalMax: need 0 < min <= max");
    }
    if (t.size_min == 0 || t.size_max < t.size_min) {
        throw ConfigError("Traffic.sizeMin/sizeMax: need 0 < min <= max");
    }
    const int hosts = cfg.total_hosts();
    if (t.src_hosts.hi >= hosts || t.dst_hosts.hi >= hosts) {
        throw ConfigError("Traffic.srcHosts/dstHosts: host id beyond configured hosts");
    }
    if (t.src_hosts.count() == 1 && t.dst_hosts.count() == 1 && t.src_hosts.lo == t.dst_hosts.lo) {
        throw ConfigError("Traffic.srcHosts/dstHosts: no valid src/dst pair");
    }
    if (t.start < 0.0 || t.stop < t.start) {
        throw ConfigError("Traffic.start/stop: need 0 <= start <= stop");
    }
}

} // namespace

int ScenarioConfig::total_hosts() const {
    int total = 0;
    for (const auto& g : groups) total += g.count;
    return total;
}

std::string ScenarioConfig::router_label() const {
    std::string label;
    for (const auto& g : groups) {
        const auto name = to_string(g.router);
        if (label.find(name) != std::string::npos) continue;
        if (!label.empty()) label += "+";
        label += name;
    }
    return label;
}

ScenarioConfig parse_scenario(const std::string& text) {
    ParseState st;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ConfigError("config line " + std::to_string(line_no) + ": empty key or value");
        }
        apply_key(st, key, value);
    }

    if (!st.has_duration) throw ConfigError("missing required key Scenario.duration");
    if (!st.has_map) throw ConfigError("missing required key Scenario.map");
    if (st.cfg.groups.empty()) throw ConfigError("missing required section Group1");
    for (std::size_t i = 0; i < st.cfg.groups.size(); ++i) {
        if (!st.group_required[i].first) {
            throw ConfigError("missing required key " + st.cfg.groups[i].name + ".count");
        }
        if (!st.group_required[i].second) {
            throw ConfigError("missing required key " + st.cfg.groups[i].name + ".router");
        }
    }
    if (!st.has_traffic_interval || !st.has_traffic_size || !st.has_traffic_src ||
        !st.has_traffic_dst) {
        throw ConfigError(
            "missing required Traffic keys (intervalMin/Max, sizeMin/Max, srcHosts, dstHosts)");
    }
    if (!st.has_stop) st.cfg.traffic.stop = st.cfg.duration;

    validate(st.cfg);
    return st.cfg;
}

ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_scenario(ss.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

void validate_files(const ScenarioConfig& cfg) {
    namespace fs = std::filesystem;
    if (!fs::exists(cfg.map_path)) {
        throw ConfigError("Scenario.map: file does not exist: " + cfg.map_path);
    }
    for (const auto& g : cfg.groups) {
        if (!g.model_path.empty() && !fs::exists(g.model_path)) {
            throw ConfigError(g.name + ".modelPath: file does not exist: " + g.model_path);
        }
    }
}

std::string ScenarioConfig::to_text() const {
    std::ostringstream out;
    out.precision(17);
    out << "Scenario.duration = " << duration << "\n";
    out << "Scenario.step = " << step << "\n";
    out << "Scenario.map = " << map_path << "\n";
    out << "Scenario.ttl = " << ttl << "\n";
    out << "Scenario.seed = " << seed << "\n";
    out << "Scenario.collect = " << (collect ? "true" : "false") << "\n";
    for (const auto& g : groups) {
        out << "\n";
        out << g.name << ".count = " << g.count << "\n";
        out << g.name << ".router = " << to_string(g.router) << "\n";
        out << g.name << ".speedMin = " << g.speed.min << "\n";
        out << g.name << ".speedMax = " << g.speed.max << "\n";
        out << g.name << ".pauseMin = " << g.pause.min << "\n";
        out << g.name << ".pauseMax = " << g.pause.max << "\n";
        out << g.name << ".range = " << g.range << "\n";
        out << g.name << ".bitrate = " << g.bitrate << "\n";
        out << g.name << ".bufferSize = " << g.buffer_size << "\n";
        out << g.name << ".snwCopies = " << g.snw_copies << "\n";
        out << g.name << ".hopThreshold = " << g.hop_threshold << "\n";
        out << g.name << ".mlThreshold = " << g.ml_threshold << "\n";
        if (!g.model_path.empty()) out << g.name << ".modelPath = " << g.model_path << "\n";
    }
    out << "\n";
    out << "Traffic.intervalMin = " << traffic.interval_min << "\n";
    out << "Traffic.intervalMax = " << traffic.interval_max << "\n";
    out << "Traffic.sizeMin = " << traffic.size_min << "\n";
    out << "Traffic.sizeMax = " << traffic.size_max << "\n";
    out << "Traffic.srcHosts = " << traffic.src_hosts.lo << "-" << traffic.src_hosts.hi << "\n";
    out << "Traffic.dstHosts = " << traffic.dst_hosts.lo << "-" << traffic.dst_hosts.hi << "\n";
    out << "Traffic.start = " << traffic.start << "\n";
    out << "Traffic.stop = " << traffic.stop << "\n";
    return out.str();
}

void apply_override(ScenarioConfig& cfg, const std::string& key, const std::string& value) {
    auto set_all_groups = [&](const std::string& field) {
        ParseState st;
        st.cfg = cfg;
        st.group_required.assign(cfg.groups.size(), {true, true});
        for (const auto& g : cfg.groups) {
            apply_group_key(st, g.name + "." + field, g.name, field, value);
        }
        cfg = st.cfg;
    };

    if (key == "nodeCount") {
        if (cfg.groups.size() != 1) {
            throw ConfigError("nodeCount axis is ambiguous with multiple groups; use GroupK.count");
        }
        const auto old_hi = static_cast<HostId>(cfg.total_hosts() - 1);
        cfg.groups[0].count = static_cast<int>(parse_positive_int(key, value));
        const auto new_hi = static_cast<HostId>(cfg.groups[0].count - 1);
        // an all-hosts traffic range tracks the new size, otherwise just clamp
        auto rescale = [&](HostRange& r) {
            if (r.lo == 0 && r.hi == old_hi) r.hi = new_hi;
            else if (r.hi > new_hi) r.hi = new_hi;
        };
        rescale(cfg.traffic.src_hosts);
        rescale(cfg.traffic.dst_hosts);
    } else if (key == "bufferSize") {
        set_all_groups("bufferSize");
    } else if (key == "range") {
        set_all_groups("range");
    } else if (key == "bitrate") {
        set_all_groups("bitrate");
    } else if (key == "ttl") {
        cfg.ttl = parse_double(key, value);
    } else if (key == "duration") {
        cfg.duration = parse_double(key, value);
    } else {
        ParseState st;
        st.cfg = cfg;
        st.group_required.assign(cfg.groups.size(), {true, true});
        apply_key(st, key, value);
        if (st.cfg.groups.size() != cfg.groups.size()) {
            throw ConfigError("override '" + key + "' refers to an unknown group");
        }
        cfg = st.cfg;
    }
    validate(cfg);
}

} // namespace dtnlab

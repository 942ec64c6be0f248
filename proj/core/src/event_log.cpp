#include "dtnlab/event_log.hpp"

#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "dtnlab/error.hpp"

namespace dtnlab {

std::string_view to_string(EventKind k) {
    switch (k) {
        case EventKind::created: return "created";
        case EventKind::started: return "started";
        case EventKind::relayed: return "relayed";
        case EventKind::aborted: return "aborted";
        case EventKind::dropped: return "dropped";
        case EventKind::removed: return "removed";
        case EventKind::delivered: return "delivered";
        case EventKind::contact_up: return "contact_up";
        case EventKind::contact_down: return "contact_down";
    }
    return "?";
}

std::string_view to_string(EventReason r) {
    switch (r) {
        case EventReason::none: return "";
        case EventReason::ttl: return "ttl";
        case EventReason::ack: return "ack";
        case EventReason::too_big: return "too_big";
        case EventReason::buffer_full: return "buffer_full";
        case EventReason::link_down: return "link_down";
        case EventReason::duplicate: return "duplicate";
        case EventReason::quota: return "quota";
    }
    return "";
}

namespace {

constexpr std::string_view kHeader =
    "time,event,msg_id,from,to,size,hop_count,reason,"
    "f_contact_freq,f_buf_occ,f_hop,f_age,f_ttl_rem";

EventKind kind_from_string(std::string_view s) {
    for (int k = 0; k <= static_cast<int>(EventKind::contact_down); ++k) {
        if (to_string(static_cast<EventKind>(k)) == s) return static_cast<EventKind>(k);
    }
    throw ParseError("event log: unknown event kind '" + std::string(s) + "'");
}

EventReason reason_from_string(std::string_view s) {
    for (int r = 1; r <= static_cast<int>(EventReason::quota); ++r) {
        if (to_string(static_cast<EventReason>(r)) == s) return static_cast<EventReason>(r);
    }
    throw ParseError("event log: unknown reason '" + std::string(s) + "'");
}

void append_double(std::string& out, double v) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, p);
}

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            fields.push_back(line.substr(start, i - start));
            start = i + 1;
        }
    }
    return fields;
}

double parse_field_double(std::string_view s, const char* what) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) {
        throw ParseError(std::string("event log: bad ") + what + " field '" + std::string(s) + "'");
    }
    return v;
}

std::int64_t parse_field_int(std::string_view s, const char* what) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) {
        throw ParseError(std::string("event log: bad ") + what + " field '" + std::string(s) + "'");
    }
    return v;
}

} // namespace

void EventLog::write_csv(std::ostream& out) const {
    std::string buf;
    buf.reserve(records_.size() * 64 + 64);
    buf.append(kHeader);
    buf.push_back('\n');
    char tmp[64];
    for (const auto& r : records_) {
        std::snprintf(tmp, sizeof tmp, "%.3f", r.time);
        buf.append(tmp);
        buf.push_back(',');
        buf.append(to_string(r.kind));
        buf.push_back(',');
        if (r.msg != 0) {
            buf.push_back('M');
            buf.append(std::to_string(r.msg));
        }
        buf.push_back(',');
        if (r.from >= 0) buf.append(std::to_string(r.from));
        buf.push_back(',');
        if (r.to >= 0) buf.append(std::to_string(r.to));
        buf.push_back(',');
        if (r.size > 0) buf.append(std::to_string(r.size));
        buf.push_back(',');
        if (r.hop_count >= 0) buf.append(std::to_string(r.hop_count));
        buf.push_back(',');
        if (r.kind == EventKind::delivered && !r.delivered_path.empty()) {
            buf.append("path:");
            for (std::size_t i = 0; i < r.delivered_path.size(); ++i) {
                if (i) buf.push_back('>');
                buf.append(std::to_string(r.delivered_path[i]));
            }
        } else {
            buf.append(to_string(r.reason));
        }
        if (r.features) {
            for (double v : r.features->values()) {
                buf.push_back(',');
                append_double(buf, v);
            }
        } else {
            buf.append(",,,,,");
        }
        buf.push_back('\n');
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

void EventLog::write_csv_file(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open event log for writing: " + path);
    write_csv(out);
    if (!out) throw Error("failed writing event log: " + path);
}

EventLog EventLog::read_csv(std::istream& in) {
    EventLog log;
    std::string line;
    if (!std::getline(in, line)) throw ParseError("event log: empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kHeader) throw ParseError("event log: unexpected header");

    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto f = split_csv(line);
        if (f.size() != 13) throw ParseError("event log: expected 13 fields, got " + std::to_string(f.size()));

        EventRecord rec;
        rec.time = parse_field_double(f[0], "time");
        rec.kind = kind_from_string(f[1]);
        if (!f[2].empty()) {
            if (f[2][0] != 'M') throw ParseError("event log: bad msg_id '" + std::string(f[2]) + "'");
            rec.msg = static_cast<MessageSeq>(parse_field_int(f[2].substr(1), "msg_id"));
        }
        if (!f[3].empty()) rec.from = static_cast<HostId>(parse_field_int(f[3], "from"));
        if (!f[4].empty()) rec.to = static_cast<HostId>(parse_field_int(f[4], "to"));
        if (!f[5].empty()) rec.size = static_cast<std::uint64_t>(parse_field_int(f[5], "size"));
        if (!f[6].empty()) rec.hop_count = static_cast<int>(parse_field_int(f[6], "hop_count"));
        if (!f[7].empty()) {
            if (f[7].substr(0, 5) == "path:") {
                std::string_view rest = f[7].substr(5);
                std::size_t start = 0;
                for (std::size_t i = 0; i <= rest.size(); ++i) {
                    if (i == rest.size() || rest[i] == '>') {
                        rec.delivered_path.push_back(
                            static_cast<HostId>(parse_field_int(rest.substr(start, i - start), "path")));
                        start = i + 1;
                    }
                }
            } else {
                rec.reason = reason_from_string(f[7]);
            }
        }
        if (!f[8].empty() || !f[9].empty() || !f[10].empty() || !f[11].empty() || !f[12].empty()) {
            RelayFeatureVector v;
            v.contact_frequency = parse_field_double(f[8], "f_contact_freq");
            v.buffer_occupancy = parse_field_double(f[9], "f_buf_occ");
            v.hop_count = parse_field_double(f[10], "f_hop");
            v.message_age = parse_field_double(f[11], "f_age");
            v.ttl_remaining = parse_field_double(f[12], "f_ttl_rem");
            rec.features = v;
        }
        log.append(std::move(rec));
    }
    return log;
}

EventLog EventLog::read_csv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open event log: " + path);
    return read_csv(in);
}

} // namespace dtnlab

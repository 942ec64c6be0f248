#include "dtnlab/outputs.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "dtnlab/error.hpp"

namespace dtnlab {

std::string format_metric(double v) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

namespace {

void append_optional(std::string& out, const std::optional<double>& v) {
    out.push_back(',');
    if (v) out.append(format_metric(*v));
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open output file: " + path);
    return out;
}

} // namespace

void write_reports_csv(const std::vector<MessageStatsReport>& reports, const std::string& path) {
    if (reports.empty()) throw Error("write_reports_csv: no reports to write");
    std::string buf =
        "scenario_id,seed,router,created,started,relayed,aborted,dropped,removed,delivered,"
        "delivery_prob,overhead_ratio,latency_avg,latency_med,hopcount_avg\n";
    for (const auto& r : reports) {
        buf.append(r.scenario_id);
        buf.push_back(',');
        buf.append(std::to_string(r.seed));
        buf.push_back(',');
        buf.append(r.router);
        for (std::uint64_t c : {r.created, r.started, r.relayed, r.aborted, r.dropped, r.removed,
                                r.delivered}) {
            buf.push_back(',');
            buf.append(std::to_string(c));
        }
        buf.push_back(',');
        buf.append(format_metric(r.delivery_prob));
        append_optional(buf, r.overhead_ratio);
        append_optional(buf, r.latency_avg);
        append_optional(buf, r.latency_med);
        append_optional(buf, r.hopcount_avg);
        buf.push_back('\n');
    }
    auto out = open_out(path);
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

void write_comparison_csv(const std::vector<ComparisonRow>& rows, const std::string& path) {
    std::string buf = "metric,router_a,router_b,method,n,statistic,p_value,significant\n";
    for (const auto& r : rows) {
        buf.append(r.metric);
        buf.push_back(',');
        buf.append(r.router_a);
        buf.push_back(',');
        buf.append(r.router_b);
        buf.push_back(',');
        buf.append(to_string(r.method));
        buf.push_back(',');
        buf.append(std::to_string(r.result.n));
        if (r.degenerate) {
            buf.append(",,,degenerate\n");
            continue;
        }
        buf.push_back(',');
        buf.append(format_metric(r.result.statistic));
        buf.push_back(',');
        buf.append(format_metric(r.result.p_value));
        buf.push_back(',');
        buf.append(r.result.significant ? "true" : "false");
        buf.push_back('\n');
    }
    auto out = open_out(path);
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

namespace {

struct BarChartSpec {
    std::string title;
    std::string file;
    bool log_scale = false;
};

void write_bar_chart(const std::map<std::string, std::pair<double, int>>& sums,
                     const BarChartSpec& spec, const std::string& out_dir) {
    std::vector<std::pair<std::string, double>> bars;
    for (const auto& [router, acc] : sums) {
        if (acc.second > 0) bars.emplace_back(router, acc.first / acc.second);
    }
    if (bars.empty()) return;

    const double width = 120.0 + 90.0 * static_cast<double>(bars.size());
    const double height = 300.0;
    const double floor_y = 260.0;
    double max_v = 0.0;
    double min_v = std::numeric_limits<double>::infinity();
    for (const auto& [name, v] : bars) {
        max_v = std::max(max_v, v);
        min_v = std::min(min_v, v);
    }
    if (max_v <= 0.0) max_v = 1.0;

    auto bar_height = [&](double v) {
        if (!spec.log_scale) return 200.0 * v / max_v;
        const double lo = std::log10(std::max(min_v, 1e-3)) - 0.5;
        const double hi = std::log10(std::max(max_v, 1e-3));
        if (hi <= lo) return 200.0;
        return 200.0 * (std::log10(std::max(v, 1e-3)) - lo) / (hi - lo);
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\">\n";
    svg << "  <text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"15\">"
        << spec.title << (spec.log_scale ? " (log scale)" : "") << "</text>\n";
    double x = 70.0;
    for (const auto& [name, v] : bars) {
        const double h = std::max(1.0, bar_height(v));
        svg << "  <rect x=\"" << x << "\" y=\"" << floor_y - h
            << "\" width=\"60\" height=\"" << h << "\" fill=\"#4878a8\"/>\n";
        svg << "  <text x=\"" << x + 30 << "\" y=\"" << floor_y + 16
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << name
            << "</text>\n";
        svg << "  <text x=\"" << x + 30 << "\" y=\"" << floor_y - h - 6
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << format_metric(v) << "</text>\n";
        x += 90.0;
    }
    svg << "  <line x1=\"50\" y1=\"" << floor_y << "\" x2=\"" << width - 30 << "\" y2=\""
        << floor_y << "\" stroke=\"#333\"/>\n";
    svg << "</svg>\n";

    auto out = open_out(out_dir + "/" + spec.file);
    const std::string text = svg.str();
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

} // namespace

void write_comparison_plots(const std::vector<MessageStatsReport>& reports,
                            const std::string& out_dir) {
    std::map<std::string, std::pair<double, int>> delivery;
    std::map<std::string, std::pair<double, int>> overhead;
    std::map<std::string, std::pair<double, int>> latency;
    for (const auto& r : reports) {
        auto& d = delivery[r.router];
        d.first += r.delivery_prob;
        d.second += 1;
        if (r.overhead_ratio) {
            auto& o = overhead[r.router];
            o.first += *r.overhead_ratio;
            o.second += 1;
        }
        if (r.latency_avg) {
            auto& l = latency[r.router];
            l.first += *r.latency_avg;
            l.second += 1;
        }
    }
    write_bar_chart(delivery, {"Delivery probability", "delivery_prob.svg", false}, out_dir);
    write_bar_chart(overhead, {"Overhead ratio", "overhead_ratio.svg", true}, out_dir);
    write_bar_chart(latency, {"Average latency (s)", "latency_avg.svg", false}, out_dir);
}

} // namespace dtnlab

#include "dtnlab/map_graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include "dtnlab/error.hpp"

namespace dtnlab {

namespace {

struct Cursor {
    const char* p;
    const char* end;
    int line_no;

    void skip_ws() {
        while (p != end && (*p == ' ' || *p == '\t')) ++p;
    }

    bool match(char c) {
        skip_ws();
        if (p != end && *p == c) {
            ++p;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!match(c)) {
            throw ParseError("map line " + std::to_string(line_no) + ": expected '" + std::string(1, c) + "'");
        }
    }

    bool match_keyword_ci(std::string_view kw) {
        skip_ws();
        if (static_cast<std::size_t>(end - p) < kw.size()) return false;
        for (std::size_t i = 0; i < kw.size(); ++i) {
            if (std::toupper(static_cast<unsigned char>(p[i])) != kw[i]) return false;
        }
        p += kw.size();
        return true;
    }

    double parse_double() {
        skip_ws();
        double value = 0.0;
        auto [next, ec] = std::from_chars(p, end, value);
        if (ec != std::errc() || next == p) {
            throw ParseError("map line " + std::to_string(line_no) + ": malformed numeric token");
        }
        if (!std::isfinite(value)) {
            throw ParseError("map line " + std::to_string(line_no) + ": non-finite coordinate");
        }
        p = next;
        return value;
    }

    bool at_end() {
        skip_ws();
        return p == end;
    }
};

std::vector<Point> parse_linestring(const std::string& line, int line_no) {
    Cursor cur{line.data(), line.data() + line.size(), line_no};
    if (!cur.match_keyword_ci("LINESTRING")) {
        throw ParseError("map line " + std::to_string(line_no) + ": expected LINESTRING");
    }
    cur.expect('(');
    std::vector<Point> pts;
    do {
        Point pt;
        pt.x = cur.parse_double();
        pt.y = cur.parse_double();
        pts.push_back(pt);
    } while (cur.match(','));
    cur.expect(')');
    if (!cur.at_end()) {
        throw ParseError("map line " + std::to_string(line_no) + ": trailing characters after LINESTRING");
    }
    if (pts.size() < 2) {
        throw ParseError("map line " + std::to_string(line_no) + ": LINESTRING with fewer than 2 points");
    }
    return pts;
}

} // namespace

MapGraph parse_wkt_map(std::istream& in) {
    MapGraph g;
    // exact coordinate equality is the merge rule; a map keyed on the raw
    // doubles implements it without any epsilon order dependence
    std::map<std::pair<double, double>, WaypointId> index;
    std::set<std::pair<WaypointId, WaypointId>> seen_edges;

    auto intern = [&](const Point& pt) -> WaypointId {
        auto key = std::make_pair(pt.x, pt.y);
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        const auto id = static_cast<WaypointId>(g.waypoints_.size());
        g.waypoints_.push_back(pt);
        index.emplace(key, id);
        return id;
    };

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == '#') continue;
        if (!line.empty() && line.back() == '\r') line.pop_back();

        const auto pts = parse_linestring(line, line_no);
        WaypointId prev = intern(pts.front());
        for (std::size_t i = 1; i < pts.size(); ++i) {
            const WaypointId curr = intern(pts[i]);
            if (curr == prev) continue; // zero-length segment, no self loop
            const auto key = std::minmax(prev, curr);
            if (seen_edges.insert(key).second) {
                g.edges_.push_back({key.first, key.second,
                                    distance(g.waypoints_[static_cast<std::size_t>(key.first)],
                                             g.waypoints_[static_cast<std::size_t>(key.second)])});
            }
            prev = curr;
        }
    }

    if (g.waypoints_.empty()) {
        throw ParseError("map contains no LINESTRING data");
    }
    g.build_adjacency();
    g.validate();
    return g;
}

MapGraph parse_wkt_map(const std::string& text) {
    std::istringstream in(text);
    return parse_wkt_map(in);
}

MapGraph load_wkt_map(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open map file: " + path);
    return parse_wkt_map(in);
}

void MapGraph::build_adjacency() {
    adjacency_.assign(waypoints_.size(), {});
    for (const auto& e : edges_) {
        adjacency_[static_cast<std::size_t>(e.a)].push_back({e.b, e.length});
        adjacency_[static_cast<std::size_t>(e.b)].push_back({e.a, e.length});
    }
    for (auto& nbrs : adjacency_) {
        std::sort(nbrs.begin(), nbrs.end(),
                  [](const Neighbor& a, const Neighbor& b) { return a.to < b.to; });
    }
}

void MapGraph::validate() const {
    // SPMBM draws destinations over all waypoints, so any-to-any
    // reachability has to hold; reject disconnected maps at load.
    std::vector<char> visited(waypoints_.size(), 0);
    std::queue<WaypointId> q;
    q.push(0);
    visited[0] = 1;
    std::size_t reached = 1;
    while (!q.empty()) {
        const WaypointId u = q.front();
        q.pop();
        for (const auto& n : neighbors(u)) {
            if (!visited[static_cast<std::size_t>(n.to)]) {
                visited[static_cast<std::size_t>(n.to)] = 1;
                ++reached;
                q.push(n.to);
            }
        }
    }
    if (reached != waypoints_.size()) {
        throw ParseError("map graph is disconnected (" + std::to_string(reached) + " of " +
                         std::to_string(waypoints_.size()) + " waypoints reachable)");
    }
}

std::vector<WaypointId> MapGraph::shortest_path(WaypointId src, WaypointId dst) const {
    const auto n = waypoints_.size();
    if (src < 0 || dst < 0 || static_cast<std::size_t>(src) >= n || static_cast<std::size_t>(dst) >= n) {
        throw Error("shortest_path: waypoint index out of range");
    }
    if (src == dst) return {src};

    // Dijkstra from dst gives distance-to-destination for every waypoint;
    // the path is then walked forward from src, taking at each step the
    // smallest-index neighbor on an optimal continuation. This makes the
    // tie-break rule explicit instead of an artifact of heap ordering.
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(n, inf);
    using QEntry = std::pair<double, WaypointId>;
    std::priority_queue<QEntry, std::vector<QEntry>, std::greater<>> heap;
    dist[static_cast<std::size_t>(dst)] = 0.0;
    heap.emplace(0.0, dst);
    while (!heap.empty()) {
        const auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[static_cast<std::size_t>(u)]) continue;
        for (const auto& nb : neighbors(u)) {
            const double nd = d + nb.length;
            if (nd < dist[static_cast<std::size_t>(nb.to)]) {
                dist[static_cast<std::size_t>(nb.to)] = nd;
                heap.emplace(nd, nb.to);
            }
        }
    }

    if (dist[static_cast<std::size_t>(src)] == inf) {
        throw Error("shortest_path: destination unreachable"); // cannot happen on a validated map
    }

    std::vector<WaypointId> path{src};
    WaypointId u = src;
    while (u != dst) {
        WaypointId best = -1;
        double best_d = inf;
        for (const auto& nb : neighbors(u)) {
            const double through = nb.length + dist[static_cast<std::size_t>(nb.to)];
            // strict improvement keeps the smallest index among ties,
            // neighbors are sorted by index
            if (through < best_d - 1e-12) {
                best_d = through;
                best = nb.to;
            }
        }
        u = best;
        path.push_back(u);
    }
    return path;
}

double MapGraph::path_length(const std::vector<WaypointId>& path) const {
    double total = 0.0;
    for (std::size_t i = 1; i < path.size(); ++i) {
        total += distance(waypoint(path[i - 1]), waypoint(path[i]));
    }
    return total;
}

std::string MapGraph::to_wkt() const {
    std::ostringstream out;
    out.precision(17);
    for (const auto& e : edges_) {
        const Point& pa = waypoint(e.a);
        const Point& pb = waypoint(e.b);
        out << "LINESTRING (" << pa.x << ' ' << pa.y << ", " << pb.x << ' ' << pb.y << ")\n";
    }
    return out.str();
}

} // namespace dtnlab

#include "dtnlab/router.hpp"

#include <algorithm>
#include <limits>

#include "dtnlab/error.hpp"

namespace dtnlab {

void DeliveryLikelihoodTable::meet(HostId met_peer) {
    if (met_peer == owner) throw Error("likelihood table: owner cannot meet itself");
    f[met_peer] += 1.0;
    double total = 0.0;
    for (const auto& [peer, value] : f) total += value;
    for (auto& [peer, value] : f) value /= total;
}

double DeliveryLikelihoodTable::sum() const {
    double total = 0.0;
    for (const auto& [peer, value] : f) total += value;
    return total;
}

double maxprop_path_cost(const LikelihoodSnapshot& snapshot, HostId src, HostId dst) {
    if (src == dst) return 0.0;

    std::set<HostId> node_set;
    for (const auto& [owner, table] : snapshot) {
        node_set.insert(owner);
        for (const auto& [peer, value] : table.f) node_set.insert(peer);
    }
    node_set.insert(src);
    if (!node_set.count(dst)) return std::numeric_limits<double>::infinity();

    const std::vector<HostId> nodes(node_set.begin(), node_set.end());
    const auto n = nodes.size();
    auto index_of = [&](HostId h) {
        return static_cast<std::size_t>(
            std::lower_bound(nodes.begin(), nodes.end(), h) - nodes.begin());
    };

    // dense Dijkstra; the snapshot graph is complete (missing entries are
    // weight-1 edges), so the O(V^2) scan is the natural shape
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(n, inf);
    std::vector<char> done(n, 0);
    dist[index_of(src)] = 0.0;

    for (std::size_t iter = 0; iter < n; ++iter) {
        std::size_t u = n;
        double best = inf;
        for (std::size_t i = 0; i < n; ++i) {
            if (!done[i] && dist[i] < best) {
                best = dist[i];
                u = i;
            }
        }
        if (u == n) break;
        done[u] = 1;
        if (nodes[u] == dst) return dist[u];

        const auto table_it = snapshot.find(nodes[u]);
        for (std::size_t v = 0; v < n; ++v) {
            if (done[v] || v == u) continue;
            double f = 0.0;
            if (table_it != snapshot.end()) {
                const auto entry = table_it->second.f.find(nodes[v]);
                if (entry != table_it->second.f.end()) f = entry->second;
            }
            const double w = 1.0 - f;
            if (dist[u] + w < dist[v]) dist[v] = dist[u] + w;
        }
    }
    return dist[index_of(dst)];
}

PeerMetadata Router::export_metadata(RouterContext& ctx) const {
    PeerMetadata meta;
    meta.peer = ctx.self();
    for (const auto& m : ctx.buffer().entries()) meta.held.insert(m.seq);
    meta.acked = acked_;
    return meta;
}

} // namespace dtnlab

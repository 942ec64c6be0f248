#include "dtnlab/dataset.hpp"

#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "dtnlab/error.hpp"
#include "dtnlab/rng.hpp"

namespace dtnlab {

void append_dataset(Dataset& ds, const EventLog& log) {
    // receivers on the delivered copy's lineage get label 1
    std::unordered_map<MessageSeq, std::unordered_set<HostId>> delivered_path;
    for (const auto& r : log.records()) {
        if (r.kind == EventKind::delivered) {
            auto& set = delivered_path[r.msg];
            for (HostId h : r.delivered_path) set.insert(h);
        }
    }

    for (const auto& r : log.records()) {
        if (r.kind != EventKind::relayed) continue;
        if (!r.features) {
            throw Error("build_dataset: relayed event for " + message_id(r.msg) +
                        " has no feature snapshot (log not produced in collect mode)");
        }
        TrainingExample ex;
        ex.features = *r.features;
        auto it = delivered_path.find(r.msg);
        ex.label = (it != delivered_path.end() && it->second.count(r.to)) ? 1 : 0;
        ds.examples.push_back(ex);
    }
}

Dataset build_dataset(const EventLog& log) {
    Dataset ds;
    append_dataset(ds, log);
    return ds;
}

std::pair<Dataset, Dataset> split_dataset(const Dataset& ds, double train_fraction,
                                          std::uint64_t seed) {
    const std::size_t n = ds.size();
    if (n < 5) throw Error("split_dataset: dataset smaller than 5 examples");

    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    Rng rng = Rng::from_stream(seed, "mlsplit");
    for (std::size_t i = n - 1; i > 0; --i) {
        const auto j = static_cast<std::size_t>(rng.uniform_index(i + 1));
        std::swap(perm[i], perm[j]);
    }

    const auto train_n = static_cast<std::size_t>(
        std::ceil(train_fraction * static_cast<double>(n)));
    Dataset train;
    Dataset test;
    train.examples.reserve(train_n);
    test.examples.reserve(n - train_n);
    for (std::size_t i = 0; i < n; ++i) {
        (i < train_n ? train : test).examples.push_back(ds.examples[perm[i]]);
    }
    return {std::move(train), std::move(test)};
}

} // namespace dtnlab

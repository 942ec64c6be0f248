#include "doctest.h"

#include <cmath>
#include <numeric>

#include "json.hpp"

#include "dtnlab/dataset.hpp"
#include "dtnlab/error.hpp"
#include "dtnlab/features.hpp"
#include "dtnlab/gbdt.hpp"
#include "dtnlab/rng.hpp"
#include "support/oracles.hpp"
#include "support/temp_dir.hpp"

using namespace dtnlab;

TEST_SUITE_BEGIN("ml-engine");

namespace {

RelayFeatureVector fv(double cf, double occ, double hops, double age, double ttl) {
    RelayFeatureVector x;
    x.contact_frequency = cf;
    x.buffer_occupancy = occ;
    x.hop_count = hops;
    x.message_age = age;
    x.ttl_remaining = ttl;
    return x;
}

Dataset ttl_stump_dataset() {
    Dataset ds;
    ds.examples.push_back({fv(0, 0, 0, 0, 0), 0});
    ds.examples.push_back({fv(0, 0, 0, 0, 0), 0});
    ds.examples.push_back({fv(0, 0, 0, 0, 1000), 1});
    ds.examples.push_back({fv(0, 0, 0, 0, 1000), 1});
    return ds;
}

Dataset random_separable(Rng& rng, std::size_t n) {
    Dataset ds;
    for (std::size_t i = 0; i < n; ++i) {
        RelayFeatureVector x = fv(rng.uniform(0, 10), rng.uniform01(), rng.uniform(0, 6),
                                  rng.uniform(0, 3000), rng.uniform(0, 3600));
        ds.examples.push_back({x, x.ttl_remaining > 1800.0 ? 1 : 0});
    }
    // guarantee both classes
    ds.examples.push_back({fv(0, 0, 0, 0, 3600), 1});
    ds.examples.push_back({fv(0, 0, 0, 0, 0), 0});
    return ds;
}

} // namespace

TEST_CASE("extract_features: all-zero baseline, forced arithmetic, ttl clamp") {
    Message m;
    m.seq = 1;
    m.src = 0;
    m.dst = 5;
    m.size = 1000;
    m.created_at = 0.0;
    m.ttl = 900.0;
    m.path = {0};
    Buffer empty(1000);

    const auto fresh = extract_features(m, empty, 0, 0.0);
    CHECK(fresh.contact_frequency == 0.0);
    CHECK(fresh.buffer_occupancy == 0.0);
    CHECK(fresh.hop_count == 0.0);
    CHECK(fresh.message_age == 0.0);
    CHECK(fresh.ttl_remaining == 900.0);

    const auto later = extract_features(m, empty, 2, 7200.0);
    CHECK(later.contact_frequency == doctest::Approx(1.0)); // 2 contacts over 2 hours
    CHECK(later.message_age == doctest::Approx(7200.0));
    CHECK(later.ttl_remaining == 0.0); // clamped

    Buffer half(1000);
    Message filler;
    filler.seq = 9;
    filler.src = 1;
    filler.dst = 2;
    filler.size = 500;
    filler.ttl = 100;
    filler.path = {1};
    half.push(filler);
    CHECK(extract_features(m, half, 0, 10.0).buffer_occupancy == doctest::Approx(0.5));
}

TEST_CASE("build_dataset: label is membership in the delivered hop path") {
    EventLog log;
    auto relayed = [&](MessageSeq msg, HostId from, HostId to) {
        EventRecord r;
        r.time = 1.0;
        r.kind = EventKind::relayed;
        r.msg = msg;
        r.from = from;
        r.to = to;
        r.hop_count = 1;
        r.features = fv(0, 0, 0, 0, 100);
        log.append(r);
    };
    EventRecord created;
    created.kind = EventKind::created;
    created.msg = 1;
    created.from = 0;
    created.to = 3;
    log.append(created);
    relayed(1, 0, 1); // on the delivered path
    relayed(1, 0, 2); // dead end
    relayed(1, 1, 3); // final hop
    EventRecord del;
    del.time = 2.0;
    del.kind = EventKind::delivered;
    del.msg = 1;
    del.from = 1;
    del.to = 3;
    del.hop_count = 2;
    del.delivered_path = {0, 1, 3};
    log.append(del);

    const auto ds = build_dataset(log);
    REQUIRE(ds.size() == 3);
    CHECK(ds.examples[0].label == 1);
    CHECK(ds.examples[1].label == 0);
    CHECK(ds.examples[2].label == 1);
}

TEST_CASE("build_dataset: undelivered messages label every relay 0") {
    EventLog log;
    EventRecord created;
    created.kind = EventKind::created;
    created.msg = 1;
    created.from = 0;
    created.to = 9;
    log.append(created);
    EventRecord r;
    r.kind = EventKind::relayed;
    r.msg = 1;
    r.from = 0;
    r.to = 1;
    r.features = fv(1, 0.5, 0, 10, 90);
    log.append(r);
    const auto ds = build_dataset(log);
    REQUIRE(ds.size() == 1);
    CHECK(ds.examples[0].label == 0);
}

TEST_CASE("build_dataset: empty log and missing feature columns") {
    EventLog empty;
    CHECK(build_dataset(empty).empty());

    EventLog no_features;
    EventRecord created;
    created.kind = EventKind::created;
    created.msg = 1;
    created.from = 0;
    created.to = 2;
    no_features.append(created);
    EventRecord r;
    r.kind = EventKind::relayed;
    r.msg = 1;
    r.from = 0;
    r.to = 1;
    no_features.append(r);
    CHECK_THROWS_AS(build_dataset(no_features), Error);
}

TEST_CASE("split_dataset: 10 examples go 8/2, deterministic per seed, minimum size") {
    Dataset ds;
    for (int i = 0; i < 10; ++i) ds.examples.push_back({fv(i, 0, 0, 0, 0), i % 2});
    const auto [train1, test1] = split_dataset(ds, 0.8, 31);
    CHECK(train1.size() == 8);
    CHECK(test1.size() == 2);
    const auto [train2, test2] = split_dataset(ds, 0.8, 31);
    for (std::size_t i = 0; i < train1.size(); ++i) {
        CHECK(train1.examples[i].features.contact_frequency ==
              train2.examples[i].features.contact_frequency);
    }

    Dataset small;
    for (int i = 0; i < 4; ++i) small.examples.push_back({fv(i, 0, 0, 0, 0), i % 2});
    CHECK_THROWS_AS(split_dataset(small, 0.8, 0), Error);
}

TEST_CASE("train_gbdt: single-class training set is an error") {
    Dataset ds;
    for (int i = 0; i < 8; ++i) ds.examples.push_back({fv(i, 0, 0, 0, 0), 1});
    CHECK_THROWS_AS(train_gbdt(ds, GbdtParams{}), Error);
}

TEST_CASE("train_gbdt: ttl stump matches the hand-iterated boosting recurrence") {
    GbdtParams params;
    params.rounds = 10;
    params.max_depth = 1;
    params.learning_rate = 0.1;
    params.l2_lambda = 0.0;
    params.min_leaf_examples = 1;
    const auto [model, report] = train_gbdt(ttl_stump_dataset(), params);

    // every round must split the two groups at the single midpoint 500
    const auto expect = oracles::boost_two_groups(2, 2, 10, 0.1, 0.0);
    const double p_pos = model.predict_prob(fv(0, 0, 0, 0, 1000));
    const double p_neg = model.predict_prob(fv(0, 0, 0, 0, 0));
    CHECK(p_pos == doctest::Approx(1.0 / (1.0 + std::exp(-expect.margin1))).epsilon(1e-12));
    CHECK(p_neg == doctest::Approx(1.0 / (1.0 + std::exp(-expect.margin0))).epsilon(1e-12));
    CHECK(p_pos > 0.8);
    CHECK(p_neg < 0.2);
    CHECK(report.train_count == 4);
}

TEST_CASE("train_gbdt: training loss never ends above the prior's loss") {
    Rng rng(808);
    for (int trial = 0; trial < 5; ++trial) {
        const auto ds = random_separable(rng, 60);
        GbdtParams params;
        params.rounds = 20;
        params.min_leaf_examples = 2;
        const auto [model, report] = train_gbdt(ds, params);

        // brute-force loss of the constant prior
        double positives = 0;
        for (const auto& e : ds.examples) positives += e.label;
        const double p = positives / static_cast<double>(ds.size());
        double loss0 = 0.0;
        for (const auto& e : ds.examples) {
            loss0 += e.label ? -std::log(p) : -std::log(1.0 - p);
        }
        loss0 /= static_cast<double>(ds.size());
        CHECK(report.train_log_loss <= loss0 + 1e-12);
    }
}

TEST_CASE("predict_prob: empty ensemble, single leaf, and the open interval") {
    GbdtModel empty;
    empty.base_score = 0.0;
    CHECK(empty.predict_prob(fv(0, 0, 0, 0, 0)) == doctest::Approx(0.5));

    GbdtModel one;
    one.base_score = 0.0;
    one.learning_rate = 0.1;
    GbdtTree tree;
    tree.nodes.push_back({-1, 0.0, -1, -1, 2.0, 0.0});
    one.trees.push_back(tree);
    CHECK(one.predict_prob(fv(1, 1, 1, 1, 1)) == doctest::Approx(1.0 / (1.0 + std::exp(-0.2))));

    Rng rng(5);
    for (int i = 0; i < 200; ++i) {
        const double p = one.predict_prob(
            fv(rng.uniform(-10, 10), rng.uniform01(), rng.uniform(0, 9), rng.uniform(0, 1e4),
               rng.uniform(0, 1e4)));
        CHECK(p > 0.0);
        CHECK(p < 1.0);
    }
}

TEST_CASE("feature_importance: single-feature model, empty model, bookkeeping equality") {
    GbdtModel empty;
    for (double g : empty.feature_importance()) CHECK(g == 0.0);

    GbdtParams params;
    params.rounds = 10;
    params.max_depth = 1;
    params.min_leaf_examples = 1;
    params.l2_lambda = 0.0;
    const auto [model, report] = train_gbdt(ttl_stump_dataset(), params);
    const auto gains = model.feature_importance();
    CHECK(gains[4] > 0.0); // ttl_remaining
    for (std::size_t i = 0; i < 4; ++i) CHECK(gains[i] == 0.0);

    // training-time accumulation agrees with independent tree traversal
    for (std::size_t i = 0; i < gains.size(); ++i) {
        CHECK(gains[i] == doctest::Approx(report.feature_gain[i]).epsilon(1e-12));
    }
}

TEST_CASE("model json: round trip is prediction-identical") {
    Rng rng(99);
    const auto ds = random_separable(rng, 80);
    GbdtParams params;
    params.rounds = 15;
    params.min_leaf_examples = 2;
    const auto [model, report] = train_gbdt(ds, params);

    const auto dir = testutil::make_temp_dir("model_roundtrip");
    const auto path = (dir / "model.json").string();
    model.save(path);
    const auto loaded = GbdtModel::load(path);

    for (int i = 0; i < 1000; ++i) {
        const auto x = fv(rng.uniform(0, 10), rng.uniform01(), rng.uniform(0, 6),
                          rng.uniform(0, 3600), rng.uniform(0, 3600));
        REQUIRE(model.predict_prob(x) == loaded.predict_prob(x)); // bit identical
    }
}

TEST_CASE("model json: version and feature-name validation") {
    GbdtModel model;
    const auto text = model.to_json();

    auto with_version = nlohmann::json::parse(text);
    with_version["version"] = 99;
    CHECK_THROWS_AS(GbdtModel::from_json(with_version.dump()), ParseError);

    // names are the binding: reordering them must be rejected even though
    // the set is unchanged
    auto reordered = nlohmann::json::parse(text);
    std::swap(reordered["feature_names"][0], reordered["feature_names"][1]);
    CHECK_THROWS_AS(GbdtModel::from_json(reordered.dump()), ParseError);

    CHECK_THROWS_AS(GbdtModel::from_json("{not json"), ParseError);
}

TEST_CASE("auc: separated, constant, and random scores against pair counting") {
    CHECK(auc_score({0.9, 0.8, 0.2, 0.1}, {1, 1, 0, 0}) == doctest::Approx(1.0));
    CHECK(auc_score({0.5, 0.5, 0.5, 0.5}, {1, 0, 1, 0}) == doctest::Approx(0.5));

    Rng rng(123);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = static_cast<int>(rng.uniform_int(5, 40));
        std::vector<double> scores(n);
        std::vector<int> labels(n);
        for (int i = 0; i < n; ++i) {
            scores[i] = std::round(rng.uniform01() * 10.0) / 10.0; // provoke ties
            labels[i] = rng.uniform01() < 0.4 ? 1 : 0;
        }
        const double expect = oracles::auc_by_pair_counting(scores, labels);
        CHECK(auc_score(scores, labels) == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("evaluate_model: accuracy and confusion counts at 0.5") {
    Dataset train = ttl_stump_dataset();
    GbdtParams params;
    params.rounds = 10;
    params.max_depth = 1;
    params.min_leaf_examples = 1;
    params.l2_lambda = 0.0;
    auto [model, report] = train_gbdt(train, params);
    evaluate_model(model, train, report);
    CHECK(report.test_auc == doctest::Approx(1.0));
    CHECK(report.test_accuracy == doctest::Approx(1.0));
    CHECK(report.tp == 2);
    CHECK(report.tn == 2);
    CHECK(report.test_count == 4);
}

TEST_SUITE_END();

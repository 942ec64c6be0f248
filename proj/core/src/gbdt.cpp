#include "dtnlab/gbdt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dtnlab/error.hpp"

namespace dtnlab {

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

struct SplitChoice {
    double gain = 0.0;
    int feature = -1;
    double threshold = 0.0;
};

struct TreeBuilder {
    const Dataset& data;
    const GbdtParams& params;
    const std::vector<double>& grad;
    const std::vector<double>& hess;
    std::array<double, RelayFeatureVector::kCount>& gain_accum;
    GbdtTree tree;

    double leaf_weight(double g, double h) const { return -g / (h + params.l2_lambda); }

    // 0.5 * [GL^2/(HL+l) + GR^2/(HR+l) - (GL+GR)^2/(HL+HR+l)] - gamma
    double split_gain(double gl, double hl, double gr, double hr) const {
        const double l = params.l2_lambda;
        return 0.5 * (gl * gl / (hl + l) + gr * gr / (hr + l) -
                      (gl + gr) * (gl + gr) / (hl + hr + l)) -
               params.min_split_gain;
    }

    SplitChoice best_split(const std::vector<std::size_t>& idx) const {
        SplitChoice best;
        std::vector<std::pair<double, std::size_t>> sorted;
        sorted.reserve(idx.size());

        for (std::size_t feature = 0; feature < RelayFeatureVector::kCount; ++feature) {
            sorted.clear();
            for (std::size_t i : idx) {
                sorted.emplace_back(data.examples[i].features[feature], i);
            }
            std::sort(sorted.begin(), sorted.end());

            double g_total = 0.0;
            double h_total = 0.0;
            for (std::size_t i : idx) {
                g_total += grad[i];
                h_total += hess[i];
            }

            double gl = 0.0;
            double hl = 0.0;
            for (std::size_t k = 0; k + 1 < sorted.size(); ++k) {
                gl += grad[sorted[k].second];
                hl += hess[sorted[k].second];
                const double v = sorted[k].first;
                const double next = sorted[k + 1].first;
                if (v == next) continue; // split only between distinct values
                const double thr = 0.5 * (v + next);
                if (!(thr > v) || !(thr <= next)) continue; // adjacent floats, degenerate midpoint
                const std::size_t left_n = k + 1;
                const std::size_t right_n = sorted.size() - left_n;
                if (left_n < static_cast<std::size_t>(params.min_leaf_examples) ||
                    right_n < static_cast<std::size_t>(params.min_leaf_examples)) {
                    continue;
                }
                const double gain = split_gain(gl, hl, g_total - gl, h_total - hl);
                // tie-break by (feature index, threshold), both already
                // visited in ascending order, so strict improvement suffices
                if (gain > best.gain) {
                    best.gain = gain;
                    best.feature = static_cast<int>(feature);
                    best.threshold = thr;
                }
            }
        }
        return best;
    }

    int build(const std::vector<std::size_t>& idx, int depth) {
        double g = 0.0;
        double h = 0.0;
        for (std::size_t i : idx) {
            g += grad[i];
            h += hess[i];
        }

        const int node_id = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();

        SplitChoice split;
        if (depth < params.max_depth) split = best_split(idx);
        if (split.feature < 0 || split.gain <= 0.0) {
            tree.nodes[static_cast<std::size_t>(node_id)].leaf = leaf_weight(g, h);
            return node_id;
        }

        std::vector<std::size_t> left_idx;
        std::vector<std::size_t> right_idx;
        left_idx.reserve(idx.size());
        right_idx.reserve(idx.size());
        for (std::size_t i : idx) {
            const double v = data.examples[i].features[static_cast<std::size_t>(split.feature)];
            (v < split.threshold ? left_idx : right_idx).push_back(i);
        }

        gain_accum[static_cast<std::size_t>(split.feature)] += split.gain;
        const int left = build(left_idx, depth + 1);
        const int right = build(right_idx, depth + 1);
        auto& node = tree.nodes[static_cast<std::size_t>(node_id)];
        node.feature = split.feature;
        node.threshold = split.threshold;
        node.gain = split.gain;
        node.left = left;
        node.right = right;
        return node_id;
    }
};

} // namespace

double GbdtModel::predict_prob(const RelayFeatureVector& x) const {
    return sigmoid(margin(x));
}

std::array<double, RelayFeatureVector::kCount> GbdtModel::feature_importance() const {
    std::array<double, RelayFeatureVector::kCount> gain{};
    for (const auto& t : trees) {
        for (const auto& n : t.nodes) {
            if (n.feature >= 0) gain[static_cast<std::size_t>(n.feature)] += n.gain;
        }
    }
    return gain;
}

std::pair<GbdtModel, TrainReport> train_gbdt(const Dataset& train, const GbdtParams& params) {
    if (params.rounds < 1 || params.max_depth < 1 || params.learning_rate <= 0.0 ||
        params.learning_rate > 1.0 || params.l2_lambda < 0.0 || params.min_split_gain < 0.0 ||
        params.min_leaf_examples < 1) {
        throw Error("train_gbdt: invalid hyperparameters");
    }
    const std::size_t n = train.size();
    if (n == 0) throw Error("train_gbdt: empty training set");

    std::size_t positives = 0;
    for (const auto& e : train.examples) positives += static_cast<std::size_t>(e.label);
    if (positives == 0 || positives == n) {
        throw Error("train_gbdt: training set contains a single class");
    }

    GbdtModel model;
    model.learning_rate = params.learning_rate;
    const double p = static_cast<double>(positives) / static_cast<double>(n);
    model.base_score = std::log(p / (1.0 - p));

    std::vector<double> margin(n, model.base_score);
    std::vector<double> grad(n);
    std::vector<double> hess(n);
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), std::size_t{0});

    TrainReport report;
    report.train_count = n;
    for (int round = 0; round < params.rounds; ++round) {
        for (std::size_t i = 0; i < n; ++i) {
            const double s = sigmoid(margin[i]);
            grad[i] = s - static_cast<double>(train.examples[i].label);
            hess[i] = s * (1.0 - s);
        }
        TreeBuilder builder{train, params, grad, hess, report.feature_gain, {}};
        builder.build(all, 0);
        for (std::size_t i = 0; i < n; ++i) {
            margin[i] += params.learning_rate * builder.tree.leaf_value(train.examples[i].features);
        }
        model.trees.push_back(std::move(builder.tree));
    }

    std::vector<double> probs(n);
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        probs[i] = sigmoid(margin[i]);
        labels[i] = train.examples[i].label;
    }
    report.train_log_loss = log_loss(probs, labels);
    return {std::move(model), report};
}

double log_loss(const std::vector<double>& probs, const std::vector<int>& labels) {
    constexpr double eps = 1e-15;
    double sum = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        const double p = std::clamp(probs[i], eps, 1.0 - eps);
        sum += labels[i] ? -std::log(p) : -std::log(1.0 - p);
    }
    return probs.empty() ? 0.0 : sum / static_cast<double>(probs.size());
}

double auc_score(const std::vector<double>& scores, const std::vector<int>& labels) {
    const std::size_t n = scores.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    double rank_pos_sum = 0.0;
    std::size_t n_pos = 0;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && scores[order[j]] == scores[order[i]]) ++j;
        const double midrank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t k = i; k < j; ++k) {
            if (labels[order[k]]) {
                rank_pos_sum += midrank;
                ++n_pos;
            }
        }
        i = j;
    }
    const std::size_t n_neg = n - n_pos;
    if (n_pos == 0 || n_neg == 0) return 0.5;
    return (rank_pos_sum - static_cast<double>(n_pos) * (static_cast<double>(n_pos) + 1.0) / 2.0) /
           (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

void evaluate_model(const GbdtModel& model, const Dataset& test, TrainReport& report) {
    if (test.empty()) throw Error("evaluate_model: empty test set");
    std::vector<double> probs(test.size());
    std::vector<int> labels(test.size());
    report.tp = report.fp = report.tn = report.fn = 0;
    for (std::size_t i = 0; i < test.size(); ++i) {
        probs[i] = model.predict_prob(test.examples[i].features);
        labels[i] = test.examples[i].label;
        const bool predicted = probs[i] >= 0.5;
        if (predicted && labels[i]) ++report.tp;
        else if (predicted && !labels[i]) ++report.fp;
        else if (!predicted && !labels[i]) ++report.tn;
        else ++report.fn;
    }
    report.test_count = test.size();
    report.test_log_loss = log_loss(probs, labels);
    report.test_auc = auc_score(probs, labels);
    report.test_accuracy = static_cast<double>(report.tp + report.tn) / static_cast<double>(test.size());
}

} // namespace dtnlab

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "dtnlab/features.hpp"

namespace dtnlab {

struct TrainingExample {
    RelayFeatureVector features;
    int label = 0; // 0 or 1
};

struct Dataset {
    std::vector<TrainingExample> examples;

    std::size_t size() const { return examples.size(); }
    bool empty() const { return examples.empty(); }
};

struct GbdtParams {
    int rounds = 100;
    int max_depth = 3;
    double learning_rate = 0.1;
    double l2_lambda = 1.0;
    double min_split_gain = 0.0; // gamma, subtracted from every split gain
    int min_leaf_examples = 5;
};

/// Binary regression tree over the five relay features. Nodes are stored in
/// an index-linked array with the root at index 0.
struct GbdtTree {
    struct Node {
        int feature = -1; // -1 marks a leaf
        double threshold = 0.0;
        int left = -1;
        int right = -1;
        double leaf = 0.0;
        double gain = 0.0; // realized split gain, internal nodes only
    };
    std::vector<Node> nodes;

    /// Traverses to a leaf: go left iff feature value < threshold.
    double leaf_value(const RelayFeatureVector& x) const {
        int i = 0;
        while (nodes[static_cast<std::size_t>(i)].feature >= 0) {
            const Node& n = nodes[static_cast<std::size_t>(i)];
            i = x[static_cast<std::size_t>(n.feature)] < n.threshold ? n.left : n.right;
        }
        return nodes[static_cast<std::size_t>(i)].leaf;
    }
};

/// Trained forwarding classifier: a logistic-loss boosted tree ensemble.
struct GbdtModel {
    std::array<std::string, RelayFeatureVector::kCount> feature_names{
        "contact_frequency", "buffer_occupancy", "hop_count", "message_age", "ttl_remaining"};
    double base_score = 0.0; // log-odds of the training prior
    double learning_rate = 0.1;
    std::vector<GbdtTree> trees;

    double margin(const RelayFeatureVector& x) const {
        double m = base_score;
        for (const auto& t : trees) m += learning_rate * t.leaf_value(x);
        return m;
    }

    /// sigmoid(base_score + sum of scaled leaf values); always in (0,1).
    double predict_prob(const RelayFeatureVector& x) const;

    /// Total realized split gain per feature; features never split on map to 0.
    std::array<double, RelayFeatureVector::kCount> feature_importance() const;

    /// JSON round-trip with full floating-point precision. Loading validates
    /// the version and that feature names match the runtime order exactly.
    std::string to_json() const;
    static GbdtModel from_json(const std::string& text);
    void save(const std::string& path) const;
    static GbdtModel load(const std::string& path);
};

struct TrainReport {
    std::array<double, RelayFeatureVector::kCount> feature_gain{};
    double train_log_loss = 0.0;
    std::size_t train_count = 0;
    // test-side fields, filled by evaluate_model
    double test_log_loss = 0.0;
    double test_auc = 0.0;
    double test_accuracy = 0.0;
    std::size_t test_count = 0;
    std::uint64_t tp = 0, fp = 0, tn = 0, fn = 0;
};

/// Fits `params.rounds` trees to logistic-loss gradients with exact greedy
/// splits over midpoints of sorted unique feature values. Deterministic:
/// identical (dataset, params) produce an identical model.
/// Throws when the training set contains a single class.
std::pair<GbdtModel, TrainReport> train_gbdt(const Dataset& train, const GbdtParams& params);

/// Fills the test-side fields of `report`: log-loss, AUC (rank statistic
/// with midrank tie handling), accuracy and confusion counts at 0.5.
void evaluate_model(const GbdtModel& model, const Dataset& test, TrainReport& report);

/// Mean logistic loss of predicted probabilities against labels.
double log_loss(const std::vector<double>& probs, const std::vector<int>& labels);

/// AUC by rank statistic; ties get midranks. Returns 0.5 when one class is
/// absent (no ranking information).
double auc_score(const std::vector<double>& scores, const std::vector<int>& labels);

} // namespace dtnlab

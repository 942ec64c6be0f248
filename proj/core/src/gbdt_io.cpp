#include <fstream>
#include <sstream>

#include "json.hpp"

#include "dtnlab/error.hpp"
#include "dtnlab/gbdt.hpp"

namespace dtnlab {

namespace {
constexpr int kModelVersion = 1;
}

std::string GbdtModel::to_json() const {
    nlohmann::ordered_json j;
    j["version"] = kModelVersion;
    j["feature_names"] = feature_names;
    j["base_score"] = base_score;
    j["learning_rate"] = learning_rate;
    auto& trees_json = j["trees"] = nlohmann::ordered_json::array();
    for (const auto& tree : trees) {
        nlohmann::ordered_json tj;
        auto& nodes = tj["nodes"] = nlohmann::ordered_json::array();
        for (const auto& n : tree.nodes) {
            if (n.feature >= 0) {
                nodes.push_back({{"feature", n.feature},
                                 {"threshold", n.threshold},
                                 {"left", n.left},
                                 {"right", n.right}});
            } else {
                nodes.push_back({{"leaf", n.leaf}});
            }
        }
        trees_json.push_back(std::move(tj));
    }
    return j.dump(2) + "\n";
}

GbdtModel GbdtModel::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("model file: invalid JSON: ") + e.what());
    }

    try {
        const int version = j.at("version").get<int>();
        if (version != kModelVersion) {
            throw ParseError("model file: unsupported version " + std::to_string(version));
        }
        GbdtModel model;
        const auto names = j.at("feature_names").get<std::vector<std::string>>();
        if (names.size() != model.feature_names.size()) {
            throw ParseError("model file: expected " + std::to_string(model.feature_names.size()) +
                             " feature names");
        }
        for (std::size_t i = 0; i < names.size(); ++i) {
            // names are the binding between file and runtime; order must match
            if (names[i] != model.feature_names[i]) {
                throw ParseError("model file: feature name mismatch at index " + std::to_string(i) +
                                 " ('" + names[i] + "' vs '" + std::string(model.feature_names[i]) + "')");
            }
        }
        model.base_score = j.at("base_score").get<double>();
        model.learning_rate = j.at("learning_rate").get<double>();
        for (const auto& tj : j.at("trees")) {
            GbdtTree tree;
            for (const auto& nj : tj.at("nodes")) {
                GbdtTree::Node n;
                if (nj.contains("leaf")) {
                    n.leaf = nj.at("leaf").get<double>();
                } else {
                    n.feature = nj.at("feature").get<int>();
                    n.threshold = nj.at("threshold").get<double>();
                    n.left = nj.at("left").get<int>();
                    n.right = nj.at("right").get<int>();
                    if (n.feature < 0 || n.feature >= static_cast<int>(RelayFeatureVector::kCount)) {
                        throw ParseError("model file: feature index out of range");
                    }
                }
                tree.nodes.push_back(n);
            }
            if (tree.nodes.empty()) throw ParseError("model file: tree without nodes");
            for (const auto& n : tree.nodes) {
                if (n.feature >= 0) {
                    const auto count = static_cast<int>(tree.nodes.size());
                    if (n.left < 0 || n.left >= count || n.right < 0 || n.right >= count) {
                        throw ParseError("model file: child index out of range");
                    }
                }
            }
            model.trees.push_back(std::move(tree));
        }
        return model;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("model file: missing or mistyped field: ") + e.what());
    }
}

void GbdtModel::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open model file for writing: " + path);
    const std::string text = to_json();
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw Error("failed writing model file: " + path);
}

GbdtModel GbdtModel::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open model file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_json(ss.str());
}

} // namespace dtnlab

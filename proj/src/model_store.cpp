#include "hogboost/model_store.hpp"
#include "hogboost/errors.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace hogboost {

namespace {

using json = nlohmann::ordered_json;

json node_to_json(const Tree& tree, int index) {
    const TreeNode& node = tree.nodes[index];
    json j;
    if (node.is_leaf()) {
        j["type"] = "leaf";
        j["weight"] = node.weight;
        j["row_count"] = node.row_count;
    } else {
        j["type"] = "split";
        j["feature"] = node.feature;
        j["threshold"] = node.threshold;
        j["left"] = node_to_json(tree, node.left);
        j["right"] = node_to_json(tree, node.right);
    }
    return j;
}

json config_to_json(const BoostConfig& c) {
    json j;
    j["n_rounds"] = c.n_rounds;
    j["learning_rate"] = c.learning_rate;
    j["order"] = c.order;
    j["lambda"] = c.lambda;
    j["max_depth"] = c.max_depth;
    j["min_child_rows"] = c.min_child_rows;
    j["min_gain"] = c.min_gain;
    j["loss"] = to_string(c.loss);
    j["cubic_mode"] = to_string(c.cubic_mode);
    j["fourth_order_formula"] = to_string(c.fourth_order_formula);
    j["trust_alpha"] = c.trust_alpha;
    j["early_stop_rounds"] = c.early_stop_rounds ? json(*c.early_stop_rounds) : json(nullptr);
    j["seed"] = c.seed;
    j["base_score"] = c.base_score ? json(*c.base_score) : json(nullptr);
    return j;
}

const json& require(const json& j, const char* key, const char* where) {
    auto it = j.find(key);
    if (it == j.end())
        throw ModelFormatError(std::string("missing field '") + key + "' in " + where);
    return *it;
}

double finite_number(const json& j, const char* key, const char* where) {
    const json& v = require(j, key, where);
    if (!v.is_number())
        throw ModelFormatError(std::string("field '") + key + "' in " + where + " is not a number");
    const double x = v.get<double>();
    if (!std::isfinite(x))
        throw ModelFormatError(std::string("field '") + key + "' in " + where + " is not finite");
    return x;
}

// Rebuilds the flat node array in preorder; returns the new node's index.
int json_to_node(const json& j, Tree& tree, std::size_t feature_count, int depth) {
    if (!j.is_object()) throw ModelFormatError("tree node is not an object");
    const json& type = require(j, "type", "tree node");
    const int index = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    tree.depth = std::max(tree.depth, depth);

    if (type == "leaf") {
        TreeNode& node = tree.nodes[index];
        node.weight = finite_number(j, "weight", "leaf node");
        node.row_count = require(j, "row_count", "leaf node").get<std::int64_t>();
        tree.n_leaves += 1;
        return index;
    }
    if (type != "split")
        throw ModelFormatError("tree node type '" + type.get<std::string>() +
                               "' is neither 'split' nor 'leaf'");

    const std::int64_t feature = require(j, "feature", "split node").get<std::int64_t>();
    if (feature < 0 || static_cast<std::size_t>(feature) >= feature_count)
        throw ModelFormatError("split feature " + std::to_string(feature) +
                               " out of range for feature_count " + std::to_string(feature_count));
    const double threshold = finite_number(j, "threshold", "split node");
    const int left = json_to_node(require(j, "left", "split node"), tree, feature_count, depth + 1);
    const int right =
        json_to_node(require(j, "right", "split node"), tree, feature_count, depth + 1);

    TreeNode& node = tree.nodes[index];
    node.feature = static_cast<std::int32_t>(feature);
    node.threshold = threshold;
    node.left = left;
    node.right = right;
    return index;
}

BoostConfig config_from_json(const json& j) {
    BoostConfig c;
    c.n_rounds = require(j, "n_rounds", "config").get<int>();
    c.learning_rate = finite_number(j, "learning_rate", "config");
    c.order = require(j, "order", "config").get<int>();
    c.lambda = finite_number(j, "lambda", "config");
    c.max_depth = require(j, "max_depth", "config").get<int>();
    c.min_child_rows = require(j, "min_child_rows", "config").get<std::int64_t>();
    c.min_gain = finite_number(j, "min_gain", "config");
    c.loss = loss_kind_from_string(require(j, "loss", "config").get<std::string>());
    c.cubic_mode = cubic_mode_from_string(require(j, "cubic_mode", "config").get<std::string>());
    c.fourth_order_formula =
        fourth_order_formula_from_string(require(j, "fourth_order_formula", "config").get<std::string>());
    c.trust_alpha = finite_number(j, "trust_alpha", "config");
    const json& early = require(j, "early_stop_rounds", "config");
    if (!early.is_null()) c.early_stop_rounds = early.get<int>();
    c.seed = require(j, "seed", "config").get<std::uint64_t>();
    const json& base = require(j, "base_score", "config");
    if (!base.is_null()) c.base_score = base.get<double>();
    return c;
}

} // namespace

std::string serialize_model(const Model& model) {
    if (!std::isfinite(model.base_score)) throw ModelFormatError("base_score is not finite");
    json doc;
    doc["format_version"] = kModelFormatVersion;
    doc["base_score"] = model.base_score;
    doc["feature_count"] = model.feature_count;
    doc["config"] = config_to_json(model.config);
    json trees = json::array();
    for (const Tree& tree : model.trees) {
        if (tree.empty()) throw ModelFormatError("tree has no nodes");
        trees.push_back(node_to_json(tree, 0));
    }
    doc["trees"] = std::move(trees);
    return doc.dump(2) + "\n";
}

Model parse_model(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ModelFormatError(std::string("model document does not parse: ") + e.what());
    }
    try {
        if (!doc.is_object()) throw ModelFormatError("model document is not an object");
        const json& version = require(doc, "format_version", "document");
        if (!version.is_number_integer() || version.get<int>() != kModelFormatVersion)
            throw ModelFormatError("unsupported format_version " + version.dump() + ", expected " +
                                   std::to_string(kModelFormatVersion));
        Model model;
        model.base_score = finite_number(doc, "base_score", "document");
        model.feature_count = require(doc, "feature_count", "document").get<std::size_t>();
        model.config = config_from_json(require(doc, "config", "document"));
        const json& trees = require(doc, "trees", "document");
        if (!trees.is_array()) throw ModelFormatError("'trees' is not an array");
        for (const json& t : trees) {
            Tree tree;
            tree.n_features = model.feature_count;
            json_to_node(t, tree, model.feature_count, 0);
            model.trees.push_back(std::move(tree));
        }
        return model;
    } catch (const nlohmann::json::exception& e) {
        throw ModelFormatError(std::string("malformed model document: ") + e.what());
    }
}

void save_model(const Model& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path + "'");
    out << serialize_model(model);
    if (!out) throw DataError("I/O error writing '" + path + "'");
}

Model load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_model(buf.str());
}

} // namespace hogboost

#include "streamodt/baselines.hpp"

#include <stdexcept>

namespace streamodt {

NodewiseHoeffdingTree::NodewiseHoeffdingTree(std::size_t n_features, FastODTConfig cfg)
    : n_features_(n_features), cfg_(cfg), root_(std::make_unique<Node>()) {
    cfg_.validate();
    if (n_features_ == 0) throw ConfigError("NodewiseHoeffdingTree needs at least one feature");
}

void NodewiseHoeffdingTree::update(const FeatureVector& x, double y) {
    if (x.size() != n_features_)
        throw std::invalid_argument("NodewiseHoeffdingTree::update: feature vector length mismatch");

    Node* node = root_.get();
    int depth = 0;
    while (!node->is_leaf()) {
        const bool less = x[static_cast<std::size_t>(node->rule.feature_index)] < node->rule.threshold;
        node = less ? node->left.get() : node->right.get();
        ++depth;
    }

    node->count += 1;
    node->sum += y;
    if (depth >= cfg_.max_depth) return; // depth-capped leaves track nothing

    if (!node->stats)
        node->stats = std::make_unique<NodeStats>(n_features_, static_cast<std::size_t>(cfg_.max_bins));
    node->stats->update(x, y);

    if (node->stats->count() % static_cast<std::uint64_t>(cfg_.grace_period) == 0) {
        if (auto cand = should_split(*node->stats, cfg_.delta, cfg_.tie_tau)) {
            node->rule = SplitRule{cand->feature_index, cand->threshold};
            node->left = std::make_unique<Node>();
            node->right = std::make_unique<Node>();
            node->stats.reset(); // this node's trackers served their purpose
        }
    }
}

double NodewiseHoeffdingTree::predict(const FeatureVector& x) const {
    const Node* node = root_.get();
    while (!node->is_leaf()) {
        const bool less = x[static_cast<std::size_t>(node->rule.feature_index)] < node->rule.threshold;
        node = less ? node->left.get() : node->right.get();
    }
    return node->count ? node->sum / static_cast<double>(node->count) : 0.0;
}

void NodewiseHoeffdingTree::account(const Node& node, MemoryFootprint& fp) const {
    fp.node_count += 1;
    if (node.stats) fp.bin_count += node.stats->total_bins();
    if (!node.is_leaf()) {
        fp.split_count += 1;
        account(*node.left, fp);
        account(*node.right, fp);
    }
}

MemoryFootprint NodewiseHoeffdingTree::memory_footprint() const {
    MemoryFootprint fp;
    account(*root_, fp);
    return fp;
}

std::optional<SplitRule> NodewiseHoeffdingTree::root_rule() const {
    if (root_->is_leaf()) return std::nullopt;
    return root_->rule;
}

} // namespace streamodt

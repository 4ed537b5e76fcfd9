#include "streamodt/fastodt.hpp"

#include <stdexcept>

namespace streamodt {

void FastODTConfig::validate() const {
    if (max_depth < 1 || max_depth > 50)
        throw ConfigError("tree.max_depth must be in [1, 50]");
    if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("tree.delta must be in (0, 1)");
    if (tie_tau < 0.0) throw ConfigError("tree.tie_tau must be >= 0");
    if (grace_period < 1) throw ConfigError("tree.grace_period must be >= 1");
    if (max_bins < 2) throw ConfigError("tree.max_bins must be >= 2");
}

FastODT::FastODT(std::size_t n_features, FastODTConfig cfg)
    : n_features_(n_features), cfg_(cfg) {
    cfg_.validate();
    if (n_features_ == 0) throw ConfigError("FastODT needs at least one feature");
    nodes_.emplace(node_key(0, 0), TreeNode{}); // root always exists
}

std::pair<int, std::uint64_t> FastODT::route(const FeatureVector& x) const {
    const int k = static_cast<int>(splits_.size());
    if (k == 0) return {0, 0};

    std::uint64_t full = 0;
    for (int i = 0; i < k; ++i) {
        if (x[static_cast<std::size_t>(splits_[i].feature_index)] < splits_[i].threshold)
            full |= (1ULL << i);
    }
    if (nodes_.count(node_key(k, full))) return {k, full};

    // Unbalanced branch: fall back to the deepest existing ancestor, which is
    // the index prefix (mod 2^d) along the same bit path.
    int depth = 0;
    std::uint64_t idx = 0;
    for (int i = 0; i < k; ++i) {
        const std::uint64_t prefix = full & ((1ULL << (i + 1)) - 1);
        if (!nodes_.count(node_key(i + 1, prefix))) break;
        depth = i + 1;
        idx = prefix;
    }
    return {depth, idx};
}

double FastODT::predict(const FeatureVector& x) const {
    const auto [depth, idx] = route(x);
    const auto it = nodes_.find(node_key(depth, idx));
    return it == nodes_.end() ? 0.0 : it->second.mean();
}

void FastODT::update(const FeatureVector& x, double y) {
    if (x.size() != n_features_)
        throw std::invalid_argument("FastODT::update: feature vector length mismatch");

    if (frozen()) {
        if (!cfg_.leaf_updates_after_growth) return;
        const auto [depth, idx] = route(x);
        TreeNode& node = nodes_.at(node_key(depth, idx));
        node.value_count += 1;
        node.value_sum += y;
        return;
    }

    // Descend to the current frontier depth, expanding nodes that lost an
    // earlier split race: missing children are created in pairs on the way.
    const int k = static_cast<int>(splits_.size());
    std::uint64_t idx = 0;
    for (int i = 0; i < k; ++i) {
        const bool less = x[static_cast<std::size_t>(splits_[i].feature_index)] < splits_[i].threshold;
        const std::uint64_t child0 = idx;
        const std::uint64_t child1 = idx | (1ULL << i);
        if (!nodes_.count(node_key(i + 1, child0))) {
            nodes_.emplace(node_key(i + 1, child0), TreeNode{});
            nodes_.emplace(node_key(i + 1, child1), TreeNode{});
        }
        idx = less ? child1 : child0;
    }

    TreeNode& node = nodes_.at(node_key(k, idx));
    node.value_count += 1;
    node.value_sum += y;
    if (!node.stats) node.stats = std::make_unique<NodeStats>(n_features_, static_cast<std::size_t>(cfg_.max_bins));
    node.stats->update(x, y);

    if (node.stats->count() % static_cast<std::uint64_t>(cfg_.grace_period) == 0) {
        if (auto cand = should_split(*node.stats, cfg_.delta, cfg_.tie_tau))
            commit_split(*cand, idx);
    }
}

void FastODT::commit_split(const SplitCandidate& cand, std::uint64_t firing_index) {
    const int depth = static_cast<int>(splits_.size());
    splits_.push_back(SplitRule{cand.feature_index, cand.threshold});

    // The depth is decided; trackers of every competing frontier node are
    // useless now and are dropped wholesale.
    for (auto& [key, node] : nodes_) node.stats.reset();

    nodes_.emplace(node_key(depth + 1, firing_index), TreeNode{});
    nodes_.emplace(node_key(depth + 1, firing_index | (1ULL << depth)), TreeNode{});
}

MemoryFootprint FastODT::memory_footprint() const {
    MemoryFootprint fp;
    fp.node_count = nodes_.size();
    fp.split_count = splits_.size();
    for (const auto& [key, node] : nodes_)
        if (node.stats) fp.bin_count += node.stats->total_bins();
    return fp;
}

void FastODT::restore_split(SplitRule rule) {
    if (splits_.size() >= static_cast<std::size_t>(cfg_.max_depth))
        throw DataError("snapshot holds more splits than max_depth allows");
    if (rule.feature_index < 0 || rule.feature_index >= static_cast<int>(n_features_))
        throw DataError("snapshot split references an unknown feature");
    splits_.push_back(rule);
}

TreeNode& FastODT::restore_node(int depth, std::uint64_t index) {
    if (depth < 0 || depth > static_cast<int>(splits_.size()))
        throw DataError("snapshot node depth exceeds split count");
    if (depth > 0 && index >= (1ULL << depth)) throw DataError("snapshot node index out of range");
    if (depth == 0 && index != 0) throw DataError("snapshot root index must be 0");
    return nodes_[node_key(depth, index)];
}

} // namespace streamodt

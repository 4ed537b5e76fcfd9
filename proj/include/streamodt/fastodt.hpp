#pragma once
#include <cstdint>
#include <memory>
#include <unordered_map>
#include <utility>
#include <vector>

#include "streamodt/errors.hpp"
#include "streamodt/split_stats.hpp"
#include "streamodt/stream_core.hpp"

namespace streamodt {

// ---------------------------------------------------------------------------
// FastODT: an oblivious decision tree grown online. Every depth carries
// exactly one (feature, threshold) rule, so inference reduces to computing a
// comparison bit per depth and assembling a node index; no pointer traversal.
//
// Node indexing is LSB-first: the comparison bit at depth i contributes 2^i,
// a node at depth d has index in [0, 2^d), its children at depth d+1 are
// index (bit 0) and index + 2^d (bit 1), and its ancestor at depth a is
// index mod 2^a. Strict less-than takes the bit-1 branch; equality routes to
// bit 0.
//
// Frontier nodes carry NodeStats and compete for the next depth's rule: the
// first node whose Hoeffding gate fires commits the split, every tracker at
// that depth is discarded, and growth moves one level down. Nodes that lost
// the race expand lazily when next visited. Once max_depth rules exist the
// tree freezes and updates become no-ops (optionally leaf means may keep
// absorbing targets).
// ---------------------------------------------------------------------------

struct SplitRule {
    int feature_index = -1;
    double threshold = 0.0;
};

struct TreeNode {
    std::uint64_t value_count = 0;
    double value_sum = 0.0;
    std::unique_ptr<NodeStats> stats; // frontier nodes only

    TreeNode() = default;
    TreeNode(TreeNode&&) = default;
    TreeNode& operator=(TreeNode&&) = default;
    TreeNode(const TreeNode& other)
        : value_count(other.value_count),
          value_sum(other.value_sum),
          stats(other.stats ? std::make_unique<NodeStats>(*other.stats) : nullptr) {}
    TreeNode& operator=(const TreeNode& other) {
        if (this != &other) {
            value_count = other.value_count;
            value_sum = other.value_sum;
            stats = other.stats ? std::make_unique<NodeStats>(*other.stats) : nullptr;
        }
        return *this;
    }

    double mean() const {
        return value_count ? value_sum / static_cast<double>(value_count) : 0.0;
    }
};

struct MemoryFootprint {
    std::uint64_t node_count = 0;
    std::uint64_t bin_count = 0;
    std::uint64_t split_count = 0;
};

struct FastODTConfig {
    int max_depth = 6;
    double delta = 1e-4;
    double tie_tau = 0.05;
    int grace_period = 50;
    int max_bins = 64;
    bool leaf_updates_after_growth = false;

    void validate() const;
};

class FastODT {
public:
    FastODT(std::size_t n_features, FastODTConfig cfg = {});

    void update(const FeatureVector& x, double y);
    double predict(const FeatureVector& x) const;

    // Deepest existing node along x's bit path, as (depth, node_index).
    std::pair<int, std::uint64_t> route(const FeatureVector& x) const;

    bool is_fully_grown() const { return splits_.size() == static_cast<std::size_t>(cfg_.max_depth); }
    bool frozen() const { return is_fully_grown(); }

    const std::vector<SplitRule>& splits() const { return splits_; }
    std::size_t n_features() const { return n_features_; }
    const FastODTConfig& config() const { return cfg_; }

    MemoryFootprint memory_footprint() const;

    // ----- snapshot / inspection support -----
    static std::uint64_t node_key(int depth, std::uint64_t index) {
        return (static_cast<std::uint64_t>(depth) << 58) | index;
    }
    static int key_depth(std::uint64_t key) { return static_cast<int>(key >> 58); }
    static std::uint64_t key_index(std::uint64_t key) { return key & ((1ULL << 58) - 1); }

    const std::unordered_map<std::uint64_t, TreeNode>& raw_nodes() const { return nodes_; }

    // Appends an already-committed rule (no gating). Snapshot restore only.
    void restore_split(SplitRule rule);
    // Inserts or fetches a node wholesale. Snapshot restore only.
    TreeNode& restore_node(int depth, std::uint64_t index);

private:
    void commit_split(const SplitCandidate& cand, std::uint64_t firing_index);

    std::size_t n_features_;
    FastODTConfig cfg_;
    std::vector<SplitRule> splits_;
    std::unordered_map<std::uint64_t, TreeNode> nodes_;
};

} // namespace streamodt

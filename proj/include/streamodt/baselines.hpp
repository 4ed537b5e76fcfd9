#pragma once
#include <cstdint>
#include <memory>

#include "streamodt/fastodt.hpp"
#include "streamodt/split_stats.hpp"
#include "streamodt/stream_core.hpp"

namespace streamodt {

// Running mean over all targets seen.
class MeanPredictor {
public:
    void update(double y) {
        ++count_;
        sum_ += y;
    }
    double predict() const { return count_ ? sum_ / static_cast<double>(count_) : 0.0; }
    std::uint64_t count() const { return count_; }

private:
    std::uint64_t count_ = 0;
    double sum_ = 0.0;
};

// Conventional node-wise Hoeffding tree regressor: every node owns its rule
// and its trackers, no depth sharing. Shares the gate and histogram machinery
// with FastODT so the two differ only in the obliviousness constraint.
class NodewiseHoeffdingTree {
public:
    NodewiseHoeffdingTree(std::size_t n_features, FastODTConfig cfg = {});

    void update(const FeatureVector& x, double y);
    double predict(const FeatureVector& x) const;

    MemoryFootprint memory_footprint() const;
    const FastODTConfig& config() const { return cfg_; }

    // Rule committed at the root, if any.
    std::optional<SplitRule> root_rule() const;

private:
    struct Node {
        std::uint64_t count = 0;
        double sum = 0.0;
        SplitRule rule{-1, 0.0};
        std::unique_ptr<Node> left, right;
        std::unique_ptr<NodeStats> stats;

        bool is_leaf() const { return !left; }
    };

    void account(const Node& node, MemoryFootprint& fp) const;

    std::size_t n_features_;
    FastODTConfig cfg_;
    std::unique_ptr<Node> root_;
};

} // namespace streamodt

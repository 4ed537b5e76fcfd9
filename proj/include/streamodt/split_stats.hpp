#pragma once
#include <cstdint>
#include <optional>
#include <vector>

#include "streamodt/stream_core.hpp"

namespace streamodt {

// ---------------------------------------------------------------------------
// Adaptive per-feature histograms with target moments, the Hoeffding bound,
// and variance-reduction split scoring. Every tree learner in this library
// grows through this module.
// ---------------------------------------------------------------------------

struct HistogramBin {
    double centroid = 0.0;
    std::uint64_t count = 0;
    double target_sum = 0.0;
    double target_sum_sq = 0.0;
};

// Streaming histogram with a bounded bin budget. Inserting past the budget
// merges the two bins with the smallest centroid gap; counts and target
// moments are preserved exactly under merging.
class AdaptiveHistogram {
public:
    explicit AdaptiveHistogram(std::size_t max_bins);

    void insert(double value, double target);

    const std::vector<HistogramBin>& bins() const { return bins_; }
    std::size_t max_bins() const { return max_bins_; }
    std::uint64_t total_count() const { return total_count_; }

    // Snapshot support: replaces content wholesale. Bins must be sorted by
    // strictly increasing centroid.
    void restore(std::vector<HistogramBin> bins);

private:
    void merge_closest_pair();

    std::vector<HistogramBin> bins_; // sorted by centroid, strictly increasing
    std::size_t max_bins_;
    std::uint64_t total_count_ = 0;
};

struct SplitCandidate {
    int feature_index = -1;
    double threshold = 0.0;
    double gain = 0.0; // variance reduction, target-units^2
};

// Per-node trackers: one histogram per feature plus global target moments.
class NodeStats {
public:
    NodeStats(std::size_t n_features, std::size_t max_bins);

    void update(const FeatureVector& x, double y);

    std::uint64_t count() const { return n_; }
    std::size_t n_features() const { return per_feature_.size(); }
    const AdaptiveHistogram& feature_histogram(std::size_t f) const { return per_feature_[f]; }
    AdaptiveHistogram& feature_histogram(std::size_t f) { return per_feature_[f]; }

    double target_sum() const { return target_sum_; }
    double target_sum_sq() const { return target_sum_sq_; }
    double target_min() const { return target_min_; }
    double target_max() const { return target_max_; }
    double target_mean() const { return n_ ? target_sum_ / static_cast<double>(n_) : 0.0; }
    double target_variance() const;

    std::uint64_t total_bins() const;

    // Snapshot support.
    void restore_moments(std::uint64_t n, double sum, double sum_sq, double mn, double mx);

private:
    std::vector<AdaptiveHistogram> per_feature_;
    std::uint64_t n_ = 0;
    double target_sum_ = 0.0;
    double target_sum_sq_ = 0.0;
    double target_min_ = 0.0;
    double target_max_ = 0.0;
};

// epsilon = sqrt(R^2 ln(1/delta) / (2n)). Throws std::domain_error outside
// R >= 0, delta in (0,1), n >= 1.
double hoeffding_epsilon(double range, double delta, std::uint64_t n);

struct BestSplitPair {
    SplitCandidate best;
    // Best candidate of the runner-up feature. When no other feature offers a
    // boundary, `second` carries feature_index -1 and gain 0 (a no-split
    // competitor), so the gate compares the best split against not splitting.
    SplitCandidate second;
};

// Scores every adjacent-bin boundary of every feature by variance reduction
// and returns the strongest candidate together with the strongest candidate
// of any other feature. Ties break toward lower feature index, then lower
// threshold. Returns nullopt when no feature has two bins.
std::optional<BestSplitPair> compute_best_split(const NodeStats& stats);

// The gate decision given the two leading gains. Gains are normalized by the
// best gain so the Hoeffding range is 1; fires when the normalized margin
// exceeds epsilon or when epsilon has shrunk below the tie threshold.
bool hoeffding_gate(double best_gain, double second_gain, std::uint64_t n,
                    double delta, double tie_tau);

// Full gate: candidate scoring plus the Hoeffding decision. Returns the
// winning candidate or nullopt.
std::optional<SplitCandidate> should_split(const NodeStats& stats, double delta, double tie_tau);

} // namespace streamodt

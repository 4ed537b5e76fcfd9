#include "streamodt/split_stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace streamodt {

// ----------------------------- AdaptiveHistogram ---------------------------

AdaptiveHistogram::AdaptiveHistogram(std::size_t max_bins) : max_bins_(max_bins) {
    if (max_bins_ == 0) throw std::invalid_argument("AdaptiveHistogram: max_bins must be >= 1");
    bins_.reserve(max_bins_ + 1);
}

void AdaptiveHistogram::insert(double value, double target) {
    ++total_count_;
    auto it = std::lower_bound(bins_.begin(), bins_.end(), value,
                               [](const HistogramBin& b, double v) { return b.centroid < v; });
    if (it != bins_.end() && it->centroid == value) {
        it->count += 1;
        it->target_sum += target;
        it->target_sum_sq += target * target;
        return;
    }
    bins_.insert(it, HistogramBin{value, 1, target, target * target});
    if (bins_.size() > max_bins_) merge_closest_pair();
}

void AdaptiveHistogram::merge_closest_pair() {
    std::size_t best = 0;
    double best_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < bins_.size(); ++i) {
        double gap = bins_[i + 1].centroid - bins_[i].centroid;
        if (gap < best_gap) {
            best_gap = gap;
            best = i;
        }
    }
    HistogramBin& a = bins_[best];
    const HistogramBin& b = bins_[best + 1];
    const double total = static_cast<double>(a.count + b.count);
    a.centroid = (a.centroid * static_cast<double>(a.count) +
                  b.centroid * static_cast<double>(b.count)) / total;
    a.count += b.count;
    a.target_sum += b.target_sum;
    a.target_sum_sq += b.target_sum_sq;
    bins_.erase(bins_.begin() + static_cast<std::ptrdiff_t>(best) + 1);
}

void AdaptiveHistogram::restore(std::vector<HistogramBin> bins) {
    total_count_ = 0;
    for (const auto& b : bins) total_count_ += b.count;
    bins_ = std::move(bins);
}

// --------------------------------- NodeStats -------------------------------

NodeStats::NodeStats(std::size_t n_features, std::size_t max_bins) {
    per_feature_.reserve(n_features);
    for (std::size_t f = 0; f < n_features; ++f) per_feature_.emplace_back(max_bins);
}

void NodeStats::update(const FeatureVector& x, double y) {
    if (x.size() != per_feature_.size())
        throw std::invalid_argument("NodeStats: feature vector length mismatch");
    if (n_ == 0) {
        target_min_ = y;
        target_max_ = y;
    } else {
        target_min_ = std::min(target_min_, y);
        target_max_ = std::max(target_max_, y);
    }
    ++n_;
    target_sum_ += y;
    target_sum_sq_ += y * y;
    for (std::size_t f = 0; f < per_feature_.size(); ++f) per_feature_[f].insert(x[f], y);
}

double NodeStats::target_variance() const {
    if (n_ == 0) return 0.0;
    const double n = static_cast<double>(n_);
    const double mean = target_sum_ / n;
    return std::max(0.0, target_sum_sq_ / n - mean * mean);
}

std::uint64_t NodeStats::total_bins() const {
    std::uint64_t total = 0;
    for (const auto& h : per_feature_) total += h.bins().size();
    return total;
}

void NodeStats::restore_moments(std::uint64_t n, double sum, double sum_sq, double mn, double mx) {
    n_ = n;
    target_sum_ = sum;
    target_sum_sq_ = sum_sq;
    target_min_ = mn;
    target_max_ = mx;
}

// ------------------------------ Hoeffding bound ----------------------------

double hoeffding_epsilon(double range, double delta, std::uint64_t n) {
    if (range < 0.0) throw std::domain_error("hoeffding_epsilon: range must be >= 0");
    if (!(delta > 0.0 && delta < 1.0)) throw std::domain_error("hoeffding_epsilon: delta must be in (0,1)");
    if (n < 1) throw std::domain_error("hoeffding_epsilon: n must be >= 1");
    return std::sqrt(range * range * std::log(1.0 / delta) / (2.0 * static_cast<double>(n)));
}

// ------------------------------- Split scoring -----------------------------

namespace {

inline double moments_variance(double n, double sum, double sum_sq) {
    if (n <= 0.0) return 0.0;
    const double mean = sum / n;
    return std::max(0.0, sum_sq / n - mean * mean);
}

// True when a beats b under (gain desc, feature asc, threshold asc).
inline bool candidate_beats(const SplitCandidate& a, const SplitCandidate& b) {
    if (a.gain != b.gain) return a.gain > b.gain;
    if (a.feature_index != b.feature_index) return a.feature_index < b.feature_index;
    return a.threshold < b.threshold;
}

} // namespace

std::optional<BestSplitPair> compute_best_split(const NodeStats& stats) {
    if (stats.count() < 2) return std::nullopt;

    const double n_total = static_cast<double>(stats.count());
    const double var_total = stats.target_variance();

    bool any = false;
    SplitCandidate best;        // best over all features
    SplitCandidate second;      // best over all features except best.feature_index
    bool have_second = false;

    std::vector<SplitCandidate> per_feature_best(stats.n_features());

    for (std::size_t f = 0; f < stats.n_features(); ++f) {
        const auto& bins = stats.feature_histogram(f).bins();
        if (bins.size() < 2) continue;

        SplitCandidate feature_best;
        bool feature_any = false;

        double left_n = 0.0, left_sum = 0.0, left_sq = 0.0;
        for (std::size_t i = 0; i + 1 < bins.size(); ++i) {
            left_n += static_cast<double>(bins[i].count);
            left_sum += bins[i].target_sum;
            left_sq += bins[i].target_sum_sq;
            const double right_n = n_total - left_n;
            if (left_n <= 0.0 || right_n <= 0.0) continue;
            const double right_sum = stats.target_sum() - left_sum;
            const double right_sq = stats.target_sum_sq() - left_sq;

            const double gain = std::max(
                0.0, var_total - (left_n / n_total) * moments_variance(left_n, left_sum, left_sq) -
                         (right_n / n_total) * moments_variance(right_n, right_sum, right_sq));

            SplitCandidate cand{static_cast<int>(f),
                                0.5 * (bins[i].centroid + bins[i + 1].centroid), gain};
            if (!feature_any || candidate_beats(cand, feature_best)) {
                feature_best = cand;
                feature_any = true;
            }
        }
        if (!feature_any) continue;
        per_feature_best[f] = feature_best;

        if (!any || candidate_beats(feature_best, best)) {
            any = true;
            best = feature_best;
        }
    }
    if (!any) return std::nullopt;

    for (std::size_t f = 0; f < stats.n_features(); ++f) {
        if (static_cast<int>(f) == best.feature_index) continue;
        if (per_feature_best[f].feature_index < 0) continue;
        if (!have_second || candidate_beats(per_feature_best[f], second)) {
            second = per_feature_best[f];
            have_second = true;
        }
    }
    if (!have_second) second = SplitCandidate{-1, 0.0, 0.0};

    return BestSplitPair{best, second};
}

bool hoeffding_gate(double best_gain, double second_gain, std::uint64_t n,
                    double delta, double tie_tau) {
    if (n < 1) return false;
    if (!(best_gain > 0.0)) return false; // a zero-gain split never helps
    const double margin = 1.0 - second_gain / best_gain;
    const double eps = hoeffding_epsilon(1.0, delta, n);
    return margin > eps || eps < tie_tau;
}

std::optional<SplitCandidate> should_split(const NodeStats& stats, double delta, double tie_tau) {
    if (tie_tau < 0.0) throw std::domain_error("should_split: tie_tau must be >= 0");
    if (stats.count() < 2) return std::nullopt;
    auto pair = compute_best_split(stats);
    if (!pair) return std::nullopt;
    if (!hoeffding_gate(pair->best.gain, pair->second.gain, stats.count(), delta, tie_tau))
        return std::nullopt;
    return pair->best;
}

} // namespace streamodt

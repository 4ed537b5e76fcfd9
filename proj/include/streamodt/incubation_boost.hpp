#pragma once
#include <cstdint>
#include <optional>
#include <vector>

#include "streamodt/fastodt.hpp"
#include "streamodt/stream_core.hpp"

namespace streamodt {

// ---------------------------------------------------------------------------
// Incubation Boost: an elastic boosting chain of FastODTs. Candidate trees
// train on residuals in an incubator outside the chain; a candidate that
// reaches full depth hatches into the chain (while there is room). Each grown
// chain member tracks the error of the ensemble prefix ending at it, and the
// chain rolls back to the best prefix whenever a member stops improving it.
// The first tree is special: it joins the chain immediately and predicts
// while still growing, so the ensemble is never without an answer.
// ---------------------------------------------------------------------------

// EWMA of squared prefix error.
class TreeErrorTracker {
public:
    explicit TreeErrorTracker(double alpha) : alpha_(alpha) {}

    // ewma <- (1-alpha)*ewma + alpha*(y - y_hat_prefix)^2; returns the new value.
    double update(double y, double y_hat_prefix) {
        const double err = y - y_hat_prefix;
        ewma_ = (1.0 - alpha_) * ewma_ + alpha_ * err * err;
        ++updates_;
        return ewma_;
    }

    double value() const { return ewma_; }
    double alpha() const { return alpha_; }
    std::uint64_t updates() const { return updates_; }

    void restore(double ewma, std::uint64_t updates) {
        ewma_ = ewma;
        updates_ = updates;
    }

private:
    double ewma_ = 0.0;
    double alpha_;
    std::uint64_t updates_ = 0;
};

struct IncubationConfig {
    double learning_rate = 0.3; // eta, applied to every member including the first
    int max_trees = 10;         // L
    double tracker_alpha = 0.01;
    int prune_grace = 200; // fresh hatchlings cannot trigger rollback this long
    FastODTConfig tree;    // shared by chain members and incubator

    void validate() const;
};

class IncubationEnsemble {
public:
    IncubationEnsemble(std::size_t n_features, IncubationConfig cfg = {});

    void update(const FeatureVector& x, double y);

    // Sum of learning_rate * T_i(x) over the chain; the incubator never
    // contributes. Empty chain gives 0.
    double predict(const FeatureVector& x) const;

    std::size_t chain_size() const { return chain_.size(); }
    bool has_incubator() const { return incubator_.has_value(); }
    const FastODT& chain_tree(std::size_t i) const { return chain_[i].tree; }
    const TreeErrorTracker& chain_tracker(std::size_t i) const { return chain_[i].tracker; }
    const FastODT* incubator() const { return incubator_ ? &*incubator_ : nullptr; }
    std::size_t n_features() const { return n_features_; }
    const IncubationConfig& config() const { return cfg_; }

    MemoryFootprint memory_footprint() const;

    // ----- snapshot support -----
    void restore_chain_member(FastODT tree, TreeErrorTracker tracker);
    void restore_incubator(FastODT tree);

private:
    struct Member {
        FastODT tree;
        TreeErrorTracker tracker;
    };

    std::size_t n_features_;
    IncubationConfig cfg_;
    std::vector<Member> chain_;
    std::optional<FastODT> incubator_;
};

} // namespace streamodt

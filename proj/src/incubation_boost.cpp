#include "streamodt/incubation_boost.hpp"

#include <limits>

namespace streamodt {

void IncubationConfig::validate() const {
    if (!(learning_rate > 0.0 && learning_rate <= 1.0))
        throw ConfigError("boost.learning_rate must be in (0, 1]");
    if (max_trees < 1) throw ConfigError("boost.max_trees must be >= 1");
    if (!(tracker_alpha > 0.0 && tracker_alpha <= 1.0))
        throw ConfigError("boost.tracker_alpha must be in (0, 1]");
    if (prune_grace < 0) throw ConfigError("boost.prune_grace must be >= 0");
    tree.validate();
}

IncubationEnsemble::IncubationEnsemble(std::size_t n_features, IncubationConfig cfg)
    : n_features_(n_features), cfg_(cfg) {
    cfg_.validate();
    if (n_features_ == 0) throw ConfigError("IncubationEnsemble needs at least one feature");
}

void IncubationEnsemble::update(const FeatureVector& x, double y) {
    // The very first sample seeds the chain; this tree predicts while it is
    // still incubating so the ensemble always has an answer.
    if (chain_.empty())
        chain_.push_back(Member{FastODT(n_features_, cfg_.tree), TreeErrorTracker(cfg_.tracker_alpha)});

    const double eta = cfg_.learning_rate;
    double y_hat = 0.0;
    double residual = y;
    std::optional<std::size_t> best_prefix; // b
    double eps_min = std::numeric_limits<double>::infinity();
    std::vector<double> residual_after(chain_.size(), y);
    std::size_t scanned = 0;

    for (std::size_t i = 0; i < chain_.size(); ++i) {
        Member& member = chain_[i];
        y_hat += eta * member.tree.predict(x);
        residual = y - y_hat;
        residual_after[i] = residual;
        scanned = i + 1;

        if (member.tree.is_fully_grown()) {
            const double eps = member.tracker.update(y, y_hat);
            if (member.tracker.updates() <= static_cast<std::uint64_t>(cfg_.prune_grace)) {
                // Hatchlings in their grace window extend the surviving prefix
                // but neither set the bar nor break the scan.
                best_prefix = i;
                continue;
            }
            if (eps < eps_min) {
                best_prefix = i;
                eps_min = eps;
            } else {
                break; // prefix stopped improving; everything past b goes
            }
        } else {
            member.tree.update(x, residual); // incubating in-chain tree (index 0 only)
        }
    }

    if (best_prefix && *best_prefix + 1 < chain_.size()) // rollback removes a suffix only
        chain_.erase(chain_.begin() + static_cast<std::ptrdiff_t>(*best_prefix + 1), chain_.end());

    // Residual after the last surviving scanned tree feeds the incubator.
    const std::size_t last_surviving =
        best_prefix ? std::min(*best_prefix, scanned - 1) : scanned - 1;
    const double incubator_target = residual_after[last_surviving];

    if (!incubator_) incubator_.emplace(n_features_, cfg_.tree);
    incubator_->update(x, incubator_target);
    if (incubator_->is_fully_grown()) {
        if (chain_.size() < static_cast<std::size_t>(cfg_.max_trees))
            chain_.push_back(Member{std::move(*incubator_), TreeErrorTracker(cfg_.tracker_alpha)});
        incubator_.reset(); // hatched or discarded; a fresh slot opens either way
    }
}

double IncubationEnsemble::predict(const FeatureVector& x) const {
    double out = 0.0;
    for (const auto& member : chain_) out += cfg_.learning_rate * member.tree.predict(x);
    return out;
}

MemoryFootprint IncubationEnsemble::memory_footprint() const {
    MemoryFootprint fp;
    auto add = [&fp](const FastODT& tree) {
        const auto part = tree.memory_footprint();
        fp.node_count += part.node_count;
        fp.bin_count += part.bin_count;
        fp.split_count += part.split_count;
    };
    for (const auto& member : chain_) add(member.tree);
    if (incubator_) add(*incubator_);
    return fp;
}

void IncubationEnsemble::restore_chain_member(FastODT tree, TreeErrorTracker tracker) {
    if (chain_.size() >= static_cast<std::size_t>(cfg_.max_trees))
        throw DataError("snapshot chain exceeds max_trees");
    if (!chain_.empty() && !tree.is_fully_grown())
        throw DataError("snapshot chain holds an incubating tree beyond index 0");
    chain_.push_back(Member{std::move(tree), std::move(tracker)});
}

void IncubationEnsemble::restore_incubator(FastODT tree) {
    incubator_.emplace(std::move(tree));
}

} // namespace streamodt

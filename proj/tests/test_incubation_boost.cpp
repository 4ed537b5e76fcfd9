#include "doctest.h"

#include <cmath>

#include "streamodt/incubation_boost.hpp"
#include "support/test_streams.hpp"

using namespace streamodt;

namespace {

// Fully grown single-split tree whose every prediction is `value` (the split
// exists but no deep nodes do, so routing falls back to the root).
FastODT constant_grown_tree(double value, std::size_t p = 2) {
    FastODTConfig cfg;
    cfg.max_depth = 1;
    FastODT tree(p, cfg);
    TreeNode& root = tree.restore_node(0, 0);
    root.value_count = 1;
    root.value_sum = value;
    tree.restore_split({0, 0.5});
    return tree;
}

TreeErrorTracker seasoned_tracker(double ewma, double alpha = 0.01) {
    TreeErrorTracker t(alpha);
    t.restore(ewma, 1000); // well past any grace window
    return t;
}

} // namespace

TEST_CASE("error tracker follows the EWMA recurrence") {
    TreeErrorTracker t(0.1);
    CHECK(t.update(2.0, 0.0) == doctest::Approx(0.4)); // 0.1 * 2^2

    TreeErrorTracker decay(0.5);
    decay.update(3.0, 0.0);
    const double peak = decay.value();
    for (int i = 0; i < 20; ++i) decay.update(1.0, 1.0); // zero instantaneous error
    CHECK(decay.value() < peak * 1e-3);

    TreeErrorTracker memoryless(1.0);
    memoryless.update(5.0, 1.0);
    CHECK(memoryless.value() == doctest::Approx(16.0));
    memoryless.update(1.0, 0.5);
    CHECK(memoryless.value() == doctest::Approx(0.25));
}

TEST_CASE("first sample seeds an in-chain incubating tree that learns it") {
    IncubationConfig cfg;
    IncubationEnsemble e(2, cfg);
    e.update({0.1, 0.9}, 4.0);
    CHECK(e.chain_size() == 1);
    CHECK_FALSE(e.chain_tree(0).is_fully_grown());
    // the tree absorbed the raw target (its own prediction was still 0)
    const auto& root = e.chain_tree(0).raw_nodes().at(FastODT::node_key(0, 0));
    CHECK(root.value_count == 1);
    CHECK(root.value_sum == doctest::Approx(4.0));
}

TEST_CASE("prediction is the learning-rate-weighted chain sum") {
    IncubationConfig cfg;
    cfg.learning_rate = 0.1;
    cfg.tree.max_depth = 1;
    IncubationEnsemble e(2, cfg);
    e.restore_chain_member(constant_grown_tree(2.0), seasoned_tracker(0.1));
    e.restore_chain_member(constant_grown_tree(-0.5), seasoned_tracker(0.1));
    CHECK(e.predict({0.3, 0.3}) == doctest::Approx(0.15)); // 0.1 * (2.0 - 0.5)

    IncubationConfig identity;
    identity.learning_rate = 1.0;
    identity.tree.max_depth = 1;
    IncubationEnsemble single(2, identity);
    single.restore_chain_member(constant_grown_tree(3.25), seasoned_tracker(0.1));
    CHECK(single.predict({0.8, 0.8}) == doctest::Approx(3.25));

    IncubationEnsemble empty(2, cfg);
    CHECK(empty.predict({0.5, 0.5}) == 0.0);
}

TEST_CASE("rollback removes the suffix after the best prefix") {
    // prefix error trackers [1.0, 0.5, 0.9]: argmin is index 1, scan breaks at
    // index 2, so exactly the suffix {2} is removed
    IncubationConfig cfg;
    cfg.tree.max_depth = 1;
    cfg.learning_rate = 0.3;
    IncubationEnsemble e(2, cfg);
    e.restore_chain_member(constant_grown_tree(0.0), seasoned_tracker(1.0));
    e.restore_chain_member(constant_grown_tree(0.0), seasoned_tracker(0.5));
    e.restore_chain_member(constant_grown_tree(0.0), seasoned_tracker(0.9));

    e.update({0.4, 0.6}, 0.0); // zero target keeps tracker ordering intact
    CHECK(e.chain_size() == 2);
    CHECK(e.chain_tracker(0).value() == doctest::Approx(0.99 * 1.0));
    CHECK(e.chain_tracker(1).value() == doctest::Approx(0.99 * 0.5));
}

TEST_CASE("rollback never removes the first tree") {
    IncubationConfig cfg;
    cfg.tree.max_depth = 1;
    IncubationEnsemble e(2, cfg);
    e.restore_chain_member(constant_grown_tree(0.0), seasoned_tracker(5.0));
    e.restore_chain_member(constant_grown_tree(0.0), seasoned_tracker(1.0));
    for (int i = 0; i < 50; ++i) e.update({0.5, 0.5}, 0.0);
    CHECK(e.chain_size() >= 1);
}

TEST_CASE("a hatched tree is discarded when the chain is full") {
    IncubationConfig cfg;
    cfg.max_trees = 1;
    cfg.tree.max_depth = 1;
    cfg.tree.grace_period = 20;
    IncubationEnsemble e(2, cfg);
    e.restore_chain_member(constant_grown_tree(0.0), seasoned_tracker(0.01));

    auto stream = testsupport::separator_stream(5, 2000);
    int discards = 0;
    for (const auto& s : stream) {
        const bool had = e.has_incubator();
        e.update(s.features, s.target);
        if (had && !e.has_incubator()) ++discards; // a hatch happened just now
        CHECK(e.chain_size() == 1);
    }
    CHECK(discards >= 1);
}

TEST_CASE("chain growth obeys the size cap and grown-member invariant") {
    IncubationConfig cfg;
    cfg.max_trees = 4;
    cfg.tree.max_depth = 2;
    cfg.tree.grace_period = 20;
    IncubationEnsemble e(3, cfg);
    auto stream = testsupport::random_piecewise_stream(71, 6000, 3, 0.1);
    for (const auto& s : stream) {
        e.update(s.features, s.target);
        CHECK(e.chain_size() <= 4);
        for (std::size_t i = 1; i < e.chain_size(); ++i)
            CHECK(e.chain_tree(i).is_fully_grown());
        // availability: a finite answer from the very first update onward
        CHECK(std::isfinite(e.predict(s.features)));
    }
    CHECK(e.chain_size() >= 2); // the stream is separable enough to hatch trees
}

TEST_CASE("ensemble prediction equals recomputed weighted sum") {
    IncubationConfig cfg;
    cfg.tree.max_depth = 2;
    cfg.tree.grace_period = 25;
    IncubationEnsemble e(3, cfg);
    auto stream = testsupport::random_piecewise_stream(99, 3000, 3, 0.2);
    for (const auto& s : stream) e.update(s.features, s.target);
    for (const auto& s : stream) {
        double manual = 0.0;
        for (std::size_t i = 0; i < e.chain_size(); ++i)
            manual += cfg.learning_rate * e.chain_tree(i).predict(s.features);
        CHECK(e.predict(s.features) == doctest::Approx(manual).epsilon(1e-12));
    }
}

TEST_CASE("a degraded tail tree is pruned out on a stationary stream") {
    IncubationConfig cfg;
    cfg.tree.max_depth = 1;
    cfg.learning_rate = 0.5;
    IncubationEnsemble e(2, cfg);
    // healthy head: predicts the stream mean region; degraded tail: huge leaves
    e.restore_chain_member(constant_grown_tree(2.0), seasoned_tracker(1.0));
    e.restore_chain_member(constant_grown_tree(500.0), seasoned_tracker(1.0));

    Rng rng(12);
    int removed_at = -1;
    for (int t = 0; t < 1000; ++t) {
        e.update({rng.uniform01(), rng.uniform01()}, 1.0 + rng.gaussian(0.0, 0.1));
        if (e.chain_size() == 1) {
            removed_at = t;
            break;
        }
    }
    REQUIRE(removed_at >= 0);
    CHECK(removed_at < 1000);
}

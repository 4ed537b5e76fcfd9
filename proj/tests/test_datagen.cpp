#include "doctest.h"

#include <cmath>

#include "streamodt/datagen.hpp"
#include "streamodt/split_stats.hpp"

using namespace streamodt;

TEST_CASE("friedman function at hand-computed points") {
    // 10 sin(pi/4) + 0 + 5 + 2.5
    FeatureVector x = {0.25, 1.0, 0.5, 0.5, 0.5, 0.0, 0.0, 0.0, 0.0, 0.0};
    CHECK(friedman_function(x) == doctest::Approx(14.5710678).epsilon(1e-6));

    FeatureVector zeros(10, 0.0); // 20 * 0.25 = 5
    CHECK(friedman_function(zeros) == doctest::Approx(5.0));
}

TEST_CASE("only the first five features are informative") {
    FeatureVector x = {0.3, 0.7, 0.2, 0.9, 0.4, 0.5, 0.5, 0.5, 0.5, 0.5};
    const double base = friedman_function(x);
    for (std::size_t f = 5; f < 10; ++f) {
        FeatureVector perturbed = x;
        perturbed[f] = 0.987;
        CHECK(friedman_function(perturbed) == base);
    }
}

TEST_CASE("same seed gives bit-identical streams") {
    FriedmanConfig cfg;
    cfg.n = 500;
    cfg.seed = 77;
    auto a = FriedmanGenerator(cfg).generate();
    auto b = FriedmanGenerator(cfg).generate();
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].target == b[i].target);
        CHECK(a[i].features == b[i].features);
    }
}

TEST_CASE("noiseless sample mean approaches the analytic expectation") {
    // E[y] = 10 Cin(pi)/pi + 20/12 + 5 + 2.5 ~= 14.413, Monte-Carlo checked
    FriedmanConfig cfg;
    cfg.n = 100000;
    cfg.sigma = 0.0;
    cfg.seed = 5;
    double sum = 0.0;
    FriedmanGenerator gen(cfg);
    for (std::size_t i = 0; i < cfg.n; ++i) sum += gen.next().target;
    CHECK(sum / static_cast<double>(cfg.n) == doctest::Approx(14.41).epsilon(0.007));
}

TEST_CASE("noise features alone yield zero gain at every candidate") {
    FriedmanConfig cfg;
    cfg.n = 3000;
    cfg.sigma = 0.0;
    cfg.seed = 9;
    FriedmanGenerator gen(cfg);
    // regress y on x6..x10 only: every split candidate carries ~zero gain
    NodeStats stats(5, 32);
    for (std::size_t i = 0; i < cfg.n; ++i) {
        Sample s = gen.next();
        stats.update({s.features[5], s.features[6], s.features[7], s.features[8], s.features[9]},
                     s.target);
    }
    auto pair = compute_best_split(stats);
    REQUIRE(pair.has_value());
    CHECK(pair->best.gain < 0.02 * stats.target_variance());
}

TEST_CASE("drift permutes feature roles from drift_at onward") {
    FriedmanConfig cfg;
    cfg.n = 100;
    cfg.sigma = 0.0;
    cfg.seed = 123;
    cfg.drift_at = 50;
    cfg.drift_permutation = reverse_informative_permutation(10);

    FriedmanConfig plain = cfg;
    plain.drift_at.reset();
    plain.drift_permutation.clear();

    FriedmanGenerator with_drift(cfg);
    FriedmanGenerator without(plain);
    for (std::size_t i = 0; i < 100; ++i) {
        Sample d = with_drift.next();
        Sample u = without.next();
        REQUIRE(d.features == u.features); // same draws either way
        if (i < 50) {
            CHECK(d.target == u.target);
        } else {
            FeatureVector permuted(10);
            for (std::size_t j = 0; j < 10; ++j) permuted[j] = d.features[cfg.drift_permutation[j]];
            CHECK(d.target == doctest::Approx(friedman_function(permuted)));
        }
    }
}

TEST_CASE("stock permutations") {
    CHECK(reverse_informative_permutation(7) ==
          std::vector<std::size_t>{4, 3, 2, 1, 0, 5, 6});
    CHECK(swap_informative_permutation(11) ==
          std::vector<std::size_t>{5, 6, 7, 8, 9, 0, 1, 2, 3, 4, 10});
    CHECK_THROWS_AS(swap_informative_permutation(9), ConfigError);
}

TEST_CASE("config validation rejects bad setups") {
    FriedmanConfig cfg;
    cfg.p = 4;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);

    FriedmanConfig late;
    late.n = 100;
    late.drift_at = 100;
    late.drift_permutation = reverse_informative_permutation(10);
    CHECK_THROWS_AS(late.validate(), ConfigError);

    FriedmanConfig dup;
    dup.drift_at = 5;
    dup.drift_permutation.assign(10, 0); // not a permutation
    CHECK_THROWS_AS(dup.validate(), ConfigError);
}

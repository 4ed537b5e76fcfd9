#pragma once
#include <cstdint>
#include <optional>
#include <vector>

#include "streamodt/errors.hpp"
#include "streamodt/rng.hpp"
#include "streamodt/stream_core.hpp"

namespace streamodt {

// Friedman #1 synthetic regression stream, with an optional abrupt drift that
// permutes feature roles at a chosen step.
struct FriedmanConfig {
    std::size_t n = 10000;
    double sigma = 1.0;
    std::size_t p = 10; // >= 5
    std::uint64_t seed = 1;
    std::optional<std::size_t> drift_at;
    std::vector<std::size_t> drift_permutation; // size p, required when drift_at is set

    void validate() const;
};

// y = 10 sin(pi x1 x2) + 20 (x3 - 0.5)^2 + 10 x4 + 5 x5, zero-based indices.
double friedman_function(const FeatureVector& x);

// Reverses the five informative feature roles and fixes the rest:
// {4, 3, 2, 1, 0, 5, 6, ..., p-1}.
std::vector<std::size_t> reverse_informative_permutation(std::size_t p);

// Swaps the informative block onto the first five noise features:
// {5, 6, 7, 8, 9, 0, 1, 2, 3, 4, 10, ...}. The harshest role drift: every
// pre-drift split lands on a now-uninformative feature. Requires p >= 10.
std::vector<std::size_t> swap_informative_permutation(std::size_t p);

class FriedmanGenerator {
public:
    explicit FriedmanGenerator(FriedmanConfig cfg);

    Sample next();
    std::vector<Sample> generate(); // remaining samples up to cfg.n

    const FriedmanConfig& config() const { return cfg_; }
    std::size_t position() const { return t_; }

private:
    FriedmanConfig cfg_;
    Rng rng_;
    std::size_t t_ = 0;
};

} // namespace streamodt

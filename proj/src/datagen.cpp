#include "streamodt/datagen.hpp"

#include <algorithm>
#include <cmath>

namespace streamodt {

void FriedmanConfig::validate() const {
    if (p < 5) throw ConfigError("friedman.p must be >= 5");
    if (sigma < 0.0) throw ConfigError("friedman.sigma must be >= 0");
    if (drift_at) {
        if (*drift_at >= n) throw ConfigError("friedman.drift_at must be < n");
        if (drift_permutation.size() != p)
            throw ConfigError("friedman drift permutation must have length p");
        std::vector<bool> seen(p, false);
        for (std::size_t v : drift_permutation) {
            if (v >= p || seen[v]) throw ConfigError("friedman drift permutation is not a permutation");
            seen[v] = true;
        }
    }
}

double friedman_function(const FeatureVector& x) {
    constexpr double pi = 3.14159265358979323846;
    return 10.0 * std::sin(pi * x[0] * x[1]) + 20.0 * (x[2] - 0.5) * (x[2] - 0.5) +
           10.0 * x[3] + 5.0 * x[4];
}

std::vector<std::size_t> reverse_informative_permutation(std::size_t p) {
    std::vector<std::size_t> perm(p);
    for (std::size_t i = 0; i < p; ++i) perm[i] = i;
    std::reverse(perm.begin(), perm.begin() + 5); // {4,3,2,1,0,...}
    return perm;
}

std::vector<std::size_t> swap_informative_permutation(std::size_t p) {
    if (p < 10) throw ConfigError("informative/noise swap needs p >= 10");
    std::vector<std::size_t> perm(p);
    for (std::size_t i = 0; i < p; ++i) perm[i] = i;
    for (std::size_t i = 0; i < 5; ++i) std::swap(perm[i], perm[i + 5]);
    return perm;
}

FriedmanGenerator::FriedmanGenerator(FriedmanConfig cfg) : cfg_(cfg), rng_(cfg.seed) {
    cfg_.validate();
}

Sample FriedmanGenerator::next() {
    FeatureVector x(cfg_.p);
    for (auto& v : x) v = rng_.uniform01();
    const double noise = rng_.gaussian(0.0, 1.0) * cfg_.sigma;

    double y;
    if (cfg_.drift_at && t_ >= *cfg_.drift_at) {
        FeatureVector permuted(cfg_.p);
        for (std::size_t i = 0; i < cfg_.p; ++i) permuted[i] = x[cfg_.drift_permutation[i]];
        y = friedman_function(permuted) + noise;
    } else {
        y = friedman_function(x) + noise;
    }
    ++t_;
    return Sample{std::move(x), y, std::nullopt};
}

std::vector<Sample> FriedmanGenerator::generate() {
    std::vector<Sample> out;
    out.reserve(cfg_.n - t_);
    while (t_ < cfg_.n) out.push_back(next());
    return out;
}

} // namespace streamodt

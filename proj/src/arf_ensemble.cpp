#include "streamodt/arf_ensemble.hpp"

#include <cmath>

namespace streamodt {

// -------------------------------- Page-Hinkley ------------------------------

void PageHinkleyConfig::validate() const {
    if (lambda_factor <= 0.0) throw ConfigError("arf.ph_lambda_factor must be > 0");
    if (delta_factor < 0.0) throw ConfigError("arf.ph_delta_factor must be >= 0");
    if (!(warning_factor > 0.0 && warning_factor <= 1.0))
        throw ConfigError("arf.ph_warning_factor must be in (0, 1]");
    if (warmup < 2) throw ConfigError("arf.ph_warmup must be >= 2");
}

PageHinkley::PageHinkley(PageHinkleyConfig cfg) : cfg_(cfg) {
    cfg_.validate();
}

DriftSignal PageHinkley::add(double value) {
    if (!st_.calibrated) {
        // Welford pass over warm-up values to fix the error scale.
        st_.warm_n += 1;
        const double d = value - st_.warm_mean;
        st_.warm_mean += d / static_cast<double>(st_.warm_n);
        st_.warm_m2 += d * (value - st_.warm_mean);
        if (st_.warm_n >= static_cast<std::uint64_t>(cfg_.warmup)) {
            double sigma = std::sqrt(st_.warm_m2 / static_cast<double>(st_.warm_n - 1));
            if (sigma < 1e-12) sigma = 1e-12;
            st_.lambda = cfg_.lambda_factor * sigma;
            st_.delta = cfg_.delta_factor * sigma;
            st_.calibrated = true;
        }
        return DriftSignal::none;
    }

    st_.n += 1;
    st_.mean += (value - st_.mean) / static_cast<double>(st_.n);
    st_.cum += value - st_.mean - st_.delta;
    if (st_.cum < st_.cum_min) st_.cum_min = st_.cum;
    const double ph = st_.cum - st_.cum_min;

    if (ph > st_.lambda) return DriftSignal::drift;
    if (ph > cfg_.warning_factor * st_.lambda) return DriftSignal::warning;
    return DriftSignal::none;
}

void PageHinkley::reset() {
    st_ = State{};
}

// --------------------------------- ArfEnsemble ------------------------------

void ArfConfig::validate() const {
    if (n_members < 1) throw ConfigError("arf.members must be >= 1");
    if (poisson_lambda <= 0.0) throw ConfigError("arf.poisson_lambda must be > 0");
    page_hinkley.validate();
    tree.validate();
}

std::size_t ArfEnsemble::subspace_size(std::size_t p) {
    return static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(p))));
}

ArfEnsemble::ArfEnsemble(std::size_t n_features, ArfConfig cfg, std::uint64_t master_seed)
    : n_features_(n_features), cfg_(cfg) {
    cfg_.validate();
    if (n_features_ == 0) throw ConfigError("ArfEnsemble needs at least one feature");

    const std::size_t k = subspace_size(n_features_);
    std::uint64_t seed_state = master_seed;
    members_.reserve(static_cast<std::size_t>(cfg_.n_members));
    for (int i = 0; i < cfg_.n_members; ++i) {
        Rng rng(splitmix64(seed_state));
        auto mask = rng.sample_indices(n_features_, k);
        members_.push_back(Member{FastODT(mask.size(), cfg_.tree), std::move(mask), std::nullopt,
                                  {}, PageHinkley(cfg_.page_hinkley), std::move(rng),
                                  FeatureVector(k)});
    }
}

void ArfEnsemble::gather(const FeatureVector& x, const std::vector<std::size_t>& mask,
                         FeatureVector& out) const {
    out.resize(mask.size());
    for (std::size_t j = 0; j < mask.size(); ++j) out[j] = x[mask[j]];
}

void ArfEnsemble::update(const FeatureVector& x, double y) {
    for (auto& member : members_) {
        gather(x, member.mask, member.scratch);

        // prequential per-member error, measured before this sample trains it
        const double err = std::abs(y - member.tree.predict(member.scratch));

        const int k = member.rng.poisson(cfg_.poisson_lambda);
        for (int rep = 0; rep < k; ++rep) member.tree.update(member.scratch, y);
        if (member.background) {
            FeatureVector bg_scratch;
            gather(x, member.background_mask, bg_scratch);
            for (int rep = 0; rep < k; ++rep) member.background->update(bg_scratch, y);
        }

        if (cfg_.drift == DriftMethod::none) continue;
        const DriftSignal signal = member.detector.add(err);
        if (signal == DriftSignal::warning && !member.background) {
            member.background_mask = member.rng.sample_indices(n_features_, subspace_size(n_features_));
            member.background.emplace(member.background_mask.size(), cfg_.tree);
        } else if (signal == DriftSignal::drift) {
            if (member.background) {
                member.tree = std::move(*member.background);
                member.mask = std::move(member.background_mask);
                member.background.reset();
                member.background_mask.clear();
            } else {
                member.mask = member.rng.sample_indices(n_features_, subspace_size(n_features_));
                member.tree = FastODT(member.mask.size(), cfg_.tree);
            }
            member.scratch.resize(member.mask.size());
            member.detector.reset();
            ++replacements_;
        }
    }
}

double ArfEnsemble::predict(const FeatureVector& x) const {
    double sum = 0.0;
    FeatureVector scratch;
    for (const auto& member : members_) {
        gather(x, member.mask, scratch);
        sum += member.tree.predict(scratch);
    }
    return sum / static_cast<double>(members_.size());
}

MemoryFootprint ArfEnsemble::memory_footprint() const {
    MemoryFootprint fp;
    auto add = [&fp](const FastODT& tree) {
        const auto part = tree.memory_footprint();
        fp.node_count += part.node_count;
        fp.bin_count += part.bin_count;
        fp.split_count += part.split_count;
    };
    for (const auto& member : members_) {
        add(member.tree);
        if (member.background) add(*member.background);
    }
    return fp;
}

ArfEnsemble::MemberState ArfEnsemble::export_member(std::size_t i) const {
    const Member& m = members_[i];
    MemberState st{m.tree, m.mask, m.background, m.background_mask, m.detector.state(),
                   m.rng.save_state()};
    return st;
}

void ArfEnsemble::import_member(std::size_t i, MemberState state) {
    Member& m = members_[i];
    m.tree = std::move(state.tree);
    m.mask = std::move(state.mask);
    m.background = std::move(state.background);
    m.background_mask = std::move(state.background_mask);
    m.detector.restore(state.detector);
    m.rng.load_state(state.rng_state);
    m.scratch.resize(m.mask.size());
}

} // namespace streamodt

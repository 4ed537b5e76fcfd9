#pragma once
#include <cstdint>
#include <optional>
#include <vector>

#include "streamodt/fastodt.hpp"
#include "streamodt/rng.hpp"
#include "streamodt/stream_core.hpp"

namespace streamodt {

// ---------------------------------------------------------------------------
// Bagging ensemble of FastODTs in the adaptive-random-forest mold: Poisson
// online bootstrap per member, a per-member feature subspace of size
// ceil(sqrt(p)) fixed for the tree's lifetime, and per-member drift detection
// on absolute prediction error. A warning spawns a background tree on a fresh
// subspace; a confirmed drift promotes the background (or plants a fresh
// tree) and resets the detector. The member count never changes.
// ---------------------------------------------------------------------------

enum class DriftMethod { page_hinkley, none };

enum class DriftSignal { none, warning, drift };

struct PageHinkleyConfig {
    double lambda_factor = 50.0; // lambda_PH = lambda_factor * sigma of warm-up errors
    // The tolerance must outrun the statistic's own diffusion: with delta near
    // zero the reflected walk reaches lambda on stationary data. 0.1 * sigma
    // keeps excursions around 3 sigma * ln(n) while a one-sigma mean shift
    // still crosses lambda within ~55 samples.
    double delta_factor = 0.1;
    double warning_factor = 0.6; // warning once the statistic passes warning_factor * lambda_PH
    int warmup = 200;            // observations used to estimate sigma

    void validate() const;
};

// One-sided Page-Hinkley test for an increase in the monitored value. The
// thresholds self-calibrate against the warm-up error scale, and the detector
// re-enters warm-up after every confirmed drift.
class PageHinkley {
public:
    explicit PageHinkley(PageHinkleyConfig cfg = {});

    DriftSignal add(double value);
    void reset();

    bool calibrated() const { return st_.calibrated; }

    // snapshot support
    struct State {
        std::uint64_t warm_n = 0;
        double warm_mean = 0.0, warm_m2 = 0.0;
        bool calibrated = false;
        double lambda = 0.0, delta = 0.0;
        std::uint64_t n = 0;
        double mean = 0.0, cum = 0.0, cum_min = 0.0;
    };
    State state() const { return st_; }
    void restore(const State& st) { st_ = st; }
    const PageHinkleyConfig& config() const { return cfg_; }

private:
    PageHinkleyConfig cfg_;
    State st_;
};

struct ArfConfig {
    int n_members = 10;          // M
    double poisson_lambda = 6.0; // online bagging weight distribution
    DriftMethod drift = DriftMethod::page_hinkley;
    PageHinkleyConfig page_hinkley;
    FastODTConfig tree;

    void validate() const;
};

class ArfEnsemble {
public:
    ArfEnsemble(std::size_t n_features, ArfConfig cfg, std::uint64_t master_seed);

    void update(const FeatureVector& x, double y);
    double predict(const FeatureVector& x) const; // mean over members, backgrounds excluded

    std::size_t n_members() const { return members_.size(); }
    std::uint64_t replacement_count() const { return replacements_; }
    const std::vector<std::size_t>& member_mask(std::size_t i) const { return members_[i].mask; }
    bool member_has_background(std::size_t i) const { return members_[i].background.has_value(); }
    const FastODT& member_tree(std::size_t i) const { return members_[i].tree; }
    std::size_t n_features() const { return n_features_; }
    const ArfConfig& config() const { return cfg_; }

    MemoryFootprint memory_footprint() const;

    // ----- snapshot support -----
    struct MemberState {
        FastODT tree;
        std::vector<std::size_t> mask;
        std::optional<FastODT> background;
        std::vector<std::size_t> background_mask;
        PageHinkley::State detector;
        std::string rng_state;
    };
    MemberState export_member(std::size_t i) const;
    void import_member(std::size_t i, MemberState state);
    void restore_replacements(std::uint64_t n) { replacements_ = n; }

private:
    struct Member {
        FastODT tree;
        std::vector<std::size_t> mask;
        std::optional<FastODT> background;
        std::vector<std::size_t> background_mask;
        PageHinkley detector;
        Rng rng;
        FeatureVector scratch; // masked-feature buffer reused across updates
    };

    static std::size_t subspace_size(std::size_t p);
    void gather(const FeatureVector& x, const std::vector<std::size_t>& mask,
                FeatureVector& out) const;

    std::size_t n_features_;
    ArfConfig cfg_;
    std::vector<Member> members_;
    std::uint64_t replacements_ = 0;
};

} // namespace streamodt

#pragma once
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "streamodt/errors.hpp"

namespace streamodt {

// Feature layout is fixed per stream; every learner assumes a constant length.
using FeatureVector = std::vector<double>;

struct Sample {
    FeatureVector features;
    double target = 0.0;
    std::optional<std::int64_t> timestamp; // epoch seconds
};

inline bool all_finite(const FeatureVector& x) {
    for (double v : x)
        if (!std::isfinite(v)) return false;
    return true;
}

// Non-finite values are rejected, never imputed.
inline void validate_sample(const Sample& s) {
    if (!std::isfinite(s.target)) throw DataError("sample target is not finite");
    if (!all_finite(s.features)) throw DataError("sample features contain a non-finite value");
}

enum class TargetMode { residual, direct };

struct TrainingPair {
    FeatureVector features;
    double target = 0.0;
};

// One-step residual target transform. In residual mode the model learns
// r_t = y_t - y_{t-1} and forecasts are rebuilt as y_hat_t = y_{t-1} + r_hat_t.
// The first sample of a residual stream produces no training pair and no
// scorable prediction.
class ResidualTransform {
public:
    explicit ResidualTransform(TargetMode mode) : mode_(mode) {}

    TargetMode mode() const { return mode_; }
    bool has_previous() const { return previous_target_.has_value(); }

    // Absorbs one sample and emits the training pair for it, if any.
    std::optional<TrainingPair> push(const Sample& s) {
        if (mode_ == TargetMode::direct) {
            return TrainingPair{s.features, s.target};
        }
        std::optional<TrainingPair> out;
        if (previous_target_) {
            out = TrainingPair{s.features, s.target - *previous_target_};
        }
        previous_target_ = s.target;
        return out;
    }

    // y_hat = y_{t-1} + r_hat. Only meaningful in residual mode.
    double reconstruct(double r_hat) const {
        if (mode_ != TargetMode::residual)
            throw std::logic_error("reconstruct is only defined in residual mode");
        if (!previous_target_)
            throw std::logic_error("reconstruct called before any sample was pushed");
        return *previous_target_ + r_hat;
    }

private:
    TargetMode mode_;
    std::optional<double> previous_target_;
};

} // namespace streamodt

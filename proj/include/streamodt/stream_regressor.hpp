#pragma once
#include "streamodt/fastodt.hpp"
#include "streamodt/stream_core.hpp"

namespace streamodt {

// Uniform surface the harness drives. One instance, one sequential stream.
class StreamRegressor {
public:
    virtual ~StreamRegressor() = default;

    virtual double predict(const FeatureVector& x) const = 0;
    virtual void update(const FeatureVector& x, double y) = 0;
    virtual MemoryFootprint memory_footprint() const { return {}; }
};

} // namespace streamodt

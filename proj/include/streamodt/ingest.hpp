#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "streamodt/errors.hpp"
#include "streamodt/stream_core.hpp"

namespace streamodt {

// Dataset recipe: which columns to read, how to resample, and how to build
// the feature vector. Emitted features are ordered as
//   [feature_columns..., lag features (configured order)..., hour, day-of-week]
// with the calendar block present only when calendar_features is on.
struct DatasetSpec {
    std::string path;
    std::string name; // report label; defaults to path when empty

    std::string timestamp_column; // empty = no timestamps
    std::string target_column;
    std::vector<std::string> feature_columns; // raw columns used as features

    enum class Resample { none, hourly_mean, hourly_sum };
    Resample resample = Resample::none;

    std::vector<std::size_t> lags; // lagged-target features, e.g. {1, 2, 24}
    bool calendar_features = false;

    void validate() const;
    std::string label() const { return name.empty() ? path : name; }
};

// Epoch seconds from an integer or "YYYY-MM-DD HH:MM[:SS]" (T separator ok).
std::int64_t parse_timestamp(const std::string& text);

// Parses, optionally resamples to hourly buckets, featurizes, and emits
// samples in time order starting from the first index where every configured
// lag exists. Throws DataError with a row number on malformed input.
std::vector<Sample> ingest(const DatasetSpec& spec);

} // namespace streamodt

#pragma once
#include <string>
#include <utility>
#include <vector>

#include "streamodt/prequential.hpp"

namespace streamodt {

// Flat key = value config files. '#' starts a comment, blank lines are
// skipped, unknown keys are a ConfigError. Keys map 1:1 onto RunConfig; the
// full list is documented in the README.
RunConfig run_config_from_file(const std::string& path);

// Applies one key/value pair; shared by the file parser and CLI overrides.
void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value);

// Grid runs: every model crossed with every dataset. Dataset entries point at
// config files from which only the dataset.* keys are taken.
struct GridConfig {
    std::vector<ModelKind> models;
    std::vector<std::pair<std::string, std::string>> datasets; // (name, config path)
    RunConfig base;
};

GridConfig grid_config_from_file(const std::string& path);

// "1,2,24" or ranges "1-24"; used for dataset.lags.
std::vector<std::size_t> parse_lag_list(const std::string& text);

} // namespace streamodt

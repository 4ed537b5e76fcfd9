#include "streamodt/run_config_io.hpp"

#include <charconv>
#include <fstream>

namespace streamodt {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    std::size_t e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(trim(s.substr(start)));
            break;
        }
        out.push_back(trim(s.substr(start, pos - start)));
        start = pos + 1;
    }
    if (out.size() == 1 && out[0].empty()) out.clear();
    return out;
}

long long to_int(const std::string& key, const std::string& value) {
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        throw ConfigError(key + ": expected an integer, got '" + value + "'");
    return v;
}

double to_double(const std::string& key, const std::string& value) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        throw ConfigError(key + ": expected a number, got '" + value + "'");
    return v;
}

bool to_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "on") return true;
    if (value == "false" || value == "0" || value == "off") return false;
    throw ConfigError(key + ": expected true/false, got '" + value + "'");
}

} // namespace

std::vector<std::size_t> parse_lag_list(const std::string& text) {
    std::vector<std::size_t> lags;
    for (const auto& part : split(text, ',')) {
        const std::size_t dash = part.find('-');
        if (dash != std::string::npos && dash > 0) {
            const long long lo = to_int("dataset.lags", part.substr(0, dash));
            const long long hi = to_int("dataset.lags", part.substr(dash + 1));
            if (lo < 1 || hi < lo) throw ConfigError("dataset.lags: bad range '" + part + "'");
            for (long long l = lo; l <= hi; ++l) lags.push_back(static_cast<std::size_t>(l));
        } else {
            const long long l = to_int("dataset.lags", part);
            if (l < 1) throw ConfigError("dataset.lags entries must be positive");
            lags.push_back(static_cast<std::size_t>(l));
        }
    }
    return lags;
}

void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "model") cfg.model = model_kind_from_string(value);
    else if (key == "target_mode") {
        if (value == "residual") cfg.target_mode = TargetMode::residual;
        else if (value == "direct") cfg.target_mode = TargetMode::direct;
        else throw ConfigError("target_mode: expected residual|direct, got '" + value + "'");
    } else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(to_int(key, value));
    else if (key == "warmup") cfg.warmup = static_cast<std::uint64_t>(to_int(key, value));
    else if (key == "window_size") cfg.window_size = static_cast<std::size_t>(to_int(key, value));

    else if (key == "dataset.path") cfg.dataset.path = value;
    else if (key == "dataset.name") cfg.dataset.name = value;
    else if (key == "dataset.timestamp_column") cfg.dataset.timestamp_column = value;
    else if (key == "dataset.target_column") cfg.dataset.target_column = value;
    else if (key == "dataset.feature_columns") cfg.dataset.feature_columns = split(value, ',');
    else if (key == "dataset.resample") {
        if (value == "none") cfg.dataset.resample = DatasetSpec::Resample::none;
        else if (value == "hourly_mean") cfg.dataset.resample = DatasetSpec::Resample::hourly_mean;
        else if (value == "hourly_sum") cfg.dataset.resample = DatasetSpec::Resample::hourly_sum;
        else throw ConfigError("dataset.resample: expected none|hourly_mean|hourly_sum");
    } else if (key == "dataset.lags") cfg.dataset.lags = parse_lag_list(value);
    else if (key == "dataset.calendar_features") cfg.dataset.calendar_features = to_bool(key, value);

    else if (key == "tree.max_depth") cfg.tree.max_depth = static_cast<int>(to_int(key, value));
    else if (key == "tree.delta") cfg.tree.delta = to_double(key, value);
    else if (key == "tree.tie_tau") cfg.tree.tie_tau = to_double(key, value);
    else if (key == "tree.grace_period") cfg.tree.grace_period = static_cast<int>(to_int(key, value));
    else if (key == "tree.max_bins") cfg.tree.max_bins = static_cast<int>(to_int(key, value));
    else if (key == "tree.leaf_updates_after_growth")
        cfg.tree.leaf_updates_after_growth = to_bool(key, value);

    else if (key == "boost.learning_rate") cfg.boost.learning_rate = to_double(key, value);
    else if (key == "boost.max_trees") cfg.boost.max_trees = static_cast<int>(to_int(key, value));
    else if (key == "boost.tracker_alpha") cfg.boost.tracker_alpha = to_double(key, value);
    else if (key == "boost.prune_grace") cfg.boost.prune_grace = static_cast<int>(to_int(key, value));

    else if (key == "arf.members") cfg.arf.n_members = static_cast<int>(to_int(key, value));
    else if (key == "arf.poisson_lambda") cfg.arf.poisson_lambda = to_double(key, value);
    else if (key == "arf.drift") {
        if (value == "page_hinkley") cfg.arf.drift = DriftMethod::page_hinkley;
        else if (value == "none") cfg.arf.drift = DriftMethod::none;
        else throw ConfigError("arf.drift: expected page_hinkley|none");
    } else if (key == "arf.ph_lambda_factor")
        cfg.arf.page_hinkley.lambda_factor = to_double(key, value);
    else if (key == "arf.ph_delta_factor") cfg.arf.page_hinkley.delta_factor = to_double(key, value);
    else if (key == "arf.ph_warning_factor")
        cfg.arf.page_hinkley.warning_factor = to_double(key, value);
    else if (key == "arf.ph_warmup") cfg.arf.page_hinkley.warmup = static_cast<int>(to_int(key, value));

    else throw ConfigError("unknown config key '" + key + "'");
}

namespace {

// Parses a file, dispatching each key/value to `sink`. Returns false if the
// file could not be opened.
template <typename Sink>
void parse_config_file(const std::string& path, Sink&& sink) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t comment = line.find('#');
        if (comment != std::string::npos) line = line.substr(0, comment);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            sink(key, value);
        } catch (const ConfigError& e) {
            throw ConfigError(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
}

} // namespace

RunConfig run_config_from_file(const std::string& path) {
    RunConfig cfg;
    parse_config_file(path, [&cfg](const std::string& key, const std::string& value) {
        if (key.rfind("grid.", 0) == 0)
            throw ConfigError("grid.* keys belong to the grid subcommand");
        apply_config_entry(cfg, key, value);
    });
    return cfg;
}

GridConfig grid_config_from_file(const std::string& path) {
    GridConfig grid;
    parse_config_file(path, [&grid](const std::string& key, const std::string& value) {
        if (key == "grid.models") {
            for (const auto& name : split(value, ','))
                grid.models.push_back(model_kind_from_string(name));
        } else if (key == "grid.datasets") {
            for (const auto& entry : split(value, ',')) {
                const std::size_t eq = entry.find('=');
                if (eq == std::string::npos)
                    throw ConfigError("grid.datasets entries must be name=config-path");
                grid.datasets.emplace_back(trim(entry.substr(0, eq)), trim(entry.substr(eq + 1)));
            }
        } else {
            apply_config_entry(grid.base, key, value);
        }
    });
    if (grid.models.empty()) throw ConfigError(path + ": grid.models is required");
    if (grid.datasets.empty()) throw ConfigError(path + ": grid.datasets is required");
    return grid;
}

} // namespace streamodt

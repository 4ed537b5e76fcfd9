#include "doctest.h"

#include <cstdio>
#include <fstream>

#include "streamodt/run_config_io.hpp"

using namespace streamodt;

namespace {

struct TempFile {
    std::string path;
    TempFile(const std::string& content, const char* name) {
        path = std::string("/tmp/streamodt_cfg_") + name + ".conf";
        std::ofstream out(path);
        out << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("every config key lands in the right RunConfig field") {
    TempFile f(R"(# full sweep
model = incubation_boost
target_mode = residual
seed = 99
warmup = 250
window_size = 100

dataset.path = data.csv
dataset.name = mystream
dataset.timestamp_column = ts
dataset.target_column = kw
dataset.feature_columns = a, b
dataset.resample = hourly_sum
dataset.lags = 1,2,24
dataset.calendar_features = true

tree.max_depth = 9
tree.delta = 0.001
tree.tie_tau = 0.02
tree.grace_period = 75
tree.max_bins = 48
tree.leaf_updates_after_growth = true

boost.learning_rate = 0.25
boost.max_trees = 7
boost.tracker_alpha = 0.05
boost.prune_grace = 111

arf.members = 4
arf.poisson_lambda = 3.5
arf.drift = none
arf.ph_lambda_factor = 42
arf.ph_delta_factor = 0.2
arf.ph_warning_factor = 0.5
arf.ph_warmup = 77
)",
               "full");
    const RunConfig cfg = run_config_from_file(f.path);
    CHECK(cfg.model == ModelKind::incubation_boost);
    CHECK(cfg.target_mode == TargetMode::residual);
    CHECK(cfg.seed == 99);
    CHECK(cfg.warmup == 250);
    CHECK(cfg.window_size == 100);
    CHECK(cfg.dataset.path == "data.csv");
    CHECK(cfg.dataset.name == "mystream");
    CHECK(cfg.dataset.timestamp_column == "ts");
    CHECK(cfg.dataset.target_column == "kw");
    CHECK(cfg.dataset.feature_columns == std::vector<std::string>{"a", "b"});
    CHECK(cfg.dataset.resample == DatasetSpec::Resample::hourly_sum);
    CHECK(cfg.dataset.lags == std::vector<std::size_t>{1, 2, 24});
    CHECK(cfg.dataset.calendar_features);
    CHECK(cfg.tree.max_depth == 9);
    CHECK(cfg.tree.delta == doctest::Approx(0.001));
    CHECK(cfg.tree.tie_tau == doctest::Approx(0.02));
    CHECK(cfg.tree.grace_period == 75);
    CHECK(cfg.tree.max_bins == 48);
    CHECK(cfg.tree.leaf_updates_after_growth);
    CHECK(cfg.boost.learning_rate == doctest::Approx(0.25));
    CHECK(cfg.boost.max_trees == 7);
    CHECK(cfg.boost.tracker_alpha == doctest::Approx(0.05));
    CHECK(cfg.boost.prune_grace == 111);
    CHECK(cfg.arf.n_members == 4);
    CHECK(cfg.arf.poisson_lambda == doctest::Approx(3.5));
    CHECK(cfg.arf.drift == DriftMethod::none);
    CHECK(cfg.arf.page_hinkley.lambda_factor == doctest::Approx(42));
    CHECK(cfg.arf.page_hinkley.delta_factor == doctest::Approx(0.2));
    CHECK(cfg.arf.page_hinkley.warning_factor == doctest::Approx(0.5));
    CHECK(cfg.arf.page_hinkley.warmup == 77);
}

TEST_CASE("lag lists support ranges") {
    CHECK(parse_lag_list("1-4") == std::vector<std::size_t>{1, 2, 3, 4});
    CHECK(parse_lag_list("1,3,5-7,24") == std::vector<std::size_t>{1, 3, 5, 6, 7, 24});
    CHECK_THROWS_AS(parse_lag_list("5-2"), ConfigError);
    CHECK_THROWS_AS(parse_lag_list("0"), ConfigError);
    CHECK_THROWS_AS(parse_lag_list("abc"), ConfigError);
}

TEST_CASE("unknown keys and malformed lines carry the line number") {
    TempFile f("seed = 1\nnot_a_key = 2\n", "unknown");
    CHECK_THROWS_WITH_AS(run_config_from_file(f.path), doctest::Contains(":2:"), ConfigError);

    TempFile g("seed 1\n", "noequals");
    CHECK_THROWS_WITH_AS(run_config_from_file(g.path), doctest::Contains("key = value"),
                         ConfigError);
}

#ifdef STREAMODT_CONFIGS_DIR
TEST_CASE("shipped recipes parse and validate") {
    const std::string dir = STREAMODT_CONFIGS_DIR;

    const RunConfig friedman = run_config_from_file(dir + "/friedman.conf");
    CHECK(friedman.model == ModelKind::fastodt);
    CHECK(friedman.target_mode == TargetMode::direct);
    CHECK(friedman.dataset.feature_columns.size() == 10);
    CHECK_NOTHROW(friedman.validate());

    const RunConfig electricity = run_config_from_file(dir + "/electricity.conf");
    CHECK(electricity.target_mode == TargetMode::residual);
    CHECK(electricity.dataset.resample == DatasetSpec::Resample::hourly_mean);
    CHECK(electricity.dataset.lags.size() == 24);
    CHECK_NOTHROW(electricity.validate());

    const RunConfig air = run_config_from_file(dir + "/air_quality.conf");
    CHECK(air.dataset.calendar_features);
    CHECK_NOTHROW(air.validate());

    const GridConfig grid = grid_config_from_file(dir + "/grid_public.conf");
    CHECK(grid.models.size() == 5);
    CHECK(grid.datasets.size() == 2);
}
#endif

TEST_CASE("grid configs collect models and dataset references") {
    TempFile f(R"(grid.models = mean, fastodt
grid.datasets = friedman=f.conf, electricity=e.conf
tree.max_depth = 3
)",
               "grid");
    const GridConfig grid = grid_config_from_file(f.path);
    REQUIRE(grid.models.size() == 2);
    CHECK(grid.models[1] == ModelKind::fastodt);
    REQUIRE(grid.datasets.size() == 2);
    CHECK(grid.datasets[0].first == "friedman");
    CHECK(grid.datasets[0].second == "f.conf");
    CHECK(grid.datasets[1].first == "electricity");
    CHECK(grid.base.tree.max_depth == 3);

    TempFile empty("tree.max_depth = 3\n", "gridempty");
    CHECK_THROWS_AS(grid_config_from_file(empty.path), ConfigError);
}

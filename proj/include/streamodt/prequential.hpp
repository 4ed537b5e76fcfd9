#pragma once
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"

#include "streamodt/arf_ensemble.hpp"
#include "streamodt/fastodt.hpp"
#include "streamodt/incubation_boost.hpp"
#include "streamodt/ingest.hpp"
#include "streamodt/stream_core.hpp"
#include "streamodt/stream_regressor.hpp"

namespace streamodt {

enum class ModelKind { mean, vfdt, fastodt, arf_fastodt, incubation_boost };

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& name); // throws ConfigError

struct RunConfig {
    ModelKind model = ModelKind::fastodt;
    DatasetSpec dataset;
    TargetMode target_mode = TargetMode::direct;
    std::uint64_t seed = 1;
    std::uint64_t warmup = 0;      // scored but reported separately
    std::size_t window_size = 500; // per-window error series granularity

    // tree is the single source of truth for tree hyperparameters; the
    // ensembles inherit it (their nested tree configs are overwritten).
    FastODTConfig tree;
    IncubationConfig boost;
    ArfConfig arf;

    void validate() const;
};

struct EvalReport {
    std::string model;
    std::string dataset;
    std::string target_mode;
    std::uint64_t seed = 0;

    // headline metrics over scored samples after the warm-up block
    std::uint64_t n_scored = 0;
    double mape_percent = 0.0;
    double rmse = 0.0;
    std::uint64_t mape_guard_skips = 0; // |y| <= 1e-8, excluded from MAPE only

    // warm-up block, scored separately, never silently merged
    std::uint64_t n_warmup = 0;
    double warmup_mape_percent = 0.0;
    double warmup_rmse = 0.0;
    std::uint64_t warmup_guard_skips = 0;

    double throughput_samples_per_sec = 0.0; // only nondeterministic field
    std::uint64_t peak_node_count = 0;
    std::uint64_t peak_bin_count = 0;

    std::size_t window_size = 500;
    std::vector<double> window_rmse; // RMSE per window over all scored samples
};

void to_json(nlohmann::json& j, const EvalReport& r);
void from_json(const nlohmann::json& j, EvalReport& r);

struct PrequentialOptions {
    TargetMode target_mode = TargetMode::direct;
    std::uint64_t warmup = 0;
    std::size_t window_size = 500;
    std::size_t memory_poll_interval = 1000;
};

// Test-then-train over the stream: each sample is scored with a model state
// that has never seen it, then used for training.
EvalReport run_prequential(StreamRegressor& model, const std::vector<Sample>& stream,
                           const PrequentialOptions& options);

// Ingests cfg.dataset, builds the model, runs, and labels the report.
EvalReport run_prequential(const RunConfig& cfg);

std::unique_ptr<StreamRegressor> make_model(const RunConfig& cfg, std::size_t n_features);

enum class ReportFormat { json, csv, table };
ReportFormat report_format_from_string(const std::string& name); // throws ConfigError

std::string emit_report(const EvalReport& report, ReportFormat format);
// Multi-run emission; the table mirrors a model-by-dataset grid with one
// block per metric.
std::string emit_reports(const std::vector<EvalReport>& reports, ReportFormat format);

} // namespace streamodt

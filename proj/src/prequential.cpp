#include "streamodt/prequential.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "streamodt/baselines.hpp"

namespace streamodt {

// --------------------------------- naming -----------------------------------

std::string to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::mean: return "mean";
        case ModelKind::vfdt: return "vfdt";
        case ModelKind::fastodt: return "fastodt";
        case ModelKind::arf_fastodt: return "arf_fastodt";
        case ModelKind::incubation_boost: return "incubation_boost";
    }
    return "unknown";
}

ModelKind model_kind_from_string(const std::string& name) {
    if (name == "mean") return ModelKind::mean;
    if (name == "vfdt") return ModelKind::vfdt;
    if (name == "fastodt") return ModelKind::fastodt;
    if (name == "arf_fastodt") return ModelKind::arf_fastodt;
    if (name == "incubation_boost") return ModelKind::incubation_boost;
    throw ConfigError("unknown model '" + name +
                      "' (expected mean|vfdt|fastodt|arf_fastodt|incubation_boost)");
}

ReportFormat report_format_from_string(const std::string& name) {
    if (name == "json") return ReportFormat::json;
    if (name == "csv") return ReportFormat::csv;
    if (name == "table") return ReportFormat::table;
    throw ConfigError("unknown report format '" + name + "' (expected json|csv|table)");
}

void RunConfig::validate() const {
    dataset.validate();
    tree.validate();
    boost.validate();
    arf.validate();
    if (window_size == 0) throw ConfigError("window_size must be >= 1");
}

// --------------------------------- adapters ---------------------------------

namespace {

struct MeanAdapter final : StreamRegressor {
    MeanPredictor inner;
    double predict(const FeatureVector&) const override { return inner.predict(); }
    void update(const FeatureVector&, double y) override { inner.update(y); }
};

struct VfdtAdapter final : StreamRegressor {
    NodewiseHoeffdingTree inner;
    VfdtAdapter(std::size_t p, const FastODTConfig& cfg) : inner(p, cfg) {}
    double predict(const FeatureVector& x) const override { return inner.predict(x); }
    void update(const FeatureVector& x, double y) override { inner.update(x, y); }
    MemoryFootprint memory_footprint() const override { return inner.memory_footprint(); }
};

struct FastOdtAdapter final : StreamRegressor {
    FastODT inner;
    FastOdtAdapter(std::size_t p, const FastODTConfig& cfg) : inner(p, cfg) {}
    double predict(const FeatureVector& x) const override { return inner.predict(x); }
    void update(const FeatureVector& x, double y) override { inner.update(x, y); }
    MemoryFootprint memory_footprint() const override { return inner.memory_footprint(); }
};

struct ArfAdapter final : StreamRegressor {
    ArfEnsemble inner;
    ArfAdapter(std::size_t p, const ArfConfig& cfg, std::uint64_t seed) : inner(p, cfg, seed) {}
    double predict(const FeatureVector& x) const override { return inner.predict(x); }
    void update(const FeatureVector& x, double y) override { inner.update(x, y); }
    MemoryFootprint memory_footprint() const override { return inner.memory_footprint(); }
};

struct BoostAdapter final : StreamRegressor {
    IncubationEnsemble inner;
    BoostAdapter(std::size_t p, const IncubationConfig& cfg) : inner(p, cfg) {}
    double predict(const FeatureVector& x) const override { return inner.predict(x); }
    void update(const FeatureVector& x, double y) override { inner.update(x, y); }
    MemoryFootprint memory_footprint() const override { return inner.memory_footprint(); }
};

} // namespace

std::unique_ptr<StreamRegressor> make_model(const RunConfig& cfg, std::size_t n_features) {
    switch (cfg.model) {
        case ModelKind::mean:
            return std::make_unique<MeanAdapter>();
        case ModelKind::vfdt:
            return std::make_unique<VfdtAdapter>(n_features, cfg.tree);
        case ModelKind::fastodt:
            return std::make_unique<FastOdtAdapter>(n_features, cfg.tree);
        case ModelKind::arf_fastodt: {
            ArfConfig arf = cfg.arf;
            arf.tree = cfg.tree;
            return std::make_unique<ArfAdapter>(n_features, arf, cfg.seed);
        }
        case ModelKind::incubation_boost: {
            IncubationConfig boost = cfg.boost;
            boost.tree = cfg.tree;
            return std::make_unique<BoostAdapter>(n_features, boost);
        }
    }
    throw ConfigError("unhandled model kind");
}

// ----------------------------------- loop -----------------------------------

namespace {

constexpr double kMapeGuard = 1e-8;

struct MetricAccumulator {
    std::uint64_t n = 0;
    double sq_sum = 0.0;
    double ape_sum = 0.0;
    std::uint64_t ape_n = 0;
    std::uint64_t guard_skips = 0;

    void add(double y, double y_hat) {
        const double err = y - y_hat;
        ++n;
        sq_sum += err * err;
        if (std::abs(y) > kMapeGuard) {
            ape_sum += std::abs(err / y);
            ++ape_n;
        } else {
            ++guard_skips;
        }
    }
    double rmse() const { return n ? std::sqrt(sq_sum / static_cast<double>(n)) : 0.0; }
    double mape_percent() const {
        return ape_n ? 100.0 * ape_sum / static_cast<double>(ape_n) : 0.0;
    }
};

} // namespace

EvalReport run_prequential(StreamRegressor& model, const std::vector<Sample>& stream,
                           const PrequentialOptions& options) {
    if (stream.empty()) throw DataError("empty stream: nothing to evaluate");
    if (options.window_size == 0) throw ConfigError("window_size must be >= 1");

    EvalReport report;
    report.window_size = options.window_size;
    report.target_mode = options.target_mode == TargetMode::residual ? "residual" : "direct";

    ResidualTransform transform(options.target_mode);
    MetricAccumulator main_acc, warmup_acc;
    double window_sq = 0.0;
    std::uint64_t window_n = 0;
    std::uint64_t scored = 0;

    auto poll_memory = [&] {
        const MemoryFootprint fp = model.memory_footprint();
        report.peak_node_count = std::max(report.peak_node_count, fp.node_count);
        report.peak_bin_count = std::max(report.peak_bin_count, fp.bin_count);
    };

    const auto started = std::chrono::steady_clock::now();
    for (const Sample& s : stream) {
        validate_sample(s);

        // The first residual-mode sample has no defined target; it only seeds
        // the transform. Scoring starts at t = 1.
        if (options.target_mode == TargetMode::residual && !transform.has_previous()) {
            transform.push(s);
            continue;
        }

        const double raw = model.predict(s.features);
        const double y_hat =
            options.target_mode == TargetMode::residual ? transform.reconstruct(raw) : raw;

        if (scored < options.warmup)
            warmup_acc.add(s.target, y_hat);
        else
            main_acc.add(s.target, y_hat);

        const double err = s.target - y_hat;
        window_sq += err * err;
        if (++window_n == options.window_size) {
            report.window_rmse.push_back(std::sqrt(window_sq / static_cast<double>(window_n)));
            window_sq = 0.0;
            window_n = 0;
        }

        const auto pair = transform.push(s);
        model.update(pair->features, pair->target);

        if (++scored % options.memory_poll_interval == 0) poll_memory();
    }
    const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - started);
    poll_memory();
    if (window_n > 0)
        report.window_rmse.push_back(std::sqrt(window_sq / static_cast<double>(window_n)));

    report.n_scored = main_acc.n;
    report.rmse = main_acc.rmse();
    report.mape_percent = main_acc.mape_percent();
    report.mape_guard_skips = main_acc.guard_skips;
    report.n_warmup = warmup_acc.n;
    report.warmup_rmse = warmup_acc.rmse();
    report.warmup_mape_percent = warmup_acc.mape_percent();
    report.warmup_guard_skips = warmup_acc.guard_skips;
    report.throughput_samples_per_sec =
        elapsed.count() > 0.0 ? static_cast<double>(scored) / elapsed.count() : 0.0;
    return report;
}

EvalReport run_prequential(const RunConfig& cfg) {
    cfg.validate();
    const auto stream = ingest(cfg.dataset);
    if (stream.empty())
        throw DataError(cfg.dataset.path + ": no samples after featurization");

    auto model = make_model(cfg, stream[0].features.size());
    PrequentialOptions options;
    options.target_mode = cfg.target_mode;
    options.warmup = cfg.warmup;
    options.window_size = cfg.window_size;

    EvalReport report = run_prequential(*model, stream, options);
    report.model = to_string(cfg.model);
    report.dataset = cfg.dataset.label();
    report.seed = cfg.seed;
    return report;
}

// --------------------------------- reports ----------------------------------

void to_json(nlohmann::json& j, const EvalReport& r) {
    j = nlohmann::json{{"schema_version", 1},
                       {"model", r.model},
                       {"dataset", r.dataset},
                       {"target_mode", r.target_mode},
                       {"seed", r.seed},
                       {"n_scored", r.n_scored},
                       {"mape_percent", r.mape_percent},
                       {"rmse", r.rmse},
                       {"mape_guard_skips", r.mape_guard_skips},
                       {"n_warmup", r.n_warmup},
                       {"warmup_mape_percent", r.warmup_mape_percent},
                       {"warmup_rmse", r.warmup_rmse},
                       {"warmup_guard_skips", r.warmup_guard_skips},
                       {"throughput_samples_per_sec", r.throughput_samples_per_sec},
                       {"peak_node_count", r.peak_node_count},
                       {"peak_bin_count", r.peak_bin_count},
                       {"window_size", r.window_size},
                       {"window_rmse", r.window_rmse}};
}

void from_json(const nlohmann::json& j, EvalReport& r) {
    if (j.at("schema_version").get<int>() != 1) throw DataError("unsupported report schema");
    j.at("model").get_to(r.model);
    j.at("dataset").get_to(r.dataset);
    j.at("target_mode").get_to(r.target_mode);
    j.at("seed").get_to(r.seed);
    j.at("n_scored").get_to(r.n_scored);
    j.at("mape_percent").get_to(r.mape_percent);
    j.at("rmse").get_to(r.rmse);
    j.at("mape_guard_skips").get_to(r.mape_guard_skips);
    j.at("n_warmup").get_to(r.n_warmup);
    j.at("warmup_mape_percent").get_to(r.warmup_mape_percent);
    j.at("warmup_rmse").get_to(r.warmup_rmse);
    j.at("warmup_guard_skips").get_to(r.warmup_guard_skips);
    j.at("throughput_samples_per_sec").get_to(r.throughput_samples_per_sec);
    j.at("peak_node_count").get_to(r.peak_node_count);
    j.at("peak_bin_count").get_to(r.peak_bin_count);
    j.at("window_size").get_to(r.window_size);
    j.at("window_rmse").get_to(r.window_rmse);
}

namespace {

const char* kCsvHeader =
    "model,dataset,target_mode,seed,n_scored,mape_percent,rmse,mape_guard_skips,"
    "n_warmup,warmup_mape_percent,warmup_rmse,warmup_guard_skips,"
    "throughput_samples_per_sec,peak_node_count,peak_bin_count";

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string csv_row(const EvalReport& r) {
    std::ostringstream os;
    os << r.model << ',' << r.dataset << ',' << r.target_mode << ',' << r.seed << ','
       << r.n_scored << ',' << fmt(r.mape_percent) << ',' << fmt(r.rmse) << ','
       << r.mape_guard_skips << ',' << r.n_warmup << ',' << fmt(r.warmup_mape_percent) << ','
       << fmt(r.warmup_rmse) << ',' << r.warmup_guard_skips << ','
       << fmt(r.throughput_samples_per_sec) << ',' << r.peak_node_count << ','
       << r.peak_bin_count;
    return os.str();
}

std::string metric_grid(const std::vector<EvalReport>& reports, const char* title,
                        double EvalReport::*metric) {
    std::vector<std::string> models, datasets;
    for (const auto& r : reports) {
        if (std::find(models.begin(), models.end(), r.model) == models.end())
            models.push_back(r.model);
        if (std::find(datasets.begin(), datasets.end(), r.dataset) == datasets.end())
            datasets.push_back(r.dataset);
    }

    std::ostringstream os;
    os << title << '\n';
    os << "  " << std::string(18, ' ');
    for (const auto& d : datasets) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%14.14s", d.c_str());
        os << buf;
    }
    os << '\n';
    for (const auto& m : models) {
        char name[32];
        std::snprintf(name, sizeof(name), "  %-18.18s", m.c_str());
        os << name;
        for (const auto& d : datasets) {
            const EvalReport* found = nullptr;
            for (const auto& r : reports)
                if (r.model == m && r.dataset == d) found = &r;
            char cell[32];
            if (found)
                std::snprintf(cell, sizeof(cell), "%14.3f", found->*metric);
            else
                std::snprintf(cell, sizeof(cell), "%14s", "-");
            os << cell;
        }
        os << '\n';
    }
    return os.str();
}

} // namespace

std::string emit_reports(const std::vector<EvalReport>& reports, ReportFormat format) {
    switch (format) {
        case ReportFormat::json: {
            nlohmann::json j = nlohmann::json::array();
            for (const auto& r : reports) j.push_back(r);
            return j.dump(2) + "\n";
        }
        case ReportFormat::csv: {
            std::ostringstream os;
            os << kCsvHeader << '\n';
            for (const auto& r : reports) os << csv_row(r) << '\n';
            return os.str();
        }
        case ReportFormat::table: {
            std::string out = metric_grid(reports, "MAPE (%)", &EvalReport::mape_percent);
            out += '\n';
            out += metric_grid(reports, "RMSE", &EvalReport::rmse);
            return out;
        }
    }
    throw ConfigError("unhandled report format");
}

std::string emit_report(const EvalReport& report, ReportFormat format) {
    if (format == ReportFormat::json) {
        nlohmann::json j = report;
        return j.dump(2) + "\n";
    }
    return emit_reports({report}, format);
}

} // namespace streamodt

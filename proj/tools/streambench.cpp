// streambench: generate synthetic streams, run prequential benchmarks, and
// sweep model-by-dataset grids. Exit codes: 0 ok, 1 config error, 2 data error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "streamodt/datagen.hpp"
#include "streamodt/prequential.hpp"
#include "streamodt/run_config_io.hpp"

namespace {

using namespace streamodt;

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write file: " + path);
    out << text;
}

void emit(const std::vector<EvalReport>& reports, const std::string& report_path,
          ReportFormat format) {
    const std::string text =
        reports.size() == 1 ? emit_report(reports[0], format) : emit_reports(reports, format);
    if (report_path.empty())
        std::cout << text;
    else
        write_text(report_path, text);
}

int cmd_generate(const std::string& out_path, std::size_t n, double sigma, std::size_t p,
                 std::uint64_t seed, std::optional<std::size_t> drift_at) {
    FriedmanConfig cfg;
    cfg.n = n;
    cfg.sigma = sigma;
    cfg.p = p;
    cfg.seed = seed;
    if (drift_at) {
        cfg.drift_at = drift_at;
        cfg.drift_permutation =
            p >= 10 ? swap_informative_permutation(p) : reverse_informative_permutation(p);
    }
    cfg.validate();

    std::ofstream out(out_path);
    if (!out) throw DataError("cannot write file: " + out_path);
    for (std::size_t f = 1; f <= p; ++f) out << "x" << f << ",";
    out << "y\n";

    FriedmanGenerator gen(cfg);
    char buf[32];
    for (std::size_t i = 0; i < n; ++i) {
        const Sample s = gen.next();
        for (const double v : s.features) {
            std::snprintf(buf, sizeof(buf), "%.17g", v);
            out << buf << ",";
        }
        std::snprintf(buf, sizeof(buf), "%.17g", s.target);
        out << buf << "\n";
    }
    std::cerr << "wrote " << n << " samples to " << out_path << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"streamodt benchmark harness"};
    app.require_subcommand(1);

    // ---- generate ----
    auto* generate = app.add_subcommand("generate", "write a Friedman #1 CSV stream");
    std::string gen_out;
    std::size_t gen_n = 10000, gen_p = 10;
    double gen_sigma = 1.0;
    std::uint64_t gen_seed = 1;
    std::optional<std::size_t> gen_drift;
    generate->add_option("--out", gen_out, "output CSV path")->required();
    generate->add_option("--n", gen_n, "sample count");
    generate->add_option("--sigma", gen_sigma, "noise standard deviation");
    generate->add_option("--p", gen_p, "feature count (>= 5)");
    generate->add_option("--seed", gen_seed, "generator seed");
    generate->add_option("--drift-at", gen_drift,
                         "permute informative feature roles from this step on");

    // ---- run ----
    auto* run = app.add_subcommand("run", "run one model over one dataset");
    std::string run_config, run_model, run_dataset, run_mode, run_report, run_format = "table";
    std::uint64_t run_seed = 0;
    std::uint64_t run_warmup = 0;
    run->add_option("--config", run_config, "run config file (key = value)");
    run->add_option("--model", run_model, "mean|vfdt|fastodt|arf_fastodt|incubation_boost");
    run->add_option("--dataset", run_dataset, "dataset config file (dataset.* keys)");
    run->add_option("--target-mode", run_mode, "residual|direct");
    auto* seed_opt = run->add_option("--seed", run_seed, "run seed");
    auto* warmup_opt = run->add_option("--warmup", run_warmup, "samples scored separately first");
    run->add_option("--report", run_report, "write the report here instead of stdout");
    run->add_option("--format", run_format, "json|csv|table (default table)");

    // ---- grid ----
    auto* grid = app.add_subcommand("grid", "cross models and datasets from one config");
    std::string grid_config, grid_report, grid_format = "table";
    grid->add_option("--config", grid_config, "grid config file")->required();
    grid->add_option("--report", grid_report, "write the combined report here");
    grid->add_option("--format", grid_format, "json|csv|table (default table)");

    try {
        app.parse(argc, argv);

        if (generate->parsed())
            return cmd_generate(gen_out, gen_n, gen_sigma, gen_p, gen_seed, gen_drift);

        if (run->parsed()) {
            RunConfig cfg;
            if (!run_config.empty()) cfg = run_config_from_file(run_config);
            if (!run_dataset.empty()) {
                const RunConfig ds = run_config_from_file(run_dataset);
                cfg.dataset = ds.dataset;
            }
            if (!run_model.empty()) apply_config_entry(cfg, "model", run_model);
            if (!run_mode.empty()) apply_config_entry(cfg, "target_mode", run_mode);
            if (seed_opt->count() > 0) cfg.seed = run_seed;
            if (warmup_opt->count() > 0) cfg.warmup = run_warmup;
            const ReportFormat format = report_format_from_string(run_format);

            emit({run_prequential(cfg)}, run_report, format);
            return 0;
        }

        // grid
        {
            const GridConfig gc = grid_config_from_file(grid_config);
            const ReportFormat format = report_format_from_string(grid_format);
            std::vector<EvalReport> reports;
            for (const auto& [name, dataset_config] : gc.datasets) {
                RunConfig cfg = gc.base;
                const RunConfig ds = run_config_from_file(dataset_config);
                cfg.dataset = ds.dataset;
                if (cfg.dataset.name.empty()) cfg.dataset.name = name;
                for (const ModelKind model : gc.models) {
                    cfg.model = model;
                    std::cerr << "running " << to_string(model) << " on " << name << "...\n";
                    reports.push_back(run_prequential(cfg));
                }
            }
            emit(reports, grid_report, format);
            return 0;
        }
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

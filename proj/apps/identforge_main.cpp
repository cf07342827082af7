#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "identforge/pipeline.hpp"

using namespace identforge;

int main(int argc, char** argv) {
    CLI::App app{"identforge: structural identifiability query acceleration"};
    app.require_subcommand(1);

    CLI::App* run = app.add_subcommand("run", "run the pipeline on a model");
    std::string model_path, mode = "default", weights, export_fmt;
    std::uint64_t prime = 11863279, seed = 0;
    std::size_t candidates = 3000;
    double prob = 0.5;
    bool report_entropy = false, bench = false;
    run->add_option("model", model_path, "ODE model file")->required();
    run->add_option("--prime", prime, "field characteristic (prime)");
    run->add_option("--seed", seed, "random seed");
    run->add_option("--mode", mode, "default|zerodim|zerodim-weights")
        ->check(CLI::IsMember({"default", "zerodim", "zerodim-weights"}));
    run->add_option("--weights", weights, "weight file for zerodim-weights");
    run->add_option("--candidates", candidates, "candidate cap K");
    run->add_option("--prob", prob, "correctness probability in (0,1)");
    run->add_option("--export", export_fmt, "maple|magma|generic")
        ->check(CLI::IsMember({"maple", "magma", "generic"}));
    run->add_flag("--report-entropy", report_entropy, "emit entropy CSV");
    run->add_flag("--bench", bench, "emit the benchmark table for this model");

    CLI11_PARSE(app, argc, argv);

    RunConfig cfg;
    cfg.model_path = model_path;
    cfg.prime = prime;
    cfg.seed = seed;
    cfg.candidates = candidates;
    cfg.prob = mpq_class(prob * 1000000.0, 1000000.0);
    cfg.prob.canonicalize();
    cfg.report_entropy = report_entropy;
    if (mode == "zerodim") cfg.mode = RunMode::ZeroDim;
    if (mode == "zerodim-weights") cfg.mode = RunMode::ZeroDimWeights;
    cfg.weights_file = weights;
    if (export_fmt == "maple") cfg.export_format = ExportFormat::Maple;
    if (export_fmt == "magma") cfg.export_format = ExportFormat::Magma;
    if (export_fmt == "generic") cfg.export_format = ExportFormat::Generic;
    if (const char* budget = std::getenv("IDENTFORGE_BUDGET_SECS"))
        cfg.gb.max_seconds = std::atof(budget);

    try {
        if (bench) {
            BenchTable table = bench_table({model_path},
                                           {RunMode::Default, RunMode::ZeroDim}, cfg);
            std::cout << table.to_text() << "\n--- csv ---\n" << table.to_csv();
            return 0;
        }
        PipelineResult res = run_pipeline(cfg);
        std::cerr << "system: " << res.default_polys << " polynomials, "
                  << res.default_vars << " variables, tr.deg " << res.trdeg << "\n";
        std::cerr << "selected basis:";
        for (const auto& n : res.best_names) std::cerr << " " << n;
        std::cerr << "\n";
        if (res.substitution) std::cerr << res.substitution->to_json();
        if (!res.export_text.empty()) {
            std::cout << res.export_text;
            return 0;
        }
        if (!res.entropy_report.empty()) std::cout << res.entropy_report;
        if (res.basis && !res.basis->complete) {
            std::cerr << "groebner budget exhausted (partial basis)\n";
            return 3;  // budget exhaustion, distinct from hard failure
        }
        if (res.report) std::cout << res.report->to_json();
        std::cerr << "groebner time: " << res.groebner_seconds
                  << " s, pipeline: " << res.pipeline_seconds << " s\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "identforge/basis.hpp"
#include "identforge/entropy.hpp"
#include "identforge/groebner.hpp"
#include "identforge/subst.hpp"

namespace identforge {

enum class RunMode { Default, ZeroDim, ZeroDimWeights };

struct RunConfig {
    std::string model_path;
    std::uint64_t prime = 11863279;
    std::uint64_t seed = 0;
    std::size_t candidates = 3000;          // K
    RunMode mode = RunMode::Default;
    std::string weights_file;               // required for ZeroDimWeights
    mpq_class prob = mpq_class(1, 2);
    std::optional<ExportFormat> export_format;
    bool report_entropy = false;
    GroebnerConfig gb;                      // budget caps
    bool parallel = true;
};

struct PipelineResult {
    PolySystem system;                       // the system handed to Groebner
    std::size_t default_polys = 0, default_vars = 0, default_table = 0;
    std::size_t trdeg = 0;
    BasisCandidate best;
    std::vector<std::string> best_names;     // resolved against the default table
    CandidatePool pool;
    std::vector<DegreeProfile> profiles;
    std::optional<SubstitutionRecord> substitution;
    std::optional<GroebnerBasis> basis;      // absent in export-only runs
    std::optional<IdentReport> report;
    std::string export_text;                 // non-empty for export runs
    std::string entropy_report;              // CSV when requested
    double groebner_seconds = 0.0;
    double pipeline_seconds = 0.0;
    double peak_rss_mb = 0.0;
};

// Parse -> generate_Et -> basis finding -> entropy selection -> substitution
// (zero-dim modes) -> Buchberger or export. Throws with a stage tag.
PipelineResult run_pipeline(const RunConfig& cfg);

struct BenchRow {
    std::string model;
    std::size_t polys = 0, vars = 0, trdeg = 0;
    // per requested mode: seconds (<0 marks N/A) and peak MB
    std::vector<double> seconds;
    std::vector<double> peak_mb;
    std::vector<bool> complete;
};

struct BenchTable {
    std::vector<std::string> modes;
    std::vector<BenchRow> rows;

    std::string to_text() const;
    std::string to_csv() const;
};

BenchTable bench_table(const std::vector<std::string>& models,
                       const std::vector<RunMode>& modes, RunConfig cfg);

std::string mode_name(RunMode m);

// Weight file: one "variable-name weight" pair per line; missing names
// default to weight 1.
MonomialOrder weighted_order_from_file(const PolySystem& sys,
                                       const std::string& path);

}  // namespace identforge

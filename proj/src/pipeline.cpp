#include "identforge/pipeline.hpp"

#include "identforge/elim.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>

#include <sys/resource.h>

namespace identforge {

namespace {

double peak_rss_mb_now() {
    struct rusage ru{};
    getrusage(RUSAGE_SELF, &ru);
    return static_cast<double>(ru.ru_maxrss) / 1024.0;  // KB -> MB on Linux
}

[[noreturn]] void stage_fail(const std::string& stage, const std::exception& e) {
    throw std::runtime_error("[" + stage + "] " + e.what());
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

std::string mode_name(RunMode m) {
    switch (m) {
        case RunMode::Default: return "default";
        case RunMode::ZeroDim: return "zerodim";
        case RunMode::ZeroDimWeights: return "zerodim-weights";
    }
    return "?";
}

MonomialOrder weighted_order_from_file(const PolySystem& sys,
                                       const std::string& path) {
    std::map<std::string, std::uint64_t> w;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open weight file " + path);
    std::string name;
    std::uint64_t val;
    while (in >> name >> val) w[name] = val;
    MonomialOrder ord;
    ord.kind = MonomialOrder::WeightedDegrevlex;
    for (const auto& v : sys.ring->vars) {
        auto it = w.find(v.name);
        ord.weights.push_back(it == w.end() ? 1 : it->second);
    }
    return ord;
}

PipelineResult run_pipeline(const RunConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    PipelineResult res;

    OdeModel model;
    try {
        model = parse_model(read_file(cfg.model_path));
        auto diags = validate(model);
        if (!diags.empty()) throw std::runtime_error(diags.front());
    } catch (const std::exception& e) {
        stage_fail("parse", e);
    }

    PolySystem sys;
    try {
        SpecializationConfig scfg;
        scfg.prime = cfg.prime;
        scfg.seed = cfg.seed;
        scfg.prob = cfg.prob;
        sys = generate_Et(model, scfg);
    } catch (const std::exception& e) {
        stage_fail("prolongation", e);
    }
    res.default_polys = sys.num_polys();
    res.default_vars = sys.num_vars();
    res.default_table = sys.ring->size();

    try {
        res.trdeg = transcendence_degree(sys);
        res.pool = enumerate_candidates(sys, cfg.candidates, cfg.seed, cfg.parallel);
        res.profiles = profile_pool(sys, res.pool, cfg.parallel);
        res.best = select_best(res.pool, res.profiles, sys);
        res.best_names = res.best.member_names(sys);
        if (cfg.report_entropy)
            res.entropy_report = entropy_csv(sys, res.pool, res.profiles);
    } catch (const std::exception& e) {
        stage_fail("basis", e);
    }

    try {
        if (cfg.mode != RunMode::Default) {
            auto [zsys, rec] = substitute_basis(sys, res.best, cfg.seed);
            res.substitution = rec;
            sys = std::move(zsys);
        }
    } catch (const std::exception& e) {
        stage_fail("substitution", e);
    }
    res.system = sys;

    MonomialOrder ord = degrevlex();
    try {
        if (cfg.mode == RunMode::ZeroDimWeights) {
            if (cfg.weights_file.empty())
                throw std::runtime_error("zerodim-weights mode requires --weights");
            ord = weighted_order_from_file(sys, cfg.weights_file);
        }
    } catch (const std::exception& e) {
        stage_fail("weights", e);
    }

    if (cfg.export_format) {
        res.export_text = export_system(sys, *cfg.export_format, ord);
    } else {
        try {
            // Triangular pre-elimination of derivative variables; the
            // eligible variables and their classification are untouched.
            Elimination elim = eliminate_linear(sys);
            PolySystem gsys = std::move(elim.reduced);
            if (cfg.mode == RunMode::ZeroDimWeights)
                ord = weighted_order_from_file(gsys, cfg.weights_file);
            res.system = gsys;
            auto g0 = std::chrono::steady_clock::now();
            GroebnerBasis gb = buchberger(gsys, ord, cfg.gb);
            res.groebner_seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - g0)
                    .count();
            res.basis = gb;
            if (gb.complete) {
                IdentReport rep = classify(gb, gsys);
                if (res.substitution)
                    for (const auto& [name, val] : res.substitution->values) {
                        (void)val;
                        rep.substituted.push_back(name);
                    }
                res.report = rep;
            }
        } catch (const std::exception& e) {
            stage_fail("groebner", e);
        }
    }

    res.pipeline_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    res.peak_rss_mb = peak_rss_mb_now();
    return res;
}

std::string BenchTable::to_text() const {
    std::ostringstream os;
    os << std::left << std::setw(26) << "model" << std::right << std::setw(7)
       << "polys" << std::setw(6) << "vars" << std::setw(8) << "trdeg";
    for (const auto& m : modes)
        os << std::setw(14) << (m + " (s)") << std::setw(12) << (m + " MB");
    os << std::setw(10) << "speedup" << "\n";
    for (const auto& r : rows) {
        os << std::left << std::setw(26) << r.model << std::right << std::setw(7)
           << r.polys << std::setw(6) << r.vars << std::setw(8) << r.trdeg;
        for (std::size_t i = 0; i < modes.size(); ++i) {
            if (i < r.seconds.size() && r.seconds[i] >= 0 && r.complete[i]) {
                os << std::setw(14) << std::fixed << std::setprecision(3)
                   << r.seconds[i] << std::setw(12) << std::setprecision(1)
                   << r.peak_mb[i];
            } else {
                os << std::setw(14) << "N/A" << std::setw(12) << "N/A";
            }
        }
        if (modes.size() >= 2 && r.seconds.size() >= 2 && r.complete[0] &&
            r.complete[1] && r.seconds[0] >= 0 && r.seconds[1] > 0) {
            os << std::setw(10) << std::setprecision(2)
               << (r.seconds[0] / r.seconds[1]);
        } else {
            os << std::setw(10) << "N/A";
        }
        os << "\n";
    }
    return os.str();
}

std::string BenchTable::to_csv() const {
    std::ostringstream os;
    os << "model,polys,vars,trdeg";
    for (const auto& m : modes) os << "," << m << "_seconds," << m << "_peak_mb";
    os << "\n";
    for (const auto& r : rows) {
        os << r.model << "," << r.polys << "," << r.vars << "," << r.trdeg;
        for (std::size_t i = 0; i < modes.size(); ++i) {
            if (i < r.seconds.size() && r.seconds[i] >= 0 && r.complete[i])
                os << "," << r.seconds[i] << "," << r.peak_mb[i];
            else
                os << ",N/A,N/A";
        }
        os << "\n";
    }
    return os.str();
}

BenchTable bench_table(const std::vector<std::string>& models,
                       const std::vector<RunMode>& modes, RunConfig cfg) {
    BenchTable table;
    for (const auto& m : modes) table.modes.push_back(mode_name(m));
    for (const auto& model : models) {
        BenchRow row;
        row.model = model.substr(model.find_last_of('/') + 1);
        for (const auto& mode : modes) {
            RunConfig rc = cfg;
            rc.model_path = model;
            rc.mode = mode;
            rc.export_format.reset();
            try {
                PipelineResult pr = run_pipeline(rc);
                row.polys = pr.default_polys;
                row.vars = pr.default_vars;
                row.trdeg = pr.trdeg;
                bool done = pr.basis && pr.basis->complete;
                row.seconds.push_back(done ? pr.groebner_seconds : -1.0);
                row.peak_mb.push_back(pr.peak_rss_mb);
                row.complete.push_back(done);
            } catch (const std::exception&) {
                row.seconds.push_back(-1.0);
                row.peak_mb.push_back(-1.0);
                row.complete.push_back(false);
            }
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace identforge

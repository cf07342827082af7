#include "identforge/prolong.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include "identforge/jets.hpp"
#include "identforge/linalg.hpp"

namespace identforge {

namespace {

std::uint64_t draw_in(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
    // inclusive range; modulo bias is irrelevant at these range sizes
    return lo + rng() % (hi - lo + 1);
}

// Variable layout of the generation ring.
struct GenRing {
    RingPtr ring;
    int n = 0, lambda = 0, s = 0, m = 0, depth = 0;  // depth = max jet level
    std::vector<int> next;  // total-derivative successor per var (-1: zero)

    int jet(int state, int level) const { return state * (depth + 1) + level; }
    int param(int i) const { return n * (depth + 1) + i; }
    int ujet(int input, int level) const {
        return n * (depth + 1) + lambda + input * (depth + 1) + level;
    }
    int yjet(int out, int level) const {
        return n * (depth + 1) + lambda + s * (depth + 1) + out * (depth + 1) + level;
    }
};

GenRing make_gen_ring(const OdeModel& model, int depth) {
    GenRing g;
    g.n = static_cast<int>(model.states.size());
    g.lambda = static_cast<int>(model.params.size());
    g.s = static_cast<int>(model.inputs.size());
    g.m = static_cast<int>(model.outputs.size());
    g.depth = depth;
    auto ring = std::make_shared<Ring>();
    for (int i = 0; i < g.n; ++i)
        for (int k = 0; k <= depth; ++k)
            ring->add({jet_name(model.states[i], k),
                       k == 0 ? VarKind::InitState : VarKind::Derivative, i, k});
    for (int i = 0; i < g.lambda; ++i)
        ring->add({model.params[i], VarKind::Parameter, i, 0});
    for (int i = 0; i < g.s; ++i)
        for (int k = 0; k <= depth; ++k)
            ring->add({jet_name(model.inputs[i], k), VarKind::InputDeriv, i, k});
    for (int j = 0; j < g.m; ++j)
        for (int k = 0; k <= depth; ++k)
            ring->add({jet_name(model.outputs[j].first, k), VarKind::OutputJet, j, k});
    g.ring = ring;
    g.next.assign(ring->size(), -1);
    for (int i = 0; i < g.n; ++i)
        for (int k = 0; k < depth; ++k) g.next[g.jet(i, k)] = g.jet(i, k + 1);
    for (int i = 0; i < g.s; ++i)
        for (int k = 0; k < depth; ++k) g.next[g.ujet(i, k)] = g.ujet(i, k + 1);
    for (int j = 0; j < g.m; ++j)
        for (int k = 0; k < depth; ++k) g.next[g.yjet(j, k)] = g.yjet(j, k + 1);
    return g;
}

ZPoly var_poly(const GenRing& g, int v) {
    return ZPoly::variable(g.ring, v, mpz_class(1));
}

// multiply by a single variable (exponent bump preserves canonical order)
ZPoly mul_var(const ZPoly& p, int v) {
    std::vector<ZPoly::Term> ts;
    ts.reserve(p.terms().size());
    for (const auto& t : p.terms()) {
        ZPoly::Term nt = t;
        nt.mono[static_cast<std::size_t>(v)]++;
        ts.push_back(std::move(nt));
    }
    return ZPoly::from_terms(p.ring(), std::move(ts));
}

// Formal total time derivative.
ZPoly total_derivative(const ZPoly& p, const GenRing& g) {
    ZPoly out = ZPoly::zero(p.ring());
    for (int v : p.support()) {
        if (g.next[static_cast<std::size_t>(v)] < 0) continue;
        out = out + mul_var(p.partial_derivative(v),
                            g.next[static_cast<std::size_t>(v)]);
    }
    return out;
}

// Expression -> (numerator, denominator) over the generation ring at level 0.
struct RatPoly {
    ZPoly num, den;
};

RatPoly rat_of_expr(const Expr& e, const GenRing& g, const OdeModel& model) {
    auto C = [&](mpz_class z) { return ZPoly::constant(g.ring, std::move(z)); };
    switch (e->kind) {
        case ExprNode::Const:
            return {C(e->value.get_num()), C(e->value.get_den())};
        case ExprNode::Symbol: {
            for (std::size_t i = 0; i < model.states.size(); ++i)
                if (model.states[i] == e->name)
                    return {var_poly(g, g.jet(static_cast<int>(i), 0)), C(1)};
            for (std::size_t i = 0; i < model.params.size(); ++i)
                if (model.params[i] == e->name)
                    return {var_poly(g, g.param(static_cast<int>(i))), C(1)};
            for (std::size_t i = 0; i < model.inputs.size(); ++i)
                if (model.inputs[i] == e->name)
                    return {var_poly(g, g.ujet(static_cast<int>(i), 0)), C(1)};
            throw std::logic_error("unresolved symbol " + e->name);
        }
        case ExprNode::Add: {
            RatPoly a = rat_of_expr(e->lhs, g, model), b = rat_of_expr(e->rhs, g, model);
            return {a.num * b.den + b.num * a.den, a.den * b.den};
        }
        case ExprNode::Sub: {
            RatPoly a = rat_of_expr(e->lhs, g, model), b = rat_of_expr(e->rhs, g, model);
            return {a.num * b.den - b.num * a.den, a.den * b.den};
        }
        case ExprNode::Mul: {
            RatPoly a = rat_of_expr(e->lhs, g, model), b = rat_of_expr(e->rhs, g, model);
            return {a.num * b.num, a.den * b.den};
        }
        case ExprNode::Div: {
            RatPoly a = rat_of_expr(e->lhs, g, model), b = rat_of_expr(e->rhs, g, model);
            if (b.num.is_zero()) throw std::domain_error("division by zero expression");
            return {a.num * b.den, a.den * b.num};
        }
        case ExprNode::Neg: {
            RatPoly a = rat_of_expr(e->lhs, g, model);
            return {-a.num, a.den};
        }
        case ExprNode::Pow: {
            RatPoly a = rat_of_expr(e->lhs, g, model);
            RatPoly r{C(1), C(1)};
            for (unsigned i = 0; i < e->exponent; ++i)
                r = {r.num * a.num, r.den * a.den};
            return r;
        }
    }
    throw std::logic_error("bad expr node");
}

JetPoint sample_point(const OdeModel& model, std::mt19937_64& rng,
                      std::uint64_t lo, std::uint64_t hi, std::size_t ulevels) {
    JetPoint pt;
    for (std::size_t i = 0; i < model.states.size(); ++i)
        pt.x0.push_back(draw_in(rng, lo, hi));
    for (std::size_t i = 0; i < model.params.size(); ++i)
        pt.mu.push_back(draw_in(rng, lo, hi));
    for (std::size_t i = 0; i < model.inputs.size(); ++i) {
        std::vector<std::uint64_t> js;
        for (std::size_t k = 0; k <= ulevels; ++k) js.push_back(draw_in(rng, lo, hi));
        pt.ujets.push_back(std::move(js));
    }
    return pt;
}

// "Stabilized sweep" rule: prolong all outputs level-synchronously; each
// tried row stays in the system; stop as soon as every output's row has
// failed the joint-rank contribution test at least once. Tested at two
// independent points; disagreement triggers resampling.
std::vector<int> determine_beta(const OdeModel& model, const SpecializationConfig& cfg,
                                std::mt19937_64& rng) {
    const std::size_t n = model.states.size(), lambda = model.params.size();
    const std::size_t m = model.outputs.size();
    const std::size_t Lmax = n + lambda + 2;
    for (int attempt = 0; attempt < cfg.max_retries; ++attempt) {
        JetPoint ptA = sample_point(model, rng, 1, cfg.prime - 1, Lmax);
        JetPoint ptB = sample_point(model, rng, 1, cfg.prime - 1, Lmax);
        try {
            JetEvaluator A(model, cfg.prime, Lmax, ptA);
            JetEvaluator B(model, cfg.prime, Lmax, ptB);
            RowSpace rsA(n + lambda, cfg.prime), rsB(n + lambda, cfg.prime);
            std::vector<int> beta(m, -1);
            std::vector<bool> failed(m, false);
            bool disagree = false;
            for (std::size_t k = 0; k <= Lmax && !disagree; ++k) {
                for (std::size_t j = 0; j < m; ++j) {
                    bool a = rsA.add(A.output_jet_gradient(j, k));
                    bool b = rsB.add(B.output_jet_gradient(j, k));
                    if (a != b) { disagree = true; break; }
                    beta[j] = static_cast<int>(k);
                    if (!a) failed[j] = true;
                    if (std::all_of(failed.begin(), failed.end(),
                                    [](bool f) { return f; }))
                        return beta;
                }
            }
            if (disagree) continue;
            throw std::runtime_error("prolongation did not stabilize");
        } catch (const SampleFailure&) {
            continue;  // pole hit; resample
        }
    }
    throw std::runtime_error(
        "generate_Et: rank sweep unstable after bounded retries");
}

mpz_class ceil_div(const mpz_class& a, const mpz_class& b) {
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (r != 0) q += 1;
    return q;
}

mpz_class theorem1_bound(const mpz_class& degree, const mpq_class& prob) {
    // D2 = ceil(6*deg/(1-p)), bound = ceil(4/3*D2)
    mpq_class one_minus = 1 - prob;
    mpz_class d2 = ceil_div(6 * degree * one_minus.get_den(), one_minus.get_num());
    return ceil_div(4 * d2, 3);
}

}  // namespace

std::size_t PolySystem::num_vars() const {
    std::vector<char> used(ring->size(), 0);
    for (const auto& p : polys)
        for (int v : p.support()) used[static_cast<std::size_t>(v)] = 1;
    std::size_t c = 0;
    for (std::size_t v = 0; v < ring->size(); ++v) {
        // Parameters are unknowns of the identifiability question even when
        // they drop out of every equation; initial conditions of states that
        // never reach an output cone are bookkeeping only.
        if (used[v] || ring->vars[v].kind == VarKind::Parameter) ++c;
    }
    return c;
}

std::vector<int> PolySystem::default_columns() const {
    std::vector<int> cols;
    for (std::size_t v = 0; v < ring->size(); ++v)
        if (ring->vars[v].kind == VarKind::Derivative) cols.push_back(static_cast<int>(v));
    for (std::size_t v = 0; v < ring->size(); ++v)
        if (ring->vars[v].kind == VarKind::Aux) cols.push_back(static_cast<int>(v));
    for (std::size_t v = 0; v < ring->size(); ++v)
        if (ring->vars[v].kind == VarKind::InitState) cols.push_back(static_cast<int>(v));
    for (std::size_t v = 0; v < ring->size(); ++v)
        if (ring->vars[v].kind == VarKind::Parameter) cols.push_back(static_cast<int>(v));
    return cols;
}

std::vector<int> PolySystem::eligible_vars() const {
    std::vector<int> out;
    for (std::size_t v = 0; v < ring->size(); ++v)
        if (ring->vars[v].kind == VarKind::InitState ||
            ring->vars[v].kind == VarKind::Parameter)
            out.push_back(static_cast<int>(v));
    return out;
}

PolySystem generate_Et(const OdeModel& model, const SpecializationConfig& cfg) {
    require_prime(cfg.prime);
    {
        auto diags = validate(model);
        if (!diags.empty())
            throw std::invalid_argument("invalid model: " + diags.front());
    }
    std::mt19937_64 rng(cfg.seed);
    std::vector<int> beta = determine_beta(model, cfg, rng);
    const int maxb = *std::max_element(beta.begin(), beta.end());
    const int depth = maxb + 2;
    const int n = static_cast<int>(model.states.size());
    const int m = static_cast<int>(model.outputs.size());

    GenRing g = make_gen_ring(model, depth);

    // Cleared base equations.
    std::vector<ZPoly> chain_base, y_base;
    std::vector<ZPoly> denominators;
    for (int i = 0; i < n; ++i) {
        RatPoly f = rat_of_expr(model.rhs.at(model.states[i]), g, model);
        chain_base.push_back(f.den * var_poly(g, g.jet(i, 1)) - f.num);
        denominators.push_back(f.den);
    }
    for (int j = 0; j < m; ++j) {
        RatPoly gj = rat_of_expr(model.outputs[j].second, g, model);
        y_base.push_back(gj.den * var_poly(g, g.yjet(j, 0)) - gj.num);
        denominators.push_back(gj.den);
    }

    // Output rows up to beta_j.
    std::vector<ZPoly> polys_z;
    for (int j = 0; j < m; ++j) {
        ZPoly row = y_base[j];
        polys_z.push_back(row);
        for (int k = 1; k <= beta[j]; ++k) {
            row = total_derivative(row, g);
            polys_z.push_back(row);
        }
    }

    // Chain equations by need-closure.
    std::vector<std::vector<ZPoly>> chains(n);
    std::vector<ZPoly> chain_last = chain_base;
    auto max_jet_level = [&](const std::vector<ZPoly>& ps, int state) {
        int lvl = 0;
        for (const auto& p : ps)
            for (int v : p.support()) {
                const Var& var = g.ring->vars[static_cast<std::size_t>(v)];
                if ((var.kind == VarKind::Derivative || var.kind == VarKind::InitState) &&
                    var.group == state)
                    lvl = std::max(lvl, var.level);
            }
        return lvl;
    };
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<ZPoly> all = polys_z;
        for (const auto& cs : chains) all.insert(all.end(), cs.begin(), cs.end());
        for (int i = 0; i < n; ++i) {
            int need = max_jet_level(all, i);  // need chain eqs 0..need-1
            while (static_cast<int>(chains[i].size()) < need) {
                ZPoly eq = chains[i].empty() ? chain_base[i]
                                             : total_derivative(chains[i].back(), g);
                chains[i].push_back(eq);
                changed = true;
            }
        }
    }
    for (int i = 0; i < n; ++i)
        polys_z.insert(polys_z.end(), chains[i].begin(), chains[i].end());

    // Saturation polynomial Q: product of distinct non-constant denominators.
    ZPoly Q = ZPoly::constant(g.ring, 1);
    std::vector<ZPoly> seen;
    for (const auto& d : denominators) {
        if (d.is_constant()) continue;
        bool dup = false;
        for (const auto& s : seen)
            if (s == d) { dup = true; break; }
        if (dup) continue;
        seen.push_back(d);
        Q = Q * d;
    }

    // Sampling bound for the witness (Theorem 1 range on the unspecialized
    // degrees; the folded system's own degree is exposed via system_degree).
    mpz_class degree_z = 1;
    for (const auto& p : polys_z) degree_z *= std::max(1L, p.total_degree());
    degree_z *= std::max(1L, (Q.total_degree() + 1));  // saturation row z*Q - 1
    mpz_class bound =
        cfg.sampling_bound != 0 ? cfg.sampling_bound : theorem1_bound(degree_z, cfg.prob);
    mpz_class clamp = std::min(bound, mpz_class(static_cast<long>(cfg.prime - 1)));
    std::uint64_t hi = static_cast<std::uint64_t>(clamp.get_ui());

    // Witness sampling: all denominators and Q must be nonzero at the point.
    PolySystem sys;
    sys.model = model;
    sys.prime = cfg.prime;
    sys.beta = beta;
    sys.cfg = cfg;
    sys.spec.bound_used = clamp;

    for (int attempt = 0;; ++attempt) {
        if (attempt >= cfg.max_retries)
            throw std::runtime_error("generate_Et: witness sampling failed");
        JetPoint pt = sample_point(model, rng, 1, hi, static_cast<std::size_t>(depth));
        try {
            JetEvaluator ev(model, cfg.prime, static_cast<std::size_t>(depth), pt,
                            /*with_gradients=*/false);
            // evaluate Q at the witness (level-0 values only)
            std::vector<FpScalar> gpoint(g.ring->size(), FpScalar(0, cfg.prime));
            for (int i = 0; i < n; ++i)
                for (int k = 0; k <= depth; ++k)
                    gpoint[static_cast<std::size_t>(g.jet(i, k))] =
                        ev.state_jet(static_cast<std::size_t>(i),
                                     static_cast<std::size_t>(k));
            for (std::size_t i = 0; i < model.params.size(); ++i)
                gpoint[static_cast<std::size_t>(g.param(static_cast<int>(i)))] =
                    FpScalar(pt.mu[i], cfg.prime);
            for (std::size_t i = 0; i < model.inputs.size(); ++i)
                for (int k = 0; k <= depth; ++k)
                    gpoint[static_cast<std::size_t>(g.ujet(static_cast<int>(i), k))] =
                        FpScalar(pt.ujets[i][static_cast<std::size_t>(k)], cfg.prime);
            FpScalar qhat = to_fp(Q, cfg.prime).evaluate(gpoint, FpScalar(0, cfg.prime));
            if (qhat.is_zero()) continue;

            sys.spec.x0 = pt.x0;
            sys.spec.mu = pt.mu;
            sys.spec.ujets = pt.ujets;
            sys.spec.yjets.clear();
            for (int j = 0; j < m; ++j) {
                std::vector<std::uint64_t> js;
                for (int k = 0; k <= beta[j]; ++k)
                    js.push_back(ev.output_jet(static_cast<std::size_t>(j),
                                               static_cast<std::size_t>(k)).value());
                sys.spec.yjets.push_back(std::move(js));
            }
            sys.spec.sat_value = qhat.inv().value();

            // Specialize: reduce mod p, fold y-jets and u-jets.
            std::map<int, FpScalar> folded;
            for (int j = 0; j < m; ++j)
                for (int k = 0; k <= beta[j]; ++k)
                    folded.emplace(g.yjet(j, k),
                                   FpScalar(sys.spec.yjets[static_cast<std::size_t>(j)]
                                                          [static_cast<std::size_t>(k)],
                                            cfg.prime));
            for (std::size_t i = 0; i < model.inputs.size(); ++i)
                for (int k = 0; k <= depth; ++k)
                    folded.emplace(g.ujet(static_cast<int>(i), k),
                                   FpScalar(pt.ujets[i][static_cast<std::size_t>(k)],
                                            cfg.prime));
            std::vector<PPoly> spolys;
            for (const auto& p : polys_z)
                spolys.push_back(to_fp(p, cfg.prime).substitute(folded));
            PPoly qp = to_fp(Q, cfg.prime).substitute(folded);

            // Final ring: per-state jets in support (x_i(0) always kept),
            // then parameters, then z_aux.
            std::vector<char> used(g.ring->size(), 0);
            for (const auto& p : spolys)
                for (int v : p.support()) used[static_cast<std::size_t>(v)] = 1;
            for (int v : qp.support()) used[static_cast<std::size_t>(v)] = 1;
            auto fring = std::make_shared<Ring>();
            std::vector<int> old2new(g.ring->size(), -1);
            std::vector<FpScalar> witness;
            for (int i = 0; i < n; ++i) {
                for (int k = 0; k <= depth; ++k) {
                    int ov = g.jet(i, k);
                    if (k > 0 && !used[static_cast<std::size_t>(ov)]) continue;
                    old2new[static_cast<std::size_t>(ov)] =
                        fring->add(g.ring->vars[static_cast<std::size_t>(ov)]);
                    witness.push_back(gpoint[static_cast<std::size_t>(ov)]);
                }
            }
            for (std::size_t i = 0; i < model.params.size(); ++i) {
                int ov = g.param(static_cast<int>(i));
                old2new[static_cast<std::size_t>(ov)] =
                    fring->add(g.ring->vars[static_cast<std::size_t>(ov)]);
                witness.push_back(gpoint[static_cast<std::size_t>(ov)]);
            }
            int zvar = fring->add({"z_aux", VarKind::Aux, 0, 0});
            witness.push_back(FpScalar(sys.spec.sat_value, cfg.prime));

            auto remap = [&](const PPoly& p) {
                std::vector<PPoly::Term> ts;
                for (const auto& t : p.terms()) {
                    Mono nm(fring->size(), 0);
                    for (std::size_t v = 0; v < t.mono.size(); ++v) {
                        if (!t.mono[v]) continue;
                        int nv = old2new[v];
                        if (nv < 0) throw std::logic_error("unmapped variable");
                        nm[static_cast<std::size_t>(nv)] = t.mono[v];
                    }
                    ts.push_back({std::move(nm), t.coeff});
                }
                return PPoly::from_terms(fring, std::move(ts));
            };
            sys.ring = fring;
            sys.polys.clear();
            for (const auto& p : spolys) sys.polys.push_back(remap(p));
            // saturation: z_aux * Q - 1
            PPoly sat = PPoly::variable(fring, zvar, FpScalar(1, cfg.prime)) * remap(qp) -
                        PPoly::constant(fring, FpScalar(1, cfg.prime));
            sys.polys.push_back(sat);
            sys.witness = witness;

            // Plug-in check: the witness satisfies every polynomial.
            for (const auto& p : sys.polys)
                if (!p.evaluate(witness, FpScalar(0, cfg.prime)).is_zero())
                    throw std::logic_error("witness does not satisfy E^t");
            return sys;
        } catch (const SampleFailure&) {
            continue;
        }
    }
}

mpz_class system_degree(const PolySystem& sys) {
    mpz_class d = 1;
    for (const auto& p : sys.polys) d *= std::max(1L, p.total_degree());
    return d;
}

std::string to_psys(const PolySystem& sys) {
    std::ostringstream os;
    os << "prime " << sys.prime << "\n";
    os << "vars " << sys.ring->size() << "\n";
    for (const auto& v : sys.ring->vars) {
        const char* tag = "param";
        switch (v.kind) {
            case VarKind::Parameter: tag = "param"; break;
            case VarKind::InitState: tag = "init"; break;
            case VarKind::Derivative: tag = "deriv"; break;
            case VarKind::InputDeriv: tag = "input"; break;
            case VarKind::OutputJet: tag = "outjet"; break;
            case VarKind::Aux: tag = "aux"; break;
        }
        os << v.name << " " << tag << "\n";
    }
    os << "polys " << sys.polys.size() << "\n";
    for (const auto& p : sys.polys) os << p.to_string() << "\n";
    return os.str();
}

}  // namespace identforge

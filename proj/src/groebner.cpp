#include "identforge/groebner.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>
#include <stdexcept>

#include "identforge/linalg.hpp"

namespace identforge {

namespace {

using Term = PPoly::Term;

bool mono_divides(const Mono& a, const Mono& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Mono mono_div(const Mono& a, const Mono& b) {  // a / b
    Mono r = a;
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = static_cast<std::uint16_t>(r[i] - b[i]);
    return r;
}

Mono mono_lcm(const Mono& a, const Mono& b) {
    Mono r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

Mono mono_mul(const Mono& a, const Mono& b) {
    Mono r = a;
    for (std::size_t i = 0; i < r.size(); ++i) {
        unsigned s = a[i] + b[i];
        if (s > 0xFFFF) throw std::overflow_error("exponent overflow");
        r[i] = static_cast<std::uint16_t>(s);
    }
    return r;
}

// Working polynomial: terms sorted strictly descending under `ord`.
struct OPoly {
    std::vector<Term> t;
    bool zero() const { return t.empty(); }
    const Term& lt() const { return t.front(); }
};

OPoly to_opoly(const PPoly& p, const MonomialOrder& ord) {
    OPoly o;
    o.t = p.terms();
    std::sort(o.t.begin(), o.t.end(),
              [&](const Term& a, const Term& b) { return ord.less(b.mono, a.mono); });
    return o;
}

PPoly to_ppoly(const OPoly& o, const RingPtr& ring) {
    std::vector<Term> ts = o.t;
    return PPoly::from_terms(ring, std::move(ts));
}

// r = a - c * x^m * b  (c scalar, m monomial)
OPoly axpy(const OPoly& a, const FpScalar& c, const Mono& m, const OPoly& b,
           const MonomialOrder& ord) {
    OPoly r;
    r.t.reserve(a.t.size() + b.t.size());
    std::size_t i = 0, j = 0;
    while (i < a.t.size() && j < b.t.size()) {
        Mono bm = mono_mul(b.t[j].mono, m);
        if (ord.less(bm, a.t[i].mono)) {
            r.t.push_back(a.t[i++]);
        } else if (ord.less(a.t[i].mono, bm)) {
            r.t.push_back({std::move(bm), -(c * b.t[j].coeff)});
            ++j;
        } else {
            FpScalar s = a.t[i].coeff - c * b.t[j].coeff;
            if (!s.is_zero()) r.t.push_back({a.t[i].mono, s});
            ++i; ++j;
        }
    }
    for (; i < a.t.size(); ++i) r.t.push_back(a.t[i]);
    for (; j < b.t.size(); ++j)
        r.t.push_back({mono_mul(b.t[j].mono, m), -(c * b.t[j].coeff)});
    return r;
}

struct BudgetExhausted {};

using Clock = std::chrono::steady_clock;

// Full reduction of f modulo basis (tail reduction included).
OPoly reduce_full(OPoly f, const std::vector<OPoly>& basis, const MonomialOrder& ord,
                  Clock::time_point deadline = Clock::time_point::max()) {
    OPoly out;
    std::size_t steps = 0;
    while (!f.zero()) {
        if ((++steps & 0x3FF) == 0 && Clock::now() > deadline) throw BudgetExhausted{};
        bool hit = false;
        for (const auto& g : basis) {
            if (g.zero()) continue;
            if (!mono_divides(g.lt().mono, f.lt().mono)) continue;
            FpScalar c = f.lt().coeff / g.lt().coeff;
            Mono m = mono_div(f.lt().mono, g.lt().mono);
            f = axpy(f, c, m, g, ord);
            hit = true;
            break;
        }
        if (!hit) {
            out.t.push_back(f.lt());
            f.t.erase(f.t.begin());
        }
    }
    return out;
}

OPoly make_monic(OPoly f) {
    if (f.zero()) return f;
    FpScalar inv = f.lt().coeff.inv();
    for (auto& t : f.t) t.coeff = t.coeff * inv;
    return f;
}

struct Pair {
    std::size_t i, j;
    Mono lcm;
    std::uint64_t deg;
};

}  // namespace

GroebnerBasis buchberger(const std::vector<PPoly>& gens, const MonomialOrder& ord,
                         const GroebnerConfig& cfg) {
    auto start = std::chrono::steady_clock::now();
    GroebnerBasis out;
    out.order = ord;
    if (gens.empty()) return out;
    const RingPtr& ring = gens.front().ring();
    const std::uint64_t p = gens.front().terms().empty()
                                ? 0
                                : gens.front().terms().front().coeff.modulus();
    (void)p;

    std::vector<OPoly> G;
    for (const auto& g : gens) {
        OPoly o = to_opoly(g, ord);
        if (!o.zero()) G.push_back(make_monic(std::move(o)));
    }
    if (G.empty()) return out;

    auto add_pairs = [&](std::vector<Pair>& pairs, std::size_t k) {
        for (std::size_t i = 0; i < k; ++i) {
            Mono l = mono_lcm(G[i].lt().mono, G[k].lt().mono);
            pairs.push_back({i, k, l, ord.degree(l)});
        }
    };
    std::vector<Pair> pairs;
    for (std::size_t k = 1; k < G.size(); ++k) add_pairs(pairs, k);

    auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    };
    const Clock::time_point deadline =
        start + std::chrono::duration_cast<Clock::duration>(
                    std::chrono::duration<double>(cfg.max_seconds));

    while (!pairs.empty()) {
        if (out.stats.spairs_processed >= cfg.max_spairs ||
            elapsed() > cfg.max_seconds) {
            out.complete = false;
            break;
        }
        // normal strategy: minimal lcm degree first (ties: lowest indices)
        std::size_t best = 0;
        for (std::size_t q = 1; q < pairs.size(); ++q) {
            if (pairs[q].deg < pairs[best].deg ||
                (pairs[q].deg == pairs[best].deg &&
                 std::tie(pairs[q].j, pairs[q].i) < std::tie(pairs[best].j, pairs[best].i)))
                best = q;
        }
        Pair pr = pairs[best];
        pairs.erase(pairs.begin() + static_cast<long>(best));

        // product criterion: coprime leading monomials
        Mono prod = mono_mul(G[pr.i].lt().mono, G[pr.j].lt().mono);
        if (prod == pr.lcm) continue;
        // chain criterion: some k with LT(k) | lcm and both pairs absent
        bool chained = false;
        for (std::size_t k = 0; k < G.size() && !chained; ++k) {
            if (k == pr.i || k == pr.j || G[k].zero()) continue;
            if (!mono_divides(G[k].lt().mono, pr.lcm)) continue;
            bool pending = false;
            for (const auto& q : pairs) {
                if ((q.i == std::min(pr.i, k) && q.j == std::max(pr.i, k)) ||
                    (q.i == std::min(pr.j, k) && q.j == std::max(pr.j, k))) {
                    pending = true;
                    break;
                }
            }
            if (!pending) chained = true;
        }
        if (chained) continue;

        ++out.stats.spairs_processed;
        // S-polynomial: (lcm/LT_i)*g_i - (lcm/LT_j)*g_j (both monic)
        const std::uint64_t mod = G[pr.i].lt().coeff.modulus();
        OPoly zero_p;
        OPoly s = axpy(zero_p, -FpScalar(1, mod),
                       mono_div(pr.lcm, G[pr.i].lt().mono), G[pr.i], ord);
        s = axpy(s, FpScalar(1, mod), mono_div(pr.lcm, G[pr.j].lt().mono), G[pr.j],
                 ord);
        try {
            OPoly r = reduce_full(std::move(s), G, ord, deadline);
            if (r.zero()) {
                ++out.stats.reductions_to_zero;
                continue;
            }
            G.push_back(make_monic(std::move(r)));
            add_pairs(pairs, G.size() - 1);
        } catch (const BudgetExhausted&) {
            out.complete = false;
            break;
        }
    }

    // Interreduce: drop generators whose LT is divisible by another LT, then
    // tail-reduce each against the rest.
    std::vector<OPoly> R;
    for (std::size_t i = 0; i < G.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < G.size() && !redundant; ++j) {
            if (i == j) continue;
            if (mono_divides(G[j].lt().mono, G[i].lt().mono) &&
                !(G[i].lt().mono == G[j].lt().mono && j > i))
                redundant = true;
        }
        if (!redundant) R.push_back(G[i]);
    }
    try {
        // tail interreduction gets a small grace period past the deadline
        auto grace = Clock::now() + std::chrono::seconds(30);
        for (std::size_t i = 0; i < R.size(); ++i) {
            std::vector<OPoly> others;
            for (std::size_t j = 0; j < R.size(); ++j)
                if (j != i) others.push_back(R[j]);
            R[i] = make_monic(reduce_full(R[i], others, ord, grace));
        }
    } catch (const BudgetExhausted&) {
        out.complete = false;
    }
    std::sort(R.begin(), R.end(), [&](const OPoly& a, const OPoly& b) {
        return ord.less(a.lt().mono, b.lt().mono);
    });
    for (const auto& g : R)
        if (!g.zero()) out.gens.push_back(to_ppoly(g, ring));
    out.stats.seconds = elapsed();
    return out;
}

GroebnerBasis buchberger(const PolySystem& sys, const MonomialOrder& ord,
                         const GroebnerConfig& cfg) {
    return buchberger(sys.polys, ord, cfg);
}

PPoly normal_form(const PPoly& f, const GroebnerBasis& G) {
    std::vector<OPoly> basis;
    for (const auto& g : G.gens) basis.push_back(to_opoly(g, G.order));
    OPoly r = reduce_full(to_opoly(f, G.order), basis, G.order);
    return to_ppoly(r, f.ring());
}

std::string IdentReport::to_json() const {
    auto cls_str = [](IdentClass c) {
        switch (c) {
            case IdentClass::Global: return "globally identifiable";
            case IdentClass::Local: return "locally identifiable";
            case IdentClass::NonIdentifiable: return "non-identifiable";
        }
        return "?";
    };
    std::ostringstream os;
    os << "{\n  \"basis_complete\": " << (basis_complete ? "true" : "false")
       << ",\n  \"substituted\": [";
    for (std::size_t i = 0; i < substituted.size(); ++i)
        os << (i ? ", " : "") << "\"" << substituted[i] << "\"";
    os << "],\n  \"parameters\": {\n";
    for (std::size_t i = 0; i < entries.size(); ++i)
        os << "    \"" << entries[i].name << "\": {\"class\": \""
           << cls_str(entries[i].cls) << "\", \"witness\": " << entries[i].witness
           << "}" << (i + 1 < entries.size() ? "," : "") << "\n";
    os << "  }\n}\n";
    return os.str();
}

IdentReport classify(const GroebnerBasis& G, const PolySystem& sys) {
    if (!G.complete)
        throw std::invalid_argument("classify requires a complete Groebner basis");
    IdentReport rep;

    // Local rank test: does removing the column drop the Jacobian rank?
    std::vector<int> cols = sys.default_columns();
    FpMatrix J = jacobian_at(sys.polys, cols, sys.witness, sys.prime);
    FpMatrix Jc = J;
    std::size_t full_rank = rref(Jc).size();
    auto rank_drops = [&](int var) {
        FpMatrix M(J.rows, J.cols - 1, J.p);
        std::size_t skip = 0;
        for (std::size_t c = 0; c < cols.size(); ++c)
            if (cols[c] == var) skip = c;
        for (std::size_t r = 0; r < J.rows; ++r) {
            std::size_t w = 0;
            for (std::size_t c = 0; c < J.cols; ++c) {
                if (c == skip) continue;
                M.at(r, w++) = J.at(r, c);
            }
        }
        return rref(M).size() < full_rank;
    };

    for (int v : sys.eligible_vars()) {
        const Var& var = sys.ring->vars[static_cast<std::size_t>(v)];
        IdentEntry e;
        e.name = var.name;
        e.witness = sys.witness[static_cast<std::size_t>(v)].value();
        PPoly nf = normal_form(PPoly::variable(sys.ring, v, FpScalar(1, sys.prime)), G);
        bool constant = nf.is_constant();
        std::uint64_t cval =
            nf.is_zero() ? 0 : nf.terms().front().coeff.value();
        if (constant && cval == e.witness) {
            e.cls = IdentClass::Global;
        } else if (rank_drops(v)) {
            e.cls = IdentClass::Local;
        } else {
            e.cls = IdentClass::NonIdentifiable;
        }
        rep.entries.push_back(std::move(e));
    }
    return rep;
}

namespace {

std::string sanitize(const std::string& name) {
    std::string out;
    for (char ch : name) {
        if (ch == '(') out.push_back('_');
        else if (ch == ')' || ch == '^') continue;
        else out.push_back(ch);
    }
    return out;
}

std::string poly_with_names(const PPoly& p, const std::vector<std::string>& names) {
    // reuse canonical printing, then swap variable names
    std::ostringstream os;
    bool first = true;
    for (const auto& t : p.terms()) {
        std::string cs = std::to_string(t.coeff.value());
        if (!first) os << " + ";
        first = false;
        bool printed = false;
        if (cs != "1" || mono_degree(t.mono) == 0) {
            os << cs;
            printed = true;
        }
        for (std::size_t k = 0; k < t.mono.size(); ++k) {
            if (!t.mono[k]) continue;
            if (printed) os << "*";
            os << names[k];
            if (t.mono[k] > 1) os << "^" << t.mono[k];
            printed = true;
        }
        if (!printed) os << "0";
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace

std::string export_system(const PolySystem& sys, ExportFormat format,
                          const MonomialOrder& order) {
    std::vector<std::string> names;
    for (const auto& v : sys.ring->vars) names.push_back(sanitize(v.name));
    const bool weighted = order.kind == MonomialOrder::WeightedDegrevlex;
    std::ostringstream os;
    switch (format) {
        case ExportFormat::Maple: {
            os << "# identforge export (maple)\n";
            if (sys.polys.empty()) os << "# WARNING: empty ideal\n";
            os << "with(Groebner):\n";
            os << "p := " << sys.prime << ":\n";
            os << "vars := [";
            for (std::size_t i = 0; i < names.size(); ++i)
                os << (i ? ", " : "") << names[i];
            os << "]:\n";
            os << "sys := [";
            for (std::size_t i = 0; i < sys.polys.size(); ++i)
                os << (i ? ",\n  " : "") << poly_with_names(sys.polys[i], names);
            os << "]:\n";
            if (weighted) {
                os << "w := [";
                for (std::size_t i = 0; i < order.weights.size(); ++i)
                    os << (i ? ", " : "") << order.weights[i];
                os << "]:\n";
                os << "gb := Basis(sys, 'wdeg'(w, vars), characteristic=p):\n";
            } else {
                os << "gb := Basis(sys, tdeg(op(vars)), characteristic=p):\n";
            }
            break;
        }
        case ExportFormat::Magma: {
            os << "// identforge export (magma)\n";
            if (sys.polys.empty()) os << "// WARNING: empty ideal\n";
            os << "p := " << sys.prime << ";\n";
            os << "R<";
            for (std::size_t i = 0; i < names.size(); ++i)
                os << (i ? ", " : "") << names[i];
            os << "> := PolynomialRing(GF(p), ";
            if (weighted) {
                os << "[";
                for (std::size_t i = 0; i < order.weights.size(); ++i)
                    os << (i ? ", " : "") << order.weights[i];
                os << "], \"grevlexw\");\n";
            } else {
                os << names.size() << ", \"grevlex\");\n";
            }
            os << "I := ideal<R |";
            for (std::size_t i = 0; i < sys.polys.size(); ++i)
                os << (i ? ",\n  " : " ") << poly_with_names(sys.polys[i], names);
            os << ">;\n";
            os << "GroebnerBasis(I);\n";
            break;
        }
        case ExportFormat::Generic: {
            os << "prime " << sys.prime << "\n";
            os << "order " << (weighted ? "wgrevlex" : "grevlex");
            if (weighted)
                for (auto w : order.weights) os << " " << w;
            os << "\n";
            os << "vars";
            for (const auto& nm : names) os << " " << nm;
            os << "\n";
            if (sys.polys.empty()) os << "# WARNING: empty ideal\n";
            for (const auto& p : sys.polys)
                os << poly_with_names(p, names) << "\n";
            break;
        }
    }
    return os.str();
}

GenericHeader parse_generic_header(const std::string& text) {
    GenericHeader h;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "prime") {
            ls >> h.prime;
        } else if (key == "order") {
            std::string kind;
            ls >> kind;
            std::uint64_t w;
            while (ls >> w) h.weights.push_back(w);
        } else if (key == "vars") {
            std::string v;
            while (ls >> v) h.vars.push_back(v);
            break;
        }
    }
    return h;
}

}  // namespace identforge

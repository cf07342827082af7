#include "identforge/elim.hpp"

#include <algorithm>
#include <stdexcept>

namespace identforge {

namespace {

// p with variable v replaced by the polynomial r.
PPoly substitute_poly(const PPoly& p, int v, const PPoly& r) {
    const RingPtr& ring = p.ring();
    // group terms by exponent of v
    std::uint16_t maxe = 0;
    for (const auto& t : p.terms())
        maxe = std::max(maxe, t.mono[static_cast<std::size_t>(v)]);
    if (maxe == 0) return p;
    std::vector<std::vector<PPoly::Term>> by_exp(maxe + 1);
    for (const auto& t : p.terms()) {
        PPoly::Term nt = t;
        std::uint16_t e = nt.mono[static_cast<std::size_t>(v)];
        nt.mono[static_cast<std::size_t>(v)] = 0;
        by_exp[e].push_back(std::move(nt));
    }
    PPoly out = PPoly::zero(ring);
    PPoly rpow = PPoly::constant(ring, FpScalar(1, p.terms().front().coeff.modulus()));
    for (std::uint16_t e = 0; e <= maxe; ++e) {
        if (!by_exp[e].empty()) {
            PPoly part = PPoly::from_terms(ring, std::move(by_exp[e]));
            out = out + (e == 0 ? part : part * rpow);
        }
        if (e < maxe) rpow = (e == 0) ? r : rpow * r;
    }
    return out;
}

}  // namespace

Elimination eliminate_linear(const PolySystem& sys) {
    Elimination result;
    std::vector<PPoly> polys = sys.polys;
    std::vector<char> alive_poly(polys.size(), 1);
    std::vector<char> eliminated(sys.ring->size(), 0);

    bool progress = true;
    while (progress) {
        progress = false;
        // deterministic choice: smallest defining polynomial first
        std::size_t best_g = polys.size();
        int best_v = -1;
        for (std::size_t gi = 0; gi < polys.size(); ++gi) {
            if (!alive_poly[gi]) continue;
            const PPoly& g = polys[gi];
            for (const auto& t : g.terms()) {
                if (mono_degree(t.mono) != 1) continue;
                std::size_t v = 0;
                while (!t.mono[v]) ++v;
                if (sys.ring->vars[v].kind != VarKind::Derivative) continue;
                if (eliminated[v]) continue;
                // v must not occur in any other term of g
                bool clean = true;
                for (const auto& u : g.terms())
                    if (&u != &t && u.mono[v]) { clean = false; break; }
                if (!clean) continue;
                if (best_v < 0 ||
                    g.num_terms() < polys[best_g].num_terms() ||
                    (g.num_terms() == polys[best_g].num_terms() && gi < best_g)) {
                    best_g = gi;
                    best_v = static_cast<int>(v);
                }
                break;
            }
        }
        if (best_v < 0) break;
        progress = true;

        const PPoly g = polys[best_g];
        // solve c*v + h = 0  =>  v = -h / c
        FpScalar c(0, sys.prime);
        std::vector<PPoly::Term> hterms;
        for (const auto& t : g.terms()) {
            if (t.mono[static_cast<std::size_t>(best_v)])
                c = t.coeff;
            else
                hterms.push_back(t);
        }
        PPoly h = PPoly::from_terms(g.ring(), std::move(hterms));
        PPoly repl = -h * PPoly::constant(g.ring(), c.inv());

        alive_poly[best_g] = 0;
        eliminated[static_cast<std::size_t>(best_v)] = 1;
        result.solved.emplace_back(
            sys.ring->vars[static_cast<std::size_t>(best_v)].name, g);
        for (std::size_t gi = 0; gi < polys.size(); ++gi) {
            if (!alive_poly[gi]) continue;
            polys[gi] = substitute_poly(polys[gi], best_v, repl);
        }
    }

    // Rebuild the ring without the eliminated variables.
    auto fring = std::make_shared<Ring>();
    std::vector<int> old2new(sys.ring->size(), -1);
    std::vector<FpScalar> witness;
    for (std::size_t v = 0; v < sys.ring->size(); ++v) {
        if (eliminated[v]) continue;
        old2new[v] = fring->add(sys.ring->vars[v]);
        witness.push_back(sys.witness[v]);
    }
    result.reduced = sys;
    result.reduced.ring = fring;
    result.reduced.witness = std::move(witness);
    result.reduced.polys.clear();
    for (std::size_t gi = 0; gi < polys.size(); ++gi) {
        if (!alive_poly[gi]) continue;
        std::vector<PPoly::Term> ts;
        for (const auto& t : polys[gi].terms()) {
            Mono nm(fring->size(), 0);
            for (std::size_t v = 0; v < t.mono.size(); ++v) {
                if (!t.mono[v]) continue;
                if (old2new[v] < 0)
                    throw std::logic_error("eliminated variable survived");
                nm[static_cast<std::size_t>(old2new[v])] = t.mono[v];
            }
            ts.push_back({std::move(nm), t.coeff});
        }
        result.reduced.polys.push_back(PPoly::from_terms(fring, std::move(ts)));
    }
    return result;
}

}  // namespace identforge

#include "identforge/subst.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include "identforge/linalg.hpp"

namespace identforge {

namespace {

mpz_class ceil_div(const mpz_class& a, const mpz_class& b) {
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (r != 0) q += 1;
    return q;
}

}  // namespace

std::string SubstitutionRecord::to_json() const {
    std::ostringstream os;
    os << "{\n  \"seed\": " << seed << ",\n  \"bound\": " << bound.get_str()
       << ",\n  \"bound_used\": " << bound_used.get_str() << ",\n  \"values\": {";
    for (std::size_t i = 0; i < values.size(); ++i)
        os << (i ? ", " : "") << "\"" << values[i].first << "\": " << values[i].second;
    os << "}\n}\n";
    return os.str();
}

mpz_class sampling_bound(const PolySystem& sys, const mpq_class& prob) {
    if (prob <= 0 || prob >= 1)
        throw std::invalid_argument("probability must lie in (0, 1)");
    mpq_class one_minus = 1 - prob;
    mpz_class d2 =
        ceil_div(6 * system_degree(sys) * one_minus.get_den(), one_minus.get_num());
    return ceil_div(4 * d2, 3);
}

std::pair<PolySystem, SubstitutionRecord> substitute_basis(
    const PolySystem& sys, const BasisCandidate& basis, std::uint64_t seed) {
    SubstitutionRecord rec;
    rec.seed = seed;
    rec.bound = sampling_bound(sys, sys.cfg.prob);
    rec.bound_used = std::min(rec.bound, mpz_class(static_cast<long>(sys.prime - 1)));
    if (basis.members.empty()) return {sys, rec};

    const std::uint64_t hi = rec.bound_used.get_ui();
    std::mt19937_64 rng(seed);

    for (int attempt = 0; attempt < sys.cfg.max_retries; ++attempt) {
        rec.values.clear();
        std::map<int, FpScalar> subs;
        for (int v : basis.members) {
            std::uint64_t val = 1 + rng() % hi;
            subs.emplace(v, FpScalar(val, sys.prime));
            rec.values.emplace_back(sys.ring->vars[static_cast<std::size_t>(v)].name,
                                    val);
        }

        std::vector<PPoly> reduced;
        bool zeroed = false;
        for (const auto& p : sys.polys) {
            PPoly q = p.substitute(subs);
            if (q.is_zero() && !p.is_zero()) { zeroed = true; break; }
            reduced.push_back(std::move(q));
        }
        if (zeroed) continue;

        // New ring drops the substituted members.
        auto fring = std::make_shared<Ring>();
        std::vector<int> old2new(sys.ring->size(), -1);
        std::vector<FpScalar> witness;
        for (std::size_t v = 0; v < sys.ring->size(); ++v) {
            if (subs.count(static_cast<int>(v))) continue;
            old2new[v] = fring->add(sys.ring->vars[v]);
            witness.push_back(sys.witness[v]);
        }
        auto remap = [&](const PPoly& p) {
            std::vector<PPoly::Term> ts;
            for (const auto& t : p.terms()) {
                Mono nm(fring->size(), 0);
                for (std::size_t v = 0; v < t.mono.size(); ++v) {
                    if (!t.mono[v]) continue;
                    if (old2new[v] < 0)
                        throw std::logic_error("substituted variable survived");
                    nm[static_cast<std::size_t>(old2new[v])] = t.mono[v];
                }
                ts.push_back({std::move(nm), t.coeff});
            }
            return PPoly::from_terms(fring, std::move(ts));
        };

        PolySystem out = sys;
        out.ring = fring;
        out.polys.clear();
        for (const auto& p : reduced) out.polys.push_back(remap(p));
        out.witness = witness;

        // Zero-dimensional check at the restricted witness: every remaining
        // column must be a pivot.
        std::vector<int> cols;
        for (std::size_t v = 0; v < fring->size(); ++v) cols.push_back(static_cast<int>(v));
        FpMatrix J = jacobian_at(out.polys, cols, out.witness, out.prime);
        if (rank(J) != fring->size()) continue;
        return {out, rec};
    }
    throw std::runtime_error("substitute_basis: bounded retries exhausted");
}

}  // namespace identforge

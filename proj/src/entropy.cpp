#include "identforge/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

namespace identforge {

double entropy(const std::vector<long>& degrees) {
    long total = 0;
    for (long d : degrees) total += d;
    if (total <= 0) return 0.0;
    double h = 0.0;
    for (long d : degrees) {
        if (d <= 0) continue;
        double w = static_cast<double>(d) / static_cast<double>(total);
        h -= w * std::log2(w);
    }
    return h;
}

DegreeProfile degree_profile(const PolySystem& sys, const BasisCandidate& T) {
    DegreeProfile prof;
    prof.members = T.members;
    prof.degrees.assign(T.members.size(), {});

    // member position by ring index
    std::vector<int> member_of(sys.ring->size(), -1);
    for (std::size_t i = 0; i < T.members.size(); ++i)
        member_of[static_cast<std::size_t>(T.members[i])] = static_cast<int>(i);

    // Distinct monomials across the whole system (avoid double counting).
    std::set<Mono> seen;
    for (const auto& p : sys.polys) {
        for (const auto& t : p.terms()) {
            if (!seen.insert(t.mono).second) continue;
            // attribution: member with the highest exponent, ties by name
            int best = -1;
            for (std::size_t v = 0; v < t.mono.size(); ++v) {
                if (!t.mono[v] || member_of[v] < 0) continue;
                if (best < 0) { best = static_cast<int>(v); continue; }
                std::uint16_t ev = t.mono[v], eb = t.mono[static_cast<std::size_t>(best)];
                if (ev > eb ||
                    (ev == eb && sys.ring->vars[v].name <
                                     sys.ring->vars[static_cast<std::size_t>(best)].name))
                    best = static_cast<int>(v);
            }
            if (best < 0) continue;
            prof.degrees[static_cast<std::size_t>(member_of[static_cast<std::size_t>(best)])]
                .push_back(static_cast<long>(mono_degree(t.mono)));
        }
    }
    for (const auto& a : prof.degrees) {
        long total = 0;
        for (long d : a) total += d;
        std::vector<double> w;
        for (long d : a)
            w.push_back(total > 0 ? static_cast<double>(d) / static_cast<double>(total)
                                  : 0.0);
        prof.weights.push_back(std::move(w));
        prof.entropies.push_back(entropy(a));
    }
    return prof;
}

namespace {

// -1 / 0 / +1 comparison of ascending entropy tuples, -inf padded, 1e-9 tol.
int cmp_tuples(const std::vector<double>& a, const std::vector<double>& b) {
    const double NEG = -std::numeric_limits<double>::infinity();
    const std::size_t n = std::max(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        double x = i < a.size() ? a[i] : NEG;
        double y = i < b.size() ? b[i] : NEG;
        if (x < y - 1e-9) return -1;
        if (x > y + 1e-9) return 1;
    }
    return 0;
}

}  // namespace

const BasisCandidate& select_best(const CandidatePool& pool,
                                  const std::vector<DegreeProfile>& profiles,
                                  const PolySystem& sys) {
    if (pool.candidates.empty()) throw std::invalid_argument("empty pool");
    if (profiles.size() != pool.candidates.size())
        throw std::invalid_argument("profile/candidate count mismatch");
    std::size_t best = 0;
    std::vector<double> best_t = profiles[0].entropies;
    std::sort(best_t.begin(), best_t.end());
    for (std::size_t i = 1; i < pool.candidates.size(); ++i) {
        std::vector<double> t = profiles[i].entropies;
        std::sort(t.begin(), t.end());
        int c = cmp_tuples(t, best_t);
        if (c > 0 || (c == 0 && pool.candidates[i].member_names(sys) <
                                    pool.candidates[best].member_names(sys))) {
            best = i;
            best_t = std::move(t);
        }
    }
    return pool.candidates[best];
}

std::vector<DegreeProfile> profile_pool(const PolySystem& sys,
                                        CandidatePool& pool, bool parallel) {
    std::vector<DegreeProfile> profiles(pool.candidates.size());
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 8)
        for (long i = 0; i < static_cast<long>(pool.candidates.size()); ++i)
            profiles[static_cast<std::size_t>(i)] =
                degree_profile(sys, pool.candidates[static_cast<std::size_t>(i)]);
    } else {
        for (std::size_t i = 0; i < pool.candidates.size(); ++i)
            profiles[i] = degree_profile(sys, pool.candidates[i]);
    }
    for (std::size_t i = 0; i < pool.candidates.size(); ++i)
        pool.candidates[i].entropies = profiles[i].entropies;
    return profiles;
}

std::string entropy_csv(const PolySystem& sys, const CandidatePool& pool,
                        const std::vector<DegreeProfile>& profiles) {
    std::ostringstream os;
    os << "candidate,member,entropy\n";
    for (std::size_t i = 0; i < pool.candidates.size(); ++i) {
        auto names = pool.candidates[i].member_names(sys);
        for (std::size_t j = 0; j < names.size(); ++j)
            os << i << "," << names[j] << "," << profiles[i].entropies[j] << "\n";
    }
    return os.str();
}

}  // namespace identforge

// Inspect the reduced system after linear pre-elimination.
#include <cstdio>
#include <fstream>
#include <sstream>

#include "identforge/basis.hpp"
#include "identforge/elim.hpp"
#include "identforge/entropy.hpp"
#include "identforge/subst.hpp"

using namespace identforge;

int main(int argc, char** argv) {
    std::ifstream in(argv[1]);
    std::stringstream ss;
    ss << in.rdbuf();
    OdeModel m = parse_model(ss.str());
    SpecializationConfig cfg;
    PolySystem sys = generate_Et(m, cfg);
    bool zerodim = argc > 2 && std::string(argv[2]) == "zerodim";
    if (zerodim) {
        CandidatePool pool = enumerate_candidates(sys);
        auto profiles = profile_pool(sys, pool);
        const BasisCandidate& best = select_best(pool, profiles, sys);
        auto [zsys, rec] = substitute_basis(sys, best, 0);
        sys = zsys;
    }
    Elimination e = eliminate_linear(sys);
    std::printf("before: %zu polys, %zu table vars\n", sys.num_polys(),
                sys.ring->size());
    std::size_t nz = 0, terms = 0;
    long maxdeg = 0;
    for (const auto& p : e.reduced.polys) {
        if (p.is_zero()) continue;
        ++nz;
        terms += p.num_terms();
        maxdeg = std::max(maxdeg, p.total_degree());
    }
    std::printf("after:  %zu nonzero polys, %zu table vars, %zu terms total, max deg %ld\n",
                nz, e.reduced.ring->size(), terms, maxdeg);
    for (const auto& p : e.reduced.polys)
        if (!p.is_zero())
            std::printf("  deg %ld, %zu terms\n", p.total_degree(), p.num_terms());
    return 0;
}

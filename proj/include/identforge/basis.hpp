#pragma once

#include <cstdint>
#include <gmpxx.h>
#include <string>
#include <vector>

#include "identforge/linalg.hpp"
#include "identforge/prolong.hpp"

namespace identforge {

// A candidate transcendence basis: a subset of eligible variables
// (parameters and initial conditions) of size k = transcendence degree.
struct BasisCandidate {
    std::vector<int> members;       // ring indices, sorted ascending
    bool valid = false;
    std::vector<double> entropies;  // filled by the entropy selector

    std::vector<std::string> member_names(const PolySystem& sys) const;
};

struct CandidatePool {
    std::vector<BasisCandidate> candidates;  // all valid, deterministic order
    mpz_class total_possible;                // N = C(n, k)
    std::size_t sampled = 0;                 // subsets actually tested (K or N)
    std::uint64_t seed = 0;
};

// Shared rank decomposition of the sampled Jacobian: one rref, reused by
// every candidate validity check.
struct RankDecomposition {
    std::size_t rank = 0;
    std::vector<int> columns;                  // ring index per Jacobian column
    std::vector<std::size_t> pivot_cols;       // positions into `columns`
    std::vector<std::size_t> free_cols;        // positions into `columns`
    // Kernel basis, one vector per free column, entries indexed by column
    // position (kernel[i][free_cols[i]] == 1).
    std::vector<std::vector<FpScalar>> kernel;
    std::uint64_t p = 0;
};

// Jacobian of sys at its witness under the default column order, reduced once.
RankDecomposition rank_decomposition(const PolySystem& sys);

// Algorithm 1: the non-pivot columns of the sampled Jacobian under the
// default column order. Deterministic; `seed` reserved for the documented
// resampling path (the witness Jacobian is already a fixed sample).
std::vector<int> find_independent(const PolySystem& sys, std::uint64_t seed = 0);

// |vars in table| - rank(Jacobian at the witness).
std::size_t transcendence_degree(const PolySystem& sys);

// True iff dropping S's columns preserves the Jacobian rank; evaluated via
// the kernel-projection criterion on a shared decomposition.
bool is_valid_basis(const PolySystem& sys, const std::vector<int>& S);
bool is_valid_basis(const RankDecomposition& dec, const std::vector<int>& S);

// Enumerate (or sample K of) the C(n,k) subsets of eligible variables and
// keep the valid ones. Deterministic given (sys, K, seed).
CandidatePool enumerate_candidates(const PolySystem& sys, std::size_t K = 3000,
                                   std::uint64_t seed = 0,
                                   bool parallel = true);

// One candidate per line: comma-separated member names, validity flag.
std::string dump_pool(const PolySystem& sys, const CandidatePool& pool);

}  // namespace identforge

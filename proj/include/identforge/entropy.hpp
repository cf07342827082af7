#pragma once

#include <string>
#include <vector>

#include "identforge/basis.hpp"
#include "identforge/prolong.hpp"

namespace identforge {

// Per-member monomial degree arrays for one candidate basis (§3.3 steps 1-4).
struct DegreeProfile {
    std::vector<int> members;                      // ring indices, basis order
    std::vector<std::vector<long>> degrees;        // A_mu per member
    std::vector<std::vector<double>> weights;      // normalized per member
    std::vector<double> entropies;                 // H_mu per member
};

// Collect every distinct monomial of the system containing at least one
// member of T; record its total degree once, attributed to the member with
// the highest exponent in the monomial (ties by variable name).
DegreeProfile degree_profile(const PolySystem& sys, const BasisCandidate& T);

// H = -sum w_m log2(w_m), w_m = d[m]/sum(d); empty or all-zero array -> 0.
double entropy(const std::vector<long>& degrees);

// Sort each candidate's entropies ascending, compare lexicographically
// (shorter tuples padded with -inf), return the maximum; ties broken by the
// lexicographically smaller member-name list. Profiles are parallel to
// pool.candidates.
const BasisCandidate& select_best(const CandidatePool& pool,
                                  const std::vector<DegreeProfile>& profiles,
                                  const PolySystem& sys);

// Fill candidate entropies in-place; parallel profile computation with a
// serial reference path.
std::vector<DegreeProfile> profile_pool(const PolySystem& sys,
                                        CandidatePool& pool,
                                        bool parallel = true);

// CSV: candidate id, member, entropy.
std::string entropy_csv(const PolySystem& sys, const CandidatePool& pool,
                        const std::vector<DegreeProfile>& profiles);

}  // namespace identforge

#pragma once

#include <cstdint>
#include <gmpxx.h>
#include <string>
#include <utility>
#include <vector>

#include "identforge/basis.hpp"
#include "identforge/prolong.hpp"

namespace identforge {

struct SubstitutionRecord {
    std::vector<std::pair<std::string, std::uint64_t>> values;  // member -> value
    mpz_class bound;        // Theorem-1 range bound (before the mod-p clamp)
    mpz_class bound_used;   // min(bound, p - 1), the range actually sampled
    std::uint64_t seed = 0;

    std::string to_json() const;
};

// ceil(4/3 * D2) with D2 = ceil(6 * system_degree / (1 - p)).
mpz_class sampling_bound(const PolySystem& sys, const mpq_class& prob);

// Substitute seeded random integers from [1, min(bound, p-1)] for the basis
// members; the result drops those variables from the table. Verified
// zero-dimensional at the restricted witness (full column rank); resamples
// on a zeroed polynomial or a rank shortfall, bounded retries.
std::pair<PolySystem, SubstitutionRecord> substitute_basis(
    const PolySystem& sys, const BasisCandidate& basis, std::uint64_t seed);

}  // namespace identforge

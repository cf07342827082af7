#pragma once

#include <cstdint>
#include <gmpxx.h>
#include <optional>
#include <string>
#include <vector>

#include "identforge/model.hpp"
#include "identforge/poly.hpp"

namespace identforge {

struct SpecializationConfig {
    std::uint64_t prime = 11863279;  // the paper's benchmark characteristic
    std::uint64_t seed = 0;
    mpz_class sampling_bound = 0;    // 0 = derive from Theorem 1 (4/3 * D2)
    mpq_class prob = mpq_class(1, 2);  // correctness probability target
    int max_retries = 25;
};

// Record of the sampled specialization point.
struct SpecializationRecord {
    std::vector<std::uint64_t> x0;                  // witness x* per state
    std::vector<std::uint64_t> mu;                  // witness per parameter
    std::vector<std::vector<std::uint64_t>> ujets;  // sampled input jets
    std::vector<std::vector<std::uint64_t>> yjets;  // folded output jet values
    std::uint64_t sat_value = 0;                    // witness for z_aux
    mpz_class bound_used;                           // sampling range actually used
};

// The specialized SIAN system E^t-hat. The variable table carries every
// initial condition (even for states that never reach an output cone); the
// Table-1 "num vars" statistic counts only variables occurring in some
// polynomial.
struct PolySystem {
    OdeModel model;
    RingPtr ring;
    std::vector<PPoly> polys;
    std::uint64_t prime = 0;
    std::vector<int> beta;  // prolongation order per output
    SpecializationConfig cfg;
    SpecializationRecord spec;
    // Witness values per ring variable (plug-in point of the system).
    std::vector<FpScalar> witness;

    std::size_t num_polys() const { return polys.size(); }
    // Table 1 statistic: table variables occurring in some polynomial, plus
    // all parameters (unknowns even with empty support).
    std::size_t num_vars() const;
    // Ring indices of eligible basis variables: parameters and initial
    // conditions, in default column order.
    std::vector<int> eligible_vars() const;
    // Default Jacobian column order: derivatives, z_aux, then initial
    // conditions and parameters (so rank-deficient directions land on
    // eligible columns).
    std::vector<int> default_columns() const;
};

// Build the specialized system: rank-governed output prolongation, chain
// equations by need-closure, denominator clearing, saturation pair, output
// jets folded as constants. Deterministic given (model, cfg).
PolySystem generate_Et(const OdeModel& model, const SpecializationConfig& cfg);

// Bezout-style product of total degrees, in arbitrary precision.
mpz_class system_degree(const PolySystem& sys);

// Canonical `.psys` serialization: header (prime, tagged variable table),
// then one polynomial per line.
std::string to_psys(const PolySystem& sys);

}  // namespace identforge

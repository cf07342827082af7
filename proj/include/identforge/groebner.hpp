#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "identforge/prolong.hpp"
#include "identforge/subst.hpp"

namespace identforge {

struct GroebnerConfig {
    std::size_t max_spairs = 1000000;  // S-pair budget
    double max_seconds = 600.0;        // wall-clock budget
};

struct GroebnerStats {
    std::size_t spairs_processed = 0;
    std::size_t reductions_to_zero = 0;
    double seconds = 0.0;
};

struct GroebnerBasis {
    std::vector<PPoly> gens;  // monic, interreduced, sorted by leading term
    MonomialOrder order;
    GroebnerStats stats;
    bool complete = true;  // false when a budget was exhausted
};

// Buchberger with the normal selection strategy (minimal lcm degree first)
// plus the product and chain criteria. Deterministic given order and input.
GroebnerBasis buchberger(const std::vector<PPoly>& gens, const MonomialOrder& order,
                         const GroebnerConfig& cfg = {});
GroebnerBasis buchberger(const PolySystem& sys, const MonomialOrder& order,
                         const GroebnerConfig& cfg = {});

// Remainder of multivariate division by G under G's order; no term of the
// result is divisible by any leading term of G.
PPoly normal_form(const PPoly& f, const GroebnerBasis& G);

enum class IdentClass { Global, Local, NonIdentifiable };

struct IdentEntry {
    std::string name;
    IdentClass cls;
    std::uint64_t witness = 0;
};

struct IdentReport {
    std::vector<IdentEntry> entries;          // eligible vars of the system
    std::vector<std::string> substituted;     // basis members, never classified
    bool basis_complete = true;

    std::string to_json() const;
};

// theta is globally identifiable iff NF(theta, G) is the constant witness
// value; locally identifiable iff removing its Jacobian column drops the
// rank but NF is non-constant; non-identifiable otherwise.
IdentReport classify(const GroebnerBasis& G, const PolySystem& sys);

enum class ExportFormat { Maple, Magma, Generic };

// Valid input script for the target engine: characteristic, ordered
// variables (weights emitted for weighted orders), polynomials, GB call.
std::string export_system(const PolySystem& sys, ExportFormat format,
                          const MonomialOrder& order);

// Reader for the Generic header (round-trip check of emitted weights).
struct GenericHeader {
    std::uint64_t prime = 0;
    std::vector<std::string> vars;
    std::vector<std::uint64_t> weights;  // empty for plain grevlex
};
GenericHeader parse_generic_header(const std::string& text);

}  // namespace identforge

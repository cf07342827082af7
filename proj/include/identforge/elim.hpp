#pragma once

#include <string>
#include <utility>
#include <vector>

#include "identforge/prolong.hpp"

namespace identforge {

// Gaussian pre-elimination: repeatedly solve a generator c*v + h (constant c,
// v absent from h) for a derivative variable v and substitute everywhere.
// This contracts the ideal to the remaining variables without changing the
// classification of parameters or initial conditions, mirroring the
// triangular shape of the chain equations.
struct Elimination {
    PolySystem reduced;
    // (variable name, defining polynomial in the original ring), in the
    // order they were eliminated.
    std::vector<std::pair<std::string, PPoly>> solved;
};

Elimination eliminate_linear(const PolySystem& sys);

}  // namespace identforge

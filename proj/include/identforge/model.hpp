#pragma once

#include <map>
#include <string>
#include <vector>

#include "identforge/expr.hpp"

namespace identforge {

// Parsed ODE model (Eq. 1): x' = f(x, mu, u), y = g(x, mu, u).
// Initial conditions x* are implicit unknowns, one per state.
struct OdeModel {
    std::vector<std::string> states;   // declaration order
    std::vector<std::string> params;   // first-appearance order
    std::vector<std::string> inputs;   // from the optional `in:` line
    std::vector<std::pair<std::string, Expr>> outputs;  // (name, g)
    std::map<std::string, Expr> rhs;   // state -> f

    bool is_state(const std::string& n) const;
    bool is_param(const std::string& n) const;
    bool is_input(const std::string& n) const;
};

// Parse the `.ode` DSL:
//   - `#` starts a comment;
//   - `in: u1, u2` declares inputs (optional);
//   - `name' = expr` declares a state equation;
//   - `name = expr` declares an output;
//   - parameters are all remaining free symbols.
// Greek identifiers are normalized to ASCII aliases (beta, gamma, ...).
// Throws ParseError on malformed input.
OdeModel parse_model(const std::string& text);

// Model invariant diagnostics; empty iff the model is well-formed.
std::vector<std::string> validate(const OdeModel& model);

// Canonical printer; parse(print_model(m)) is a fixed point.
std::string print_model(const OdeModel& model);

}  // namespace identforge

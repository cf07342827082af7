#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace identforge {

enum class VarKind {
    Parameter,      // mu_i
    InitState,      // x_i(0)
    Derivative,     // x_i^(j), j >= 1
    InputDeriv,     // u_i^(j) (only present before folding)
    OutputJet,      // y_j^(k) (only present before specialization)
    Aux,            // saturation variable
};

struct Var {
    std::string name;   // display name, e.g. "x3(0)", "gamma", "x1^(2)", "z_aux"
    VarKind kind;
    int group = -1;     // state/param/input/output index within its class
    int level = 0;      // derivative level (0 for InitState/Parameter)
};

// An ordered variable list shared by all polynomials of a system.
struct Ring {
    std::vector<Var> vars;
    std::map<std::string, int> index;  // name -> position

    int add(Var v) {
        int id = static_cast<int>(vars.size());
        index.emplace(v.name, id);
        vars.push_back(std::move(v));
        return id;
    }
    int find(const std::string& name) const {
        auto it = index.find(name);
        return it == index.end() ? -1 : it->second;
    }
    std::size_t size() const { return vars.size(); }
};

using RingPtr = std::shared_ptr<const Ring>;

inline std::string jet_name(const std::string& base, int level) {
    if (level == 0) return base + "(0)";
    return base + "^(" + std::to_string(level) + ")";
}

}  // namespace identforge

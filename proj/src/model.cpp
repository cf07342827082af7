#include "identforge/model.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace identforge {

bool OdeModel::is_state(const std::string& n) const {
    return std::find(states.begin(), states.end(), n) != states.end();
}
bool OdeModel::is_param(const std::string& n) const {
    return std::find(params.begin(), params.end(), n) != params.end();
}
bool OdeModel::is_input(const std::string& n) const {
    return std::find(inputs.begin(), inputs.end(), n) != inputs.end();
}

namespace {

// Greek letters appearing in the appendix models, normalized to ASCII.
const std::pair<const char*, const char*> kGreek[] = {
    {"α", "alpha"},   {"β", "beta"},    {"γ", "gamma"},
    {"δ", "delta"},   {"ε", "epsilon"}, {"λ", "lambda"},
    {"Λ", "Lambda"},  {"μ", "mu"},      {"µ", "mu"},
    {"σ", "sigma"},   {"ε", "epsilon"},
};

std::string normalize_greek(const std::string& in) {
    std::string out = in;
    for (const auto& [g, ascii] : kGreek) {
        std::size_t pos = 0;
        while ((pos = out.find(g, pos)) != std::string::npos) {
            out.replace(pos, std::string(g).size(), ascii);
            pos += std::string(ascii).size();
        }
    }
    return out;
}

bool valid_identifier(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

std::string strip(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

OdeModel parse_model(const std::string& text) {
    OdeModel m;
    std::istringstream is(normalize_greek(text));
    std::string rawline;
    int lineno = 0;
    std::vector<std::tuple<std::string, Expr, int>> states_seen;  // name, rhs, line
    while (std::getline(is, rawline)) {
        ++lineno;
        std::string line = rawline;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = strip(line);
        if (line.empty()) continue;

        if (line.rfind("in:", 0) == 0) {
            std::string rest = line.substr(3);
            std::istringstream ls(rest);
            std::string item;
            while (std::getline(ls, item, ',')) {
                item = strip(item);
                if (!valid_identifier(item))
                    throw ParseError("bad input name '" + item + "'", lineno, 1);
                m.inputs.push_back(item);
            }
            continue;
        }

        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected '=' in statement", lineno, 1);
        std::string lhs = strip(line.substr(0, eq));
        std::string rhs_text = strip(line.substr(eq + 1));
        if (rhs_text.empty())
            throw ParseError("empty right-hand side", lineno,
                             static_cast<int>(eq) + 2);

        bool is_state = !lhs.empty() && lhs.back() == '\'';
        if (is_state) lhs = strip(lhs.substr(0, lhs.size() - 1));
        if (!valid_identifier(lhs))
            throw ParseError("bad name '" + lhs + "'", lineno, 1);

        Expr e = parse_expression(rhs_text, lineno);
        if (is_state) {
            if (m.rhs.count(lhs))
                throw ParseError("duplicate equation \"" + lhs + "\"", lineno, 1);
            m.states.push_back(lhs);
            m.rhs.emplace(lhs, e);
        } else {
            m.outputs.emplace_back(lhs, e);
        }
    }

    // Remaining free symbols, in first-appearance order, are parameters.
    std::vector<std::string> symbols;
    for (const auto& s : m.states) collect_symbols(m.rhs.at(s), symbols);
    for (const auto& [name, g] : m.outputs) collect_symbols(g, symbols);
    for (const auto& sym : symbols) {
        if (m.is_state(sym) || m.is_input(sym)) continue;
        if (std::find(m.params.begin(), m.params.end(), sym) == m.params.end())
            m.params.push_back(sym);
    }

    auto diags = validate(m);
    if (!diags.empty()) throw ParseError(diags.front(), lineno, 1);
    return m;
}

namespace {

// Reject division nodes whose denominator is a syntactic zero constant.
void check_denominators(const Expr& e, std::vector<std::string>& diags) {
    if (!e) return;
    if (e->kind == ExprNode::Div) {
        const Expr& d = e->rhs;
        if (d->kind == ExprNode::Const && d->value == 0)
            diags.push_back("division by constant zero");
    }
    check_denominators(e->lhs, diags);
    check_denominators(e->rhs, diags);
}

}  // namespace

std::vector<std::string> validate(const OdeModel& m) {
    std::vector<std::string> diags;
    // one RHS per state
    for (const auto& s : m.states)
        if (!m.rhs.count(s)) diags.push_back("state '" + s + "' has no equation");
    std::vector<std::string> sorted_states = m.states;
    std::sort(sorted_states.begin(), sorted_states.end());
    for (std::size_t i = 1; i < sorted_states.size(); ++i)
        if (sorted_states[i] == sorted_states[i - 1])
            diags.push_back("duplicate equation \"" + sorted_states[i] + "\"");
    // symbols declared
    auto known = [&](const std::string& n) {
        return m.is_state(n) || m.is_param(n) || m.is_input(n);
    };
    auto check_expr = [&](const Expr& e, const std::string& where) {
        std::vector<std::string> syms;
        collect_symbols(e, syms);
        for (const auto& s : syms)
            if (!known(s))
                diags.push_back("unknown symbol \"" + s + "\" in " + where);
    };
    for (const auto& s : m.states)
        if (m.rhs.count(s)) check_expr(m.rhs.at(s), "equation for " + s);
    for (const auto& [name, g] : m.outputs) check_expr(g, "output " + name);
    // output names must not collide with states/params/inputs
    for (const auto& [name, g] : m.outputs) {
        (void)g;
        if (m.is_state(name) || m.is_input(name))
            diags.push_back("output name '" + name + "' collides with a declared symbol");
    }
    for (const auto& s : m.states)
        if (m.rhs.count(s)) check_denominators(m.rhs.at(s), diags);
    for (const auto& [name, g] : m.outputs) {
        (void)name;
        check_denominators(g, diags);
    }
    return diags;
}

std::string print_model(const OdeModel& m) {
    std::ostringstream os;
    if (!m.inputs.empty()) {
        os << "in: ";
        for (std::size_t i = 0; i < m.inputs.size(); ++i)
            os << (i ? ", " : "") << m.inputs[i];
        os << "\n";
    }
    for (const auto& s : m.states)
        os << s << "' = " << expr_to_string(m.rhs.at(s)) << "\n";
    for (const auto& [name, g] : m.outputs)
        os << name << " = " << expr_to_string(g) << "\n";
    return os.str();
}

}  // namespace identforge

#pragma once

#include <gmpxx.h>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace identforge {

// Expression tree over {exact rational, symbol, +, -, *, /, integer power}.
struct ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    enum Kind { Const, Symbol, Add, Sub, Mul, Div, Neg, Pow } kind;
    mpq_class value;      // Const
    std::string name;     // Symbol
    Expr lhs, rhs;        // binary / unary (lhs only for Neg, Pow base)
    unsigned exponent = 0;  // Pow
};

Expr make_const(mpq_class v);
Expr make_symbol(std::string name);
Expr make_binary(ExprNode::Kind k, Expr a, Expr b);
Expr make_neg(Expr a);
Expr make_pow(Expr base, unsigned e);

// Collect the distinct symbol names of an expression, in first-use order.
void collect_symbols(const Expr& e, std::vector<std::string>& order);

// Canonical infix form (explicit '*' and '^', minimal parentheses).
std::string expr_to_string(const Expr& e);

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, int line, int col)
        : std::runtime_error(msg + " (line " + std::to_string(line) +
                             ", column " + std::to_string(col) + ")"),
          line(line), col(col) {}
    int line, col;
};

// Parse a standalone arithmetic expression (used by the model parser and
// tests). `line` seeds error positions.
Expr parse_expression(const std::string& text, int line = 1);

}  // namespace identforge

#include "identforge/expr.hpp"

#include <cctype>
#include <sstream>

namespace identforge {

Expr make_const(mpq_class v) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Const;
    v.canonicalize();
    n->value = std::move(v);
    return n;
}

Expr make_symbol(std::string name) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Symbol;
    n->name = std::move(name);
    return n;
}

Expr make_binary(ExprNode::Kind k, Expr a, Expr b) {
    auto n = std::make_shared<ExprNode>();
    n->kind = k;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
}

Expr make_neg(Expr a) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Neg;
    n->lhs = std::move(a);
    return n;
}

Expr make_pow(Expr base, unsigned e) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Pow;
    n->lhs = std::move(base);
    n->exponent = e;
    return n;
}

void collect_symbols(const Expr& e, std::vector<std::string>& order) {
    if (!e) return;
    switch (e->kind) {
        case ExprNode::Symbol: {
            for (const auto& s : order)
                if (s == e->name) return;
            order.push_back(e->name);
            return;
        }
        case ExprNode::Const:
            return;
        default:
            collect_symbols(e->lhs, order);
            collect_symbols(e->rhs, order);
    }
}

namespace {

int precedence(ExprNode::Kind k) {
    switch (k) {
        case ExprNode::Add:
        case ExprNode::Sub: return 1;
        case ExprNode::Mul:
        case ExprNode::Div: return 2;
        case ExprNode::Neg: return 3;
        case ExprNode::Pow: return 4;
        default: return 5;
    }
}

void print(const Expr& e, std::ostringstream& os, int parent_prec) {
    int prec = precedence(e->kind);
    bool paren = prec < parent_prec;
    if (paren) os << "(";
    switch (e->kind) {
        case ExprNode::Const: {
            if (e->value < 0) {
                // keep the sign attached; parenthesize under products
                os << e->value;
            } else {
                os << e->value;
            }
            break;
        }
        case ExprNode::Symbol: os << e->name; break;
        case ExprNode::Add:
            print(e->lhs, os, prec);
            os << " + ";
            print(e->rhs, os, prec);
            break;
        case ExprNode::Sub:
            print(e->lhs, os, prec);
            os << " - ";
            print(e->rhs, os, prec + 1);
            break;
        case ExprNode::Mul:
            print(e->lhs, os, prec);
            os << "*";
            print(e->rhs, os, prec);
            break;
        case ExprNode::Div:
            print(e->lhs, os, prec);
            os << "/";
            print(e->rhs, os, prec + 1);
            break;
        case ExprNode::Neg:
            os << "-";
            print(e->lhs, os, prec + 1);
            break;
        case ExprNode::Pow:
            print(e->lhs, os, prec + 1);
            os << "^" << e->exponent;
            break;
    }
    if (paren) os << ")";
}

struct Tokenizer {
    const std::string& s;
    std::size_t pos = 0;
    int line;
    explicit Tokenizer(const std::string& text, int line) : s(text), line(line) {}

    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    }
    int col() const { return static_cast<int>(pos) + 1; }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    char get() {
        skip_ws();
        return pos < s.size() ? s[pos++] : '\0';
    }
    static bool ident_start(char c) {
        return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
    }
    static bool ident_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    }
    std::string identifier() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && ident_char(s[pos])) ++pos;
        return s.substr(start, pos - start);
    }
    mpq_class number() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        std::string intpart = s.substr(start, pos - start);
        if (pos < s.size() && s[pos] == '.') {
            ++pos;
            std::size_t fs = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            std::string frac = s.substr(fs, pos - fs);
            if (frac.empty())
                throw ParseError("malformed numeric literal", line, col());
            mpz_class num(intpart + frac);
            mpz_class den = 1;
            for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
            mpq_class q(num, den);
            q.canonicalize();
            return q;
        }
        return mpq_class(mpz_class(intpart));
    }
};

class ExprParser {
public:
    explicit ExprParser(Tokenizer& t) : t_(t) {}

    Expr parse() {
        Expr e = sum();
        if (!t_.eof())
            throw ParseError(std::string("unexpected character '") + t_.peek() + "'",
                             t_.line, t_.col());
        return e;
    }

private:
    Expr sum() {
        Expr e = product();
        while (true) {
            char c = t_.peek();
            if (c == '+') {
                t_.get();
                e = make_binary(ExprNode::Add, e, product());
            } else if (c == '-') {
                t_.get();
                e = make_binary(ExprNode::Sub, e, product());
            } else {
                return e;
            }
        }
    }
    Expr product() {
        Expr e = unary();
        while (true) {
            char c = t_.peek();
            if (c == '*') {
                t_.get();
                e = make_binary(ExprNode::Mul, e, unary());
            } else if (c == '/') {
                t_.get();
                e = make_binary(ExprNode::Div, e, unary());
            } else {
                return e;
            }
        }
    }
    Expr unary() {
        if (t_.peek() == '-') {
            t_.get();
            return make_neg(unary());
        }
        if (t_.peek() == '+') {
            t_.get();
            return unary();
        }
        return power();
    }
    Expr power() {
        Expr base = atom();
        if (t_.peek() == '^') {
            t_.get();
            bool neg = false;
            if (t_.peek() == '-') { neg = true; t_.get(); }
            if (!std::isdigit(static_cast<unsigned char>(t_.peek())))
                throw ParseError("exponent must be an integer literal", t_.line, t_.col());
            mpq_class e = t_.number();
            if (neg || e.get_den() != 1)
                throw ParseError("exponents must be nonnegative integers", t_.line, t_.col());
            unsigned long ev = e.get_num().get_ui();
            return make_pow(base, static_cast<unsigned>(ev));
        }
        return base;
    }
    Expr atom() {
        char c = t_.peek();
        if (c == '(') {
            t_.get();
            Expr e = sum();
            if (t_.peek() != ')')
                throw ParseError("expected ')'", t_.line, t_.col());
            t_.get();
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)))
            return make_const(t_.number());
        if (Tokenizer::ident_start(c))
            return make_symbol(t_.identifier());
        throw ParseError(std::string("unexpected character '") + c + "'",
                         t_.line, t_.col());
    }

    Tokenizer& t_;
};

}  // namespace

std::string expr_to_string(const Expr& e) {
    std::ostringstream os;
    print(e, os, 0);
    return os.str();
}

Expr parse_expression(const std::string& text, int line) {
    Tokenizer t(text, line);
    ExprParser p(t);
    return p.parse();
}

}  // namespace identforge

#pragma once

#include <algorithm>
#include <cstdint>
#include <gmpxx.h>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "identforge/fp.hpp"
#include "identforge/ring.hpp"

namespace identforge {

// Dense exponent vector; length always equals the ring size.
using Mono = std::vector<std::uint16_t>;

inline std::uint64_t mono_degree(const Mono& m) {
    std::uint64_t d = 0;
    for (auto e : m) d += e;
    return d;
}

struct MonomialOrder {
    enum Kind { Degrevlex, WeightedDegrevlex };
    Kind kind = Degrevlex;
    std::vector<std::uint64_t> weights;  // per-variable, used by weighted kind

    std::uint64_t degree(const Mono& m) const {
        if (kind == Degrevlex) return mono_degree(m);
        std::uint64_t d = 0;
        for (std::size_t i = 0; i < m.size(); ++i) d += weights.at(i) * m[i];
        return d;
    }
    // true iff a < b in the order.
    bool less(const Mono& a, const Mono& b) const {
        std::uint64_t da = degree(a), db = degree(b);
        if (da != db) return da < db;
        // revlex tie-break: scan from the last variable; the monomial with
        // the LARGER exponent in the last differing position is smaller.
        for (std::size_t i = a.size(); i-- > 0;) {
            if (a[i] != b[i]) return a[i] > b[i];
        }
        return false;
    }
};

inline MonomialOrder degrevlex() { return MonomialOrder{}; }

namespace coeff {
inline bool is_zero(const mpz_class& c) { return c == 0; }
inline bool is_zero(const FpScalar& c) { return c.is_zero(); }
inline std::string str(const mpz_class& c) { return c.get_str(); }
inline std::string str(const FpScalar& c) { return std::to_string(c.value()); }
}  // namespace coeff

// Sparse distributed multivariate polynomial. Terms are kept sorted
// descending under the plain degrevlex order — the canonical form used for
// equality, hashing and serialization. Monomial-order-sensitive algorithms
// (Buchberger) re-sort term lists internally.
template <class C>
class MultiPoly {
public:
    struct Term {
        Mono mono;
        C coeff;
    };

    MultiPoly() = default;
    explicit MultiPoly(RingPtr ring) : ring_(std::move(ring)) {}

    static MultiPoly zero(RingPtr ring) { return MultiPoly(std::move(ring)); }
    static MultiPoly constant(RingPtr ring, C c) {
        MultiPoly p(std::move(ring));
        if (!coeff::is_zero(c))
            p.terms_.push_back({Mono(p.ring_->size(), 0), std::move(c)});
        return p;
    }
    static MultiPoly variable(RingPtr ring, int v, C one) {
        MultiPoly p(std::move(ring));
        Mono m(p.ring_->size(), 0);
        m.at(static_cast<std::size_t>(v)) = 1;
        p.terms_.push_back({std::move(m), std::move(one)});
        return p;
    }

    const RingPtr& ring() const { return ring_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t num_terms() const { return terms_.size(); }

    bool is_constant() const {
        return terms_.empty() ||
               (terms_.size() == 1 && mono_degree(terms_[0].mono) == 0);
    }

    // -1 sentinel for the zero polynomial (documented).
    long total_degree() const {
        long d = -1;
        for (const auto& t : terms_)
            d = std::max(d, static_cast<long>(mono_degree(t.mono)));
        return d;
    }

    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
        a.check(b);
        MultiPoly r(a.ring_);
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < a.terms_.size() && j < b.terms_.size()) {
            if (canon_less(b.terms_[j].mono, a.terms_[i].mono)) {
                r.terms_.push_back(a.terms_[i++]);
            } else if (canon_less(a.terms_[i].mono, b.terms_[j].mono)) {
                r.terms_.push_back(b.terms_[j++]);
            } else {
                C s = a.terms_[i].coeff + b.terms_[j].coeff;
                if (!coeff::is_zero(s))
                    r.terms_.push_back({a.terms_[i].mono, std::move(s)});
                ++i; ++j;
            }
        }
        for (; i < a.terms_.size(); ++i) r.terms_.push_back(a.terms_[i]);
        for (; j < b.terms_.size(); ++j) r.terms_.push_back(b.terms_[j]);
        return r;
    }

    MultiPoly operator-() const {
        MultiPoly r(ring_);
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) r.terms_.push_back({t.mono, -t.coeff});
        return r;
    }

    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
        return a + (-b);
    }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        a.check(b);
        std::map<Mono, C, CanonGreater> acc;
        for (const auto& ta : a.terms_) {
            for (const auto& tb : b.terms_) {
                Mono m(a.ring_->size());
                for (std::size_t k = 0; k < m.size(); ++k) {
                    unsigned s = ta.mono[k] + tb.mono[k];
                    if (s > 0xFFFF) throw std::overflow_error("exponent overflow");
                    m[k] = static_cast<std::uint16_t>(s);
                }
                C c = ta.coeff * tb.coeff;
                auto it = acc.find(m);
                if (it == acc.end()) {
                    if (!coeff::is_zero(c)) acc.emplace(std::move(m), std::move(c));
                } else {
                    it->second = it->second + c;
                    if (coeff::is_zero(it->second)) acc.erase(it);
                }
            }
        }
        MultiPoly r(a.ring_);
        r.terms_.reserve(acc.size());
        for (auto& kv : acc) r.terms_.push_back({kv.first, kv.second});
        return r;
    }

    bool operator==(const MultiPoly& o) const {
        if (terms_.size() != o.terms_.size()) return false;
        for (std::size_t i = 0; i < terms_.size(); ++i)
            if (terms_[i].mono != o.terms_[i].mono ||
                !(coeff::is_zero(terms_[i].coeff - o.terms_[i].coeff)))
                return false;
        return true;
    }
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    MultiPoly partial_derivative(int v) const {
        MultiPoly r(ring_);
        for (const auto& t : terms_) {
            std::uint16_t e = t.mono[static_cast<std::size_t>(v)];
            if (e == 0) continue;
            Mono m = t.mono;
            m[static_cast<std::size_t>(v)] = static_cast<std::uint16_t>(e - 1);
            C c = scale_by_int(t.coeff, e);
            if (!coeff::is_zero(c)) r.terms_.push_back({std::move(m), std::move(c)});
        }
        // terms remain canonically sorted: decreasing one exponent preserves
        // relative degrevlex order only degree-wise; re-normalize to be safe.
        std::sort(r.terms_.begin(), r.terms_.end(), term_greater);
        return r;
    }

    // Substitute values for a subset of variables (map var index -> coeff).
    MultiPoly substitute(const std::map<int, C>& values) const {
        MultiPoly r = zero(ring_);
        for (const auto& t : terms_) {
            C c = t.coeff;
            Mono m = t.mono;
            bool dead = false;
            for (const auto& [v, val] : values) {
                std::uint16_t e = m[static_cast<std::size_t>(v)];
                if (e == 0) continue;
                C pw = pow_coeff(val, e);
                c = c * pw;
                m[static_cast<std::size_t>(v)] = 0;
                if (coeff::is_zero(c)) { dead = true; break; }
            }
            if (dead) continue;
            MultiPoly one_term(ring_);
            one_term.terms_.push_back({std::move(m), std::move(c)});
            r = r + one_term;
        }
        return r;
    }

    // Full evaluation at a point (values indexed by ring position).
    C evaluate(const std::vector<C>& point, const C& zero_val) const {
        C acc = zero_val;
        for (const auto& t : terms_) {
            C c = t.coeff;
            for (std::size_t k = 0; k < t.mono.size(); ++k)
                if (t.mono[k]) c = c * pow_coeff(point[k], t.mono[k]);
            acc = acc + c;
        }
        return acc;
    }

    std::vector<int> support() const {
        std::vector<char> seen(ring_->size(), 0);
        for (const auto& t : terms_)
            for (std::size_t k = 0; k < t.mono.size(); ++k)
                if (t.mono[k]) seen[k] = 1;
        std::vector<int> out;
        for (std::size_t k = 0; k < seen.size(); ++k)
            if (seen[k]) out.push_back(static_cast<int>(k));
        return out;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& t : terms_) {
            std::string cs = coeff::str(t.coeff);
            if (!first) {
                if (!cs.empty() && cs[0] == '-') {
                    os << " - ";
                    cs = cs.substr(1);
                } else {
                    os << " + ";
                }
            } else if (!cs.empty() && cs[0] == '-') {
                os << "-";
                cs = cs.substr(1);
            }
            first = false;
            bool printed = false;
            if (cs != "1" || mono_degree(t.mono) == 0) {
                os << cs;
                printed = true;
            }
            for (std::size_t k = 0; k < t.mono.size(); ++k) {
                if (!t.mono[k]) continue;
                if (printed) os << "*";
                os << ring_->vars[k].name;
                if (t.mono[k] > 1) os << "^" << t.mono[k];
                printed = true;
            }
        }
        return os.str();
    }

    // Internal: construct from a term list already combined; sorts canonically.
    static MultiPoly from_terms(RingPtr ring, std::vector<Term> terms) {
        MultiPoly p(std::move(ring));
        std::sort(terms.begin(), terms.end(), term_greater);
        p.terms_ = std::move(terms);
        return p;
    }

    // Canonical (plain degrevlex) comparison helpers, shared with Buchberger.
    static bool canon_less(const Mono& a, const Mono& b) {
        static const MonomialOrder ord{};
        return ord.less(a, b);
    }

private:
    struct CanonGreater {
        bool operator()(const Mono& a, const Mono& b) const {
            return canon_less(b, a);
        }
    };
    static bool term_greater(const Term& x, const Term& y) {
        return canon_less(y.mono, x.mono);
    }
    static C pow_coeff(const C& base, unsigned e) {
        C acc = base;  // e >= 1 at call sites
        for (unsigned i = 1; i < e; ++i) acc = acc * base;
        return acc;
    }
    static C scale_by_int(const C& c, unsigned n);

    void check(const MultiPoly& o) const {
        if (ring_ != o.ring_) throw std::invalid_argument("ring mismatch");
    }

    RingPtr ring_;
    std::vector<Term> terms_;
};

template <>
inline mpz_class MultiPoly<mpz_class>::scale_by_int(const mpz_class& c, unsigned n) {
    return c * static_cast<unsigned long>(n);
}
template <>
inline FpScalar MultiPoly<FpScalar>::scale_by_int(const FpScalar& c, unsigned n) {
    return c * FpScalar(n, c.modulus());
}

using ZPoly = MultiPoly<mpz_class>;
using PPoly = MultiPoly<FpScalar>;

enum class PolyOp { Add, Sub, Mul };

template <class C>
MultiPoly<C> poly_arith(const MultiPoly<C>& a, const MultiPoly<C>& b, PolyOp op) {
    switch (op) {
        case PolyOp::Add: return a + b;
        case PolyOp::Sub: return a - b;
        case PolyOp::Mul: return a * b;
    }
    throw std::invalid_argument("bad op");
}

template <class C>
long total_degree(const MultiPoly<C>& p) { return p.total_degree(); }

template <class C>
MultiPoly<C> partial_derivative(const MultiPoly<C>& p, int v) {
    return p.partial_derivative(v);
}

// Reduce integer coefficients mod p.
inline PPoly to_fp(const ZPoly& p, std::uint64_t prime) {
    std::vector<PPoly::Term> out;
    for (const auto& t : p.terms()) {
        mpz_class r = t.coeff % static_cast<long>(prime);
        if (r < 0) r += static_cast<long>(prime);
        std::uint64_t v = r.get_ui();
        if (v == 0) continue;
        out.push_back({t.mono, FpScalar(v, prime)});
    }
    return PPoly::from_terms(p.ring(), std::move(out));
}

}  // namespace identforge

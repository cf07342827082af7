#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace identforge {

// Arithmetic in F_p for a machine-word prime p. The modulus is carried by
// value so scalars from different fields cannot be mixed silently.
class FpScalar {
public:
    FpScalar() : v_(0), p_(0) {}
    FpScalar(std::uint64_t value, std::uint64_t p) : v_(value % p), p_(p) {}

    static FpScalar from_signed(std::int64_t value, std::uint64_t p) {
        std::int64_t r = value % static_cast<std::int64_t>(p);
        if (r < 0) r += static_cast<std::int64_t>(p);
        return FpScalar(static_cast<std::uint64_t>(r), p);
    }

    std::uint64_t value() const { return v_; }
    std::uint64_t modulus() const { return p_; }
    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    FpScalar operator+(const FpScalar& o) const {
        check(o);
        std::uint64_t s = v_ + o.v_;
        if (s >= p_) s -= p_;
        return raw(s, p_);
    }
    FpScalar operator-(const FpScalar& o) const {
        check(o);
        return raw(v_ >= o.v_ ? v_ - o.v_ : v_ + p_ - o.v_, p_);
    }
    FpScalar operator-() const { return raw(v_ == 0 ? 0 : p_ - v_, p_); }
    FpScalar operator*(const FpScalar& o) const {
        check(o);
        return raw(static_cast<std::uint64_t>(
                       (static_cast<unsigned __int128>(v_) * o.v_) % p_),
                   p_);
    }
    FpScalar inv() const {
        if (v_ == 0) throw std::domain_error("FpScalar: inverse of zero");
        // Extended Euclid.
        std::int64_t t = 0, newt = 1;
        std::int64_t r = static_cast<std::int64_t>(p_),
                     newr = static_cast<std::int64_t>(v_);
        while (newr != 0) {
            std::int64_t q = r / newr;
            std::int64_t tmp = t - q * newt;
            t = newt; newt = tmp;
            tmp = r - q * newr;
            r = newr; newr = tmp;
        }
        if (r != 1) throw std::domain_error("FpScalar: modulus not prime?");
        if (t < 0) t += static_cast<std::int64_t>(p_);
        return raw(static_cast<std::uint64_t>(t), p_);
    }
    FpScalar operator/(const FpScalar& o) const { return *this * o.inv(); }

    bool operator==(const FpScalar& o) const { return v_ == o.v_ && p_ == o.p_; }
    bool operator!=(const FpScalar& o) const { return !(*this == o); }

    FpScalar pow(std::uint64_t e) const {
        FpScalar base = *this, acc = raw(1 % p_, p_);
        while (e) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

private:
    static FpScalar raw(std::uint64_t v, std::uint64_t p) {
        FpScalar s;
        s.v_ = v;
        s.p_ = p;
        return s;
    }
    void check(const FpScalar& o) const {
        if (p_ != o.p_) throw std::invalid_argument("FpScalar: modulus mismatch");
    }
    std::uint64_t v_;
    std::uint64_t p_;
};

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

inline void require_prime(std::uint64_t p) {
    if (!is_prime_u64(p))
        throw std::invalid_argument("characteristic " + std::to_string(p) +
                                    " is not prime");
}

}  // namespace identforge

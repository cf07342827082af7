#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "identforge/fp.hpp"
#include "identforge/model.hpp"

namespace identforge {

// Thrown when a sampled point hits a pole (division by zero in F_p);
// callers resample with a fresh point.
struct SampleFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// First-order dual number over F_p: value + eps * deriv, eps^2 = 0.
struct DualFp {
    FpScalar a, b;
    DualFp() = default;
    DualFp(FpScalar a, FpScalar b) : a(a), b(b) {}

    DualFp operator+(const DualFp& o) const { return {a + o.a, b + o.b}; }
    DualFp operator-(const DualFp& o) const { return {a - o.a, b - o.b}; }
    DualFp operator-() const { return {-a, -b}; }
    DualFp operator*(const DualFp& o) const {
        return {a * o.a, a * o.b + b * o.a};
    }
    DualFp inv() const {
        if (a.is_zero()) throw SampleFailure("dual inverse at zero");
        FpScalar ia = a.inv();
        return {ia, -(b * ia * ia)};
    }
    DualFp operator/(const DualFp& o) const { return *this * o.inv(); }
};

// Truncated power series with scalar coefficients (T = FpScalar or DualFp).
template <class T>
struct Series {
    std::vector<T> c;  // coefficient of t^k at index k

    static Series constant(T v, std::size_t len, T zero) {
        Series s;
        s.c.assign(len, zero);
        s.c[0] = v;
        return s;
    }
    std::size_t size() const { return c.size(); }

    Series operator+(const Series& o) const {
        Series r = *this;
        for (std::size_t i = 0; i < c.size(); ++i) r.c[i] = c[i] + o.c[i];
        return r;
    }
    Series operator-(const Series& o) const {
        Series r = *this;
        for (std::size_t i = 0; i < c.size(); ++i) r.c[i] = c[i] - o.c[i];
        return r;
    }
    Series operator-() const {
        Series r = *this;
        for (auto& x : r.c) x = -x;
        return r;
    }
    Series operator*(const Series& o) const {
        Series r;
        r.c.assign(c.size(), c[0] - c[0]);  // zeros of the right modulus
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = 0; i + j < c.size(); ++j)
                r.c[i + j] = r.c[i + j] + c[i] * o.c[j];
        return r;
    }
    Series inv() const {
        // Newton-free direct recurrence: q0 = 1/c0; qk = -1/c0 * sum c_i q_{k-i}.
        Series q;
        T ic0 = invert(c[0]);
        q.c.assign(c.size(), c[0] - c[0]);
        q.c[0] = ic0;
        for (std::size_t k = 1; k < c.size(); ++k) {
            T acc = c[0] - c[0];
            for (std::size_t i = 1; i <= k; ++i) acc = acc + c[i] * q.c[k - i];
            q.c[k] = -(acc * ic0);
        }
        return q;
    }
    Series operator/(const Series& o) const { return *this * o.inv(); }

private:
    static FpScalar invert(const FpScalar& x) {
        if (x.is_zero()) throw SampleFailure("series inverse at zero");
        return x.inv();
    }
    static DualFp invert(const DualFp& x) { return x.inv(); }
};

// Sampled evaluation point for jet computations (values already in [0, p)).
struct JetPoint {
    std::vector<std::uint64_t> x0;                  // per state
    std::vector<std::uint64_t> mu;                  // per parameter
    std::vector<std::vector<std::uint64_t>> ujets;  // per input, per level
};

// Evaluates output jets y_j^(k) and their gradients with respect to the
// unknowns (x*, mu) at a sampled point, via truncated Taylor series of dual
// numbers. Level k jets are valid for k < len-? (len = levels requested).
class JetEvaluator {
public:
    // with_gradients=false skips the dual passes (value-only evaluation).
    JetEvaluator(const OdeModel& model, std::uint64_t prime, std::size_t levels,
                 const JetPoint& point, bool with_gradients = true);

    std::size_t levels() const { return levels_; }
    std::size_t num_unknowns() const { return n_ + lambda_; }

    // Value of y_j^(k) at the point.
    FpScalar output_jet(std::size_t j, std::size_t k) const;
    // Value of x_i^(k) at the point.
    FpScalar state_jet(std::size_t i, std::size_t k) const;
    // Gradient row d y_j^(k) / d (x*_0..n-1, mu_0..lambda-1).
    std::vector<FpScalar> output_jet_gradient(std::size_t j, std::size_t k) const;

private:
    void run_value_pass(const JetPoint& point);
    void run_dual_pass(const JetPoint& point, std::size_t dir);

    const OdeModel& model_;
    std::uint64_t p_;
    std::size_t levels_, n_, lambda_;
    std::vector<FpScalar> factorial_;
    // value pass results
    std::vector<Series<FpScalar>> state_series_;
    std::vector<Series<FpScalar>> output_series_;
    // dual pass results: [direction][output] series, dual parts only needed
    std::vector<std::vector<Series<DualFp>>> output_series_dual_;
};

}  // namespace identforge

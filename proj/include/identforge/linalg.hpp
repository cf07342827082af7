#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "identforge/fp.hpp"
#include "identforge/poly.hpp"

namespace identforge {

// Dense matrix over F_p with column labels.
struct FpMatrix {
    std::size_t rows = 0, cols = 0;
    std::uint64_t p = 0;
    std::vector<std::uint64_t> data;          // row-major values in [0, p)
    std::vector<std::string> labels;          // per column

    FpMatrix() = default;
    FpMatrix(std::size_t r, std::size_t c, std::uint64_t p)
        : rows(r), cols(c), p(p), data(r * c, 0), labels(c) {}

    std::uint64_t& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    std::uint64_t at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

// In-place reduction to reduced row-echelon form; returns pivot column indices
// (ordered). Plain Gaussian elimination with first-nonzero pivoting.
std::vector<std::size_t> rref(FpMatrix& m);

inline std::vector<std::size_t> pivot_columns(FpMatrix m) { return rref(m); }
inline std::size_t rank(const FpMatrix& m) {
    FpMatrix c = m;
    return rref(c).size();
}

// Incremental row-space basis: feed rows one at a time; tells whether each
// row enlarged the span. Used by the prolongation sweep rule.
class RowSpace {
public:
    explicit RowSpace(std::size_t cols, std::uint64_t p) : cols_(cols), p_(p) {}
    // Returns true iff the row was independent of the current span (and was
    // absorbed into the basis).
    bool add(std::vector<FpScalar> row);
    std::size_t rank() const { return basis_.size(); }

private:
    std::size_t cols_;
    std::uint64_t p_;
    std::vector<std::vector<FpScalar>> basis_;  // echelonized rows
    std::vector<std::size_t> lead_;             // leading column per basis row
};

// Jacobian of a polynomial system's polys with respect to an ordered variable
// subset, evaluated at a point (values per ring position).
FpMatrix jacobian_at(const std::vector<PPoly>& polys,
                     const std::vector<int>& vars,
                     const std::vector<FpScalar>& point, std::uint64_t p);

}  // namespace identforge

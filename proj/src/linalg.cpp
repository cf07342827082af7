#include "identforge/linalg.hpp"

namespace identforge {

std::vector<std::size_t> rref(FpMatrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
        std::size_t sel = row;
        while (sel < m.rows && m.at(sel, col) == 0) ++sel;
        if (sel == m.rows) continue;
        if (sel != row)
            for (std::size_t c = 0; c < m.cols; ++c)
                std::swap(m.at(sel, c), m.at(row, c));
        FpScalar piv(m.at(row, col), m.p);
        FpScalar ipiv = piv.inv();
        for (std::size_t c = col; c < m.cols; ++c)
            m.at(row, c) = (FpScalar(m.at(row, c), m.p) * ipiv).value();
        for (std::size_t r = 0; r < m.rows; ++r) {
            if (r == row || m.at(r, col) == 0) continue;
            FpScalar factor(m.at(r, col), m.p);
            for (std::size_t c = col; c < m.cols; ++c) {
                FpScalar v = FpScalar(m.at(r, c), m.p) -
                             factor * FpScalar(m.at(row, c), m.p);
                m.at(r, c) = v.value();
            }
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

bool RowSpace::add(std::vector<FpScalar> row) {
    for (std::size_t b = 0; b < basis_.size(); ++b) {
        const FpScalar& x = row[lead_[b]];
        if (x.is_zero()) continue;
        FpScalar factor = x;  // basis rows are normalized to leading 1
        for (std::size_t c = 0; c < cols_; ++c)
            row[c] = row[c] - factor * basis_[b][c];
    }
    std::size_t lead = cols_;
    for (std::size_t c = 0; c < cols_; ++c)
        if (!row[c].is_zero()) { lead = c; break; }
    if (lead == cols_) return false;
    FpScalar il = row[lead].inv();
    for (std::size_t c = 0; c < cols_; ++c) row[c] = row[c] * il;
    // keep the basis mutually reduced so one elimination pass stays sound
    for (std::size_t b = 0; b < basis_.size(); ++b) {
        const FpScalar& f = basis_[b][lead];
        if (f.is_zero()) continue;
        FpScalar factor = f;
        for (std::size_t c = 0; c < cols_; ++c)
            basis_[b][c] = basis_[b][c] - factor * row[c];
    }
    basis_.push_back(std::move(row));
    lead_.push_back(lead);
    return true;
}

FpMatrix jacobian_at(const std::vector<PPoly>& polys,
                     const std::vector<int>& vars,
                     const std::vector<FpScalar>& point, std::uint64_t p) {
    FpMatrix m(polys.size(), vars.size(), p);
    for (std::size_t i = 0; i < polys.size(); ++i) {
        for (std::size_t j = 0; j < vars.size(); ++j) {
            PPoly d = polys[i].partial_derivative(vars[j]);
            m.at(i, j) = d.evaluate(point, FpScalar(0, p)).value();
        }
    }
    for (std::size_t j = 0; j < vars.size(); ++j)
        if (!polys.empty())
            m.labels[j] = polys[0].ring()->vars[static_cast<std::size_t>(vars[j])].name;
    return m;
}

}  // namespace identforge

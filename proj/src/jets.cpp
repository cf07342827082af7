#include "identforge/jets.hpp"

#include <map>

namespace identforge {

namespace {

// Evaluate an expression over an arbitrary scalar/series domain.
template <class T>
T eval_expr(const Expr& e, const std::function<T(const std::string&)>& symbol,
            const std::function<T(const mpq_class&)>& constant) {
    switch (e->kind) {
        case ExprNode::Const: return constant(e->value);
        case ExprNode::Symbol: return symbol(e->name);
        case ExprNode::Add:
            return eval_expr(e->lhs, symbol, constant) +
                   eval_expr(e->rhs, symbol, constant);
        case ExprNode::Sub:
            return eval_expr(e->lhs, symbol, constant) -
                   eval_expr(e->rhs, symbol, constant);
        case ExprNode::Mul:
            return eval_expr(e->lhs, symbol, constant) *
                   eval_expr(e->rhs, symbol, constant);
        case ExprNode::Div:
            return eval_expr(e->lhs, symbol, constant) /
                   eval_expr(e->rhs, symbol, constant);
        case ExprNode::Neg: return -eval_expr(e->lhs, symbol, constant);
        case ExprNode::Pow: {
            T b = eval_expr(e->lhs, symbol, constant);
            T acc = constant(mpq_class(1));
            for (unsigned i = 0; i < e->exponent; ++i) acc = acc * b;
            return acc;
        }
    }
    throw std::logic_error("bad expr node");
}

FpScalar fp_of_mpq(const mpq_class& q, std::uint64_t p) {
    mpz_class num = q.get_num() % static_cast<long>(p);
    if (num < 0) num += static_cast<long>(p);
    mpz_class den = q.get_den() % static_cast<long>(p);
    FpScalar n(num.get_ui(), p), d(den.get_ui(), p);
    if (d.is_zero()) throw SampleFailure("constant denominator divisible by p");
    return n / d;
}

}  // namespace

JetEvaluator::JetEvaluator(const OdeModel& model, std::uint64_t prime,
                           std::size_t levels, const JetPoint& point,
                           bool with_gradients)
    : model_(model),
      p_(prime),
      levels_(levels),
      n_(model.states.size()),
      lambda_(model.params.size()) {
    factorial_.reserve(levels_ + 1);
    FpScalar f(1, p_);
    factorial_.push_back(f);
    for (std::size_t k = 1; k <= levels_; ++k) {
        f = f * FpScalar(k, p_);
        factorial_.push_back(f);
    }
    run_value_pass(point);
    if (!with_gradients) return;
    output_series_dual_.resize(n_ + lambda_);
    for (std::size_t d = 0; d < n_ + lambda_; ++d) run_dual_pass(point, d);
}

void JetEvaluator::run_value_pass(const JetPoint& point) {
    const std::size_t L = levels_ + 1;
    FpScalar zero(0, p_), one(1, p_);
    // input series: u_i(t) = sum ujets[i][k] t^k / k!
    std::vector<Series<FpScalar>> u_series;
    for (std::size_t i = 0; i < model_.inputs.size(); ++i) {
        Series<FpScalar> s = Series<FpScalar>::constant(zero, L, zero);
        for (std::size_t k = 0; k < L; ++k) {
            std::uint64_t v = k < point.ujets.at(i).size() ? point.ujets[i][k] : 0;
            s.c[k] = FpScalar(v, p_) * factorial_[k].inv();
        }
        u_series.push_back(std::move(s));
    }
    state_series_.assign(n_, Series<FpScalar>::constant(zero, L, zero));
    for (std::size_t i = 0; i < n_; ++i)
        state_series_[i].c[0] = FpScalar(point.x0.at(i), p_);

    auto symbol = [&](const std::string& name) -> Series<FpScalar> {
        for (std::size_t i = 0; i < n_; ++i)
            if (model_.states[i] == name) return state_series_[i];
        for (std::size_t i = 0; i < lambda_; ++i)
            if (model_.params[i] == name)
                return Series<FpScalar>::constant(FpScalar(point.mu.at(i), p_), L, zero);
        for (std::size_t i = 0; i < model_.inputs.size(); ++i)
            if (model_.inputs[i] == name) return u_series[i];
        throw std::logic_error("unresolved symbol " + name);
    };
    auto constant = [&](const mpq_class& q) -> Series<FpScalar> {
        return Series<FpScalar>::constant(fp_of_mpq(q, p_), L, zero);
    };
    std::function<Series<FpScalar>(const std::string&)> fsym = symbol;
    std::function<Series<FpScalar>(const mpq_class&)> fconst = constant;

    for (std::size_t k = 0; k + 1 < L; ++k) {
        // coefficient k of f_i is valid once coefficients 0..k of states are.
        std::vector<FpScalar> next(n_, zero);
        for (std::size_t i = 0; i < n_; ++i) {
            Series<FpScalar> fs =
                eval_expr<Series<FpScalar>>(model_.rhs.at(model_.states[i]), fsym, fconst);
            next[i] = fs.c[k] * FpScalar(k + 1, p_).inv();
        }
        for (std::size_t i = 0; i < n_; ++i) state_series_[i].c[k + 1] = next[i];
    }
    output_series_.clear();
    for (const auto& [name, g] : model_.outputs) {
        (void)name;
        output_series_.push_back(eval_expr<Series<FpScalar>>(g, fsym, fconst));
    }
    (void)one;
}

void JetEvaluator::run_dual_pass(const JetPoint& point, std::size_t dir) {
    const std::size_t L = levels_ + 1;
    FpScalar z(0, p_), o(1, p_);
    DualFp dzero(z, z);
    std::vector<Series<DualFp>> u_series;
    for (std::size_t i = 0; i < model_.inputs.size(); ++i) {
        Series<DualFp> s = Series<DualFp>::constant(dzero, L, dzero);
        for (std::size_t k = 0; k < L; ++k) {
            std::uint64_t v = k < point.ujets.at(i).size() ? point.ujets[i][k] : 0;
            s.c[k] = DualFp(FpScalar(v, p_) * factorial_[k].inv(), z);
        }
        u_series.push_back(std::move(s));
    }
    std::vector<Series<DualFp>> xs(n_, Series<DualFp>::constant(dzero, L, dzero));
    for (std::size_t i = 0; i < n_; ++i)
        xs[i].c[0] = DualFp(FpScalar(point.x0.at(i), p_), dir == i ? o : z);

    auto symbol = [&](const std::string& name) -> Series<DualFp> {
        for (std::size_t i = 0; i < n_; ++i)
            if (model_.states[i] == name) return xs[i];
        for (std::size_t i = 0; i < lambda_; ++i)
            if (model_.params[i] == name)
                return Series<DualFp>::constant(
                    DualFp(FpScalar(point.mu.at(i), p_), dir == n_ + i ? o : z), L,
                    dzero);
        for (std::size_t i = 0; i < model_.inputs.size(); ++i)
            if (model_.inputs[i] == name) return u_series[i];
        throw std::logic_error("unresolved symbol " + name);
    };
    auto constant = [&](const mpq_class& q) -> Series<DualFp> {
        return Series<DualFp>::constant(DualFp(fp_of_mpq(q, p_), z), L, dzero);
    };
    std::function<Series<DualFp>(const std::string&)> fsym = symbol;
    std::function<Series<DualFp>(const mpq_class&)> fconst = constant;

    for (std::size_t k = 0; k + 1 < L; ++k) {
        std::vector<DualFp> next(n_, dzero);
        for (std::size_t i = 0; i < n_; ++i) {
            Series<DualFp> fs =
                eval_expr<Series<DualFp>>(model_.rhs.at(model_.states[i]), fsym, fconst);
            DualFp inv_k1(FpScalar(k + 1, p_).inv(), z);
            next[i] = fs.c[k] * inv_k1;
        }
        for (std::size_t i = 0; i < n_; ++i) xs[i].c[k + 1] = next[i];
    }
    auto& out = output_series_dual_[dir];
    out.clear();
    for (const auto& [name, g] : model_.outputs) {
        (void)name;
        out.push_back(eval_expr<Series<DualFp>>(g, fsym, fconst));
    }
}

FpScalar JetEvaluator::output_jet(std::size_t j, std::size_t k) const {
    return output_series_.at(j).c.at(k) * factorial_.at(k);
}

FpScalar JetEvaluator::state_jet(std::size_t i, std::size_t k) const {
    return state_series_.at(i).c.at(k) * factorial_.at(k);
}

std::vector<FpScalar> JetEvaluator::output_jet_gradient(std::size_t j,
                                                        std::size_t k) const {
    std::vector<FpScalar> row;
    row.reserve(n_ + lambda_);
    for (std::size_t d = 0; d < n_ + lambda_; ++d)
        row.push_back(output_series_dual_.at(d).at(j).c.at(k).b * factorial_.at(k));
    return row;
}

}  // namespace identforge

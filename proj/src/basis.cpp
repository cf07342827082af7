#include "identforge/basis.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace identforge {

std::vector<std::string> BasisCandidate::member_names(const PolySystem& sys) const {
    std::vector<std::string> out;
    for (int v : members) out.push_back(sys.ring->vars[static_cast<std::size_t>(v)].name);
    return out;
}

RankDecomposition rank_decomposition(const PolySystem& sys) {
    RankDecomposition dec;
    dec.p = sys.prime;
    dec.columns = sys.default_columns();
    FpMatrix J = jacobian_at(sys.polys, dec.columns, sys.witness, sys.prime);
    std::vector<std::size_t> piv = rref(J);
    dec.rank = piv.size();
    dec.pivot_cols = piv;
    std::vector<char> is_piv(dec.columns.size(), 0);
    for (std::size_t c : piv) is_piv[c] = 1;
    for (std::size_t c = 0; c < dec.columns.size(); ++c)
        if (!is_piv[c]) dec.free_cols.push_back(c);
    // Kernel vector per free column f: 1 at f, -R[r][f] at pivot column of
    // row r, 0 elsewhere (R is the rref matrix).
    for (std::size_t f : dec.free_cols) {
        std::vector<FpScalar> k(dec.columns.size(), FpScalar(0, sys.prime));
        k[f] = FpScalar(1, sys.prime);
        for (std::size_t r = 0; r < piv.size(); ++r)
            k[piv[r]] = -FpScalar(J.at(r, f), sys.prime);
        dec.kernel.push_back(std::move(k));
    }
    return dec;
}

std::vector<int> find_independent(const PolySystem& sys, std::uint64_t seed) {
    (void)seed;  // the witness Jacobian is the (already random) sample
    RankDecomposition dec = rank_decomposition(sys);
    std::vector<int> out;
    for (std::size_t f : dec.free_cols) out.push_back(dec.columns[f]);
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t transcendence_degree(const PolySystem& sys) {
    return sys.ring->size() - rank_decomposition(sys).rank;
}

bool is_valid_basis(const RankDecomposition& dec, const std::vector<int>& S) {
    const std::size_t t = dec.kernel.size();
    if (S.size() != t)
        throw std::invalid_argument("basis size must equal transcendence degree");
    if (t == 0) return true;
    // Position of each S member among the Jacobian columns.
    std::vector<std::size_t> pos;
    pos.reserve(t);
    std::map<int, std::size_t> col_of;
    for (std::size_t c = 0; c < dec.columns.size(); ++c) col_of[dec.columns[c]] = c;
    for (int v : S) {
        auto it = col_of.find(v);
        if (it == col_of.end()) throw std::invalid_argument("variable not in table");
        pos.push_back(it->second);
    }
    // S is valid iff the kernel basis restricted to S's coordinates has full
    // rank t (equivalently: dropping S's columns preserves the row rank).
    std::vector<std::vector<FpScalar>> M;
    for (const auto& k : dec.kernel) {
        std::vector<FpScalar> row;
        for (std::size_t p : pos) row.push_back(k[p]);
        M.push_back(std::move(row));
    }
    // Gaussian elimination on the t x t matrix.
    std::size_t r = 0;
    for (std::size_t c = 0; c < t && r < t; ++c) {
        std::size_t piv = r;
        while (piv < t && M[piv][c].is_zero()) ++piv;
        if (piv == t) continue;
        std::swap(M[piv], M[r]);
        FpScalar inv = M[r][c].inv();
        for (std::size_t j = c; j < t; ++j) M[r][j] = M[r][j] * inv;
        for (std::size_t i = 0; i < t; ++i) {
            if (i == r || M[i][c].is_zero()) continue;
            FpScalar f = M[i][c];
            for (std::size_t j = c; j < t; ++j) M[i][j] = M[i][j] - f * M[r][j];
        }
        ++r;
    }
    return r == t;
}

bool is_valid_basis(const PolySystem& sys, const std::vector<int>& S) {
    return is_valid_basis(rank_decomposition(sys), S);
}

namespace {

mpz_class binomial(std::size_t n, std::size_t k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

// Next k-combination of indices in increasing order; false when exhausted.
bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
    const std::size_t k = c.size();
    for (std::size_t i = k; i-- > 0;) {
        if (c[i] < n - k + i) {
            ++c[i];
            for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

}  // namespace

CandidatePool enumerate_candidates(const PolySystem& sys, std::size_t K,
                                   std::uint64_t seed, bool parallel) {
    if (K < 1) throw std::invalid_argument("candidate cap must be >= 1");
    RankDecomposition dec = rank_decomposition(sys);
    const std::size_t k = dec.kernel.size();
    std::vector<int> eligible = sys.eligible_vars();
    const std::size_t n = eligible.size();
    if (k > n)
        throw std::runtime_error(
            "transcendence degree exceeds eligible variable count");

    CandidatePool pool;
    pool.seed = seed;
    pool.total_possible = binomial(n, k);

    if (k == 0) {
        pool.sampled = 1;
        pool.candidates.push_back(BasisCandidate{{}, true, {}});
        return pool;
    }

    // Build the list of subsets to test (index tuples into `eligible`).
    std::vector<std::vector<std::size_t>> subsets;
    if (pool.total_possible <= static_cast<long>(K)) {
        std::vector<std::size_t> c(k);
        for (std::size_t i = 0; i < k; ++i) c[i] = i;
        do {
            subsets.push_back(c);
        } while (next_combination(c, n));
    } else {
        std::mt19937_64 rng(seed);
        std::set<std::vector<std::size_t>> seen;
        while (seen.size() < K) {
            // Floyd-style distinct sample of k indices, then sort.
            std::set<std::size_t> pick;
            for (std::size_t j = n - k; j < n; ++j) {
                std::size_t v = rng() % (j + 1);
                if (!pick.insert(v).second) pick.insert(j);
            }
            seen.emplace(pick.begin(), pick.end());
        }
        subsets.assign(seen.begin(), seen.end());
    }
    pool.sampled = subsets.size();

    std::vector<char> ok(subsets.size(), 0);
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (long i = 0; i < static_cast<long>(subsets.size()); ++i) {
            std::vector<int> S;
            for (std::size_t idx : subsets[static_cast<std::size_t>(i)])
                S.push_back(eligible[idx]);
            ok[static_cast<std::size_t>(i)] = is_valid_basis(dec, S) ? 1 : 0;
        }
    } else {
        for (std::size_t i = 0; i < subsets.size(); ++i) {
            std::vector<int> S;
            for (std::size_t idx : subsets[i]) S.push_back(eligible[idx]);
            ok[i] = is_valid_basis(dec, S) ? 1 : 0;
        }
    }
    for (std::size_t i = 0; i < subsets.size(); ++i) {
        if (!ok[i]) continue;
        BasisCandidate c;
        for (std::size_t idx : subsets[i]) c.members.push_back(eligible[idx]);
        std::sort(c.members.begin(), c.members.end());
        c.valid = true;
        pool.candidates.push_back(std::move(c));
    }
    if (pool.candidates.empty())
        throw std::runtime_error(
            "no valid candidate basis found (inconsistent rank computation?)");
    // Deterministic merge order: sort by member names.
    std::sort(pool.candidates.begin(), pool.candidates.end(),
              [&](const BasisCandidate& a, const BasisCandidate& b) {
                  return a.member_names(sys) < b.member_names(sys);
              });
    return pool;
}

std::string dump_pool(const PolySystem& sys, const CandidatePool& pool) {
    std::ostringstream os;
    for (const auto& c : pool.candidates) {
        auto names = c.member_names(sys);
        for (std::size_t i = 0; i < names.size(); ++i)
            os << (i ? "," : "") << names[i];
        os << (names.empty() ? "valid" : " valid") << "\n";
    }
    return os.str();
}

}  // namespace identforge

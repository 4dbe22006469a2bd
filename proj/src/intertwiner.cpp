#include "superkac/intertwiner.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace superkac {

std::optional<std::vector<BlockKey>> diagonal_keys(const std::vector<const SparseRationalMatrix*>& diagonals,
                                                   int dim) {
    std::vector<BlockKey> keys(static_cast<std::size_t>(dim));
    for (const auto* m : diagonals) {
        for (int c = 0; c < dim; ++c) {
            const auto& col = m->column(c);
            if (col.nnz() > 1) return std::nullopt;
            Rational d(0);
            if (col.nnz() == 1) {
                if (col.entries()[0].first != c) return std::nullopt;
                d = col.entries()[0].second;
            }
            keys[static_cast<std::size_t>(c)].push_back(d);
        }
    }
    return keys;
}

namespace {

struct System {
    // column per free unknown, keyed equation rows discovered on demand
    std::vector<SparseVector> columns;
    std::vector<std::vector<SparseVector::Entry>> pending; // per unknown
    std::unordered_map<long long, int> row_of;
    int n_rows = 0;

    int row(long long key) {
        auto it = row_of.find(key);
        if (it != row_of.end()) return it->second;
        row_of.emplace(key, n_rows);
        return n_rows++;
    }
};

bool keys_match(const std::vector<BlockKey>* ka, const std::vector<BlockKey>* kb, int j, int i) {
    if (!ka || !kb) return true;
    return (*ka)[static_cast<std::size_t>(j)] == (*kb)[static_cast<std::size_t>(i)];
}

} // namespace

std::vector<SparseRationalMatrix> intertwiner_space(const std::vector<SparseRationalMatrix>& act_a, int dim_a,
                                                    const std::vector<SparseRationalMatrix>& act_b, int dim_b,
                                                    const std::vector<BlockKey>* keys_a,
                                                    const std::vector<BlockKey>* keys_b) {
    if (act_a.size() != act_b.size())
        throw std::invalid_argument("intertwiner_space: generator count mismatch");
    const int n_gen = static_cast<int>(act_a.size());

    std::vector<int> var_of(static_cast<std::size_t>(dim_a) * static_cast<std::size_t>(dim_b), -1);
    std::vector<std::pair<int, int>> vars; // (row i in B, col j in A)
    for (int i = 0; i < dim_b; ++i)
        for (int j = 0; j < dim_a; ++j)
            if (keys_match(keys_a, keys_b, j, i)) vars.emplace_back(i, j);
    // group unknowns by key so the elimination stays local
    if (keys_a && keys_b)
        std::stable_sort(vars.begin(), vars.end(), [&](const auto& x, const auto& y) {
            return (*keys_b)[static_cast<std::size_t>(x.first)] < (*keys_b)[static_cast<std::size_t>(y.first)];
        });
    for (std::size_t v = 0; v < vars.size(); ++v)
        var_of[static_cast<std::size_t>(vars[v].first) * static_cast<std::size_t>(dim_a) +
               static_cast<std::size_t>(vars[v].second)] = static_cast<int>(v);

    std::vector<SparseRationalMatrix> a_t;
    a_t.reserve(static_cast<std::size_t>(n_gen));
    for (const auto& m : act_a) a_t.push_back(m.transpose());

    System sys;
    sys.pending.resize(vars.size());
    auto eq_key = [&](int g, int i, int j) {
        return (static_cast<long long>(g) * dim_b + i) * dim_a + j;
    };
    for (std::size_t v = 0; v < vars.size(); ++v) {
        auto [r, c] = vars[v];
        for (int g = 0; g < n_gen; ++g) {
            // + sum_k T_{ik} A[k][j]: T_{rc} enters equation (g, r, j) with A[c][j]
            for (const auto& [j, val] : a_t[static_cast<std::size_t>(g)].column(c).entries())
                sys.pending[v].emplace_back(sys.row(eq_key(g, r, j)), val);
            // - sum_k B[i][k] T_{kj}: T_{rc} enters equation (g, i, c) with -B[i][r]
            for (const auto& [i, val] : act_b[static_cast<std::size_t>(g)].column(r).entries())
                sys.pending[v].emplace_back(sys.row(eq_key(g, i, c)), -val);
        }
    }

    SparseRationalMatrix m(sys.n_rows, static_cast<int>(vars.size()));
    for (std::size_t v = 0; v < vars.size(); ++v) {
        // merge duplicate rows
        std::vector<SparseVector::Entry> es = std::move(sys.pending[v]);
        std::sort(es.begin(), es.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        SparseVector col;
        for (auto& [row, val] : es) col.axpy(Rational(1), SparseVector::from_entries({{row, val}}));
        m.set_column(static_cast<int>(v), std::move(col));
    }

    Subspace ker = kernel_basis(m);
    std::vector<SparseRationalMatrix> result;
    for (int k = 0; k < ker.dim(); ++k) {
        std::vector<SparseRationalMatrix::Triplet> ts;
        for (const auto& [v, val] : ker.basis.column(k).entries())
            ts.emplace_back(vars[static_cast<std::size_t>(v)].first, vars[static_cast<std::size_t>(v)].second, val);
        result.push_back(SparseRationalMatrix::from_triplets(dim_b, dim_a, ts));
    }
    return result;
}

std::optional<SparseRationalMatrix> invertible_element(const std::vector<SparseRationalMatrix>& space, int dim) {
    auto invertible = [&](const SparseRationalMatrix& m) { return rank(m) == dim; };
    for (const auto& t : space)
        if (invertible(t)) return t;
    for (std::size_t i = 0; i < space.size(); ++i)
        for (std::size_t j = i + 1; j < space.size(); ++j) {
            SparseRationalMatrix s = space[i] + space[j];
            if (invertible(s)) return s;
        }
    const int k = static_cast<int>(space.size());
    for (int lambda = 2; lambda <= 2 * k + 16; ++lambda) {
        SparseRationalMatrix s(dim, dim);
        Rational coeff(1);
        for (const auto& t : space) {
            s = s + t.scaled(coeff);
            coeff *= Rational(lambda);
        }
        if (invertible(s)) return s;
    }
    return std::nullopt;
}

std::optional<SparseRationalMatrix> intertwiner_with_fixed_columns(
    const std::vector<SparseRationalMatrix>& act_a, int dim_a, const std::vector<SparseRationalMatrix>& act_b,
    int dim_b, const std::map<int, SparseVector>& fixed, const std::vector<BlockKey>* keys_a,
    const std::vector<BlockKey>* keys_b) {
    if (act_a.size() != act_b.size())
        throw std::invalid_argument("intertwiner_with_fixed_columns: generator count mismatch");
    const int n_gen = static_cast<int>(act_a.size());

    std::vector<std::pair<int, int>> vars;
    std::vector<int> var_of(static_cast<std::size_t>(dim_a) * static_cast<std::size_t>(dim_b), -1);
    for (int i = 0; i < dim_b; ++i)
        for (int j = 0; j < dim_a; ++j) {
            if (fixed.count(j)) continue;
            if (!keys_match(keys_a, keys_b, j, i)) continue;
            var_of[static_cast<std::size_t>(i) * static_cast<std::size_t>(dim_a) + static_cast<std::size_t>(j)] =
                static_cast<int>(vars.size());
            vars.emplace_back(i, j);
        }

    std::vector<SparseRationalMatrix> a_t;
    for (const auto& m : act_a) a_t.push_back(m.transpose());

    System sys;
    sys.pending.resize(vars.size());
    auto eq_key = [&](int g, int i, int j) {
        return (static_cast<long long>(g) * dim_b + i) * dim_a + j;
    };
    for (std::size_t v = 0; v < vars.size(); ++v) {
        auto [r, c] = vars[v];
        for (int g = 0; g < n_gen; ++g) {
            for (const auto& [j, val] : a_t[static_cast<std::size_t>(g)].column(c).entries())
                sys.pending[v].emplace_back(sys.row(eq_key(g, r, j)), val);
            for (const auto& [i, val] : act_b[static_cast<std::size_t>(g)].column(r).entries())
                sys.pending[v].emplace_back(sys.row(eq_key(g, i, c)), -val);
        }
    }
    // constant contributions of the pinned columns: rhs = -(const part)
    std::vector<SparseVector::Entry> rhs_pending;
    for (const auto& [j0, w] : fixed) {
        for (int g = 0; g < n_gen; ++g) {
            for (const auto& [r, wv] : w.entries())
                for (const auto& [j, val] : a_t[static_cast<std::size_t>(g)].column(j0).entries())
                    rhs_pending.emplace_back(sys.row(eq_key(g, r, j)), -(wv * val));
            for (const auto& [k, wv] : w.entries())
                for (const auto& [i, val] : act_b[static_cast<std::size_t>(g)].column(k).entries())
                    rhs_pending.emplace_back(sys.row(eq_key(g, i, j0)), val * wv);
        }
    }

    SparseRationalMatrix m(sys.n_rows, static_cast<int>(vars.size()));
    for (std::size_t v = 0; v < vars.size(); ++v) {
        std::vector<SparseVector::Entry> es = std::move(sys.pending[v]);
        SparseVector col;
        for (auto& [row, val] : es) col.axpy(Rational(1), SparseVector::from_entries({{row, val}}));
        m.set_column(static_cast<int>(v), std::move(col));
    }
    SparseVector rhs;
    for (auto& [row, val] : rhs_pending) rhs.axpy(Rational(1), SparseVector::from_entries({{row, val}}));

    auto sol = solve(m, rhs);
    if (!sol) return std::nullopt;

    std::vector<SparseRationalMatrix::Triplet> ts;
    for (const auto& [v, val] : sol->entries())
        ts.emplace_back(vars[static_cast<std::size_t>(v)].first, vars[static_cast<std::size_t>(v)].second, val);
    for (const auto& [j0, w] : fixed)
        for (const auto& [i, val] : w.entries()) ts.emplace_back(i, j0, val);
    return SparseRationalMatrix::from_triplets(dim_b, dim_a, ts);
}

} // namespace superkac

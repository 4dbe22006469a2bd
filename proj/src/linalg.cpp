#include "superkac/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace superkac {

namespace {

// Pivot rule: smallest scalar bulk, then lowest row index. Keeps coefficient
// growth in check while staying deterministic.
std::size_t pick_pivot(const SparseVector& v) {
    const auto& es = v.entries();
    std::size_t best = 0;
    std::size_t best_bulk = es[0].second.bulk();
    for (std::size_t i = 1; i < es.size(); ++i) {
        std::size_t b = es[i].second.bulk();
        if (b < best_bulk) {
            best = i;
            best_bulk = b;
        }
    }
    return best;
}

} // namespace

SparseVector EliminationBasis::reduce(SparseVector v, SparseVector* combo) const {
    // Reduce against pivots in insertion order, but visit only the pivots
    // whose rows actually appear; pivot k has zeros at the rows of earlier
    // pivots, so each elimination can only introduce later candidates.
    SparseVector acc;
    std::set<int> pending;
    for (const auto& [r, val] : v.entries()) {
        auto it = pivot_of_row_.find(r);
        if (it != pivot_of_row_.end()) pending.insert(it->second);
    }
    while (!pending.empty()) {
        int k = *pending.begin();
        pending.erase(pending.begin());
        Rational c = v.at(pivot_rows_[static_cast<std::size_t>(k)]);
        if (c.is_zero()) continue;
        Rational coeff = c / pivot_vals_[static_cast<std::size_t>(k)];
        v.axpy(-coeff, cols_[static_cast<std::size_t>(k)]);
        if (combo && track_) acc.axpy(coeff, combos_[static_cast<std::size_t>(k)]);
        for (const auto& [r, val] : cols_[static_cast<std::size_t>(k)].entries()) {
            auto it = pivot_of_row_.find(r);
            if (it != pivot_of_row_.end() && it->second > k) pending.insert(it->second);
        }
    }
    if (combo && track_) *combo = std::move(acc);
    return v;
}

bool EliminationBasis::add(SparseVector v) {
    SparseVector ignored;
    return add_tracked(std::move(v), ignored);
}

bool EliminationBasis::add_tracked(SparseVector v, SparseVector& combo_out) {
    SparseVector combo;
    SparseVector residual = reduce(std::move(v), track_ ? &combo : nullptr);
    int my_index = added_++;
    if (residual.empty()) {
        combo_out = std::move(combo);
        return false;
    }
    std::size_t p = pick_pivot(residual);
    pivot_of_row_.emplace(residual.entries()[p].first, static_cast<int>(cols_.size()));
    pivot_rows_.push_back(residual.entries()[p].first);
    pivot_vals_.push_back(residual.entries()[p].second);
    cols_.push_back(std::move(residual));
    if (track_) {
        SparseVector self = SparseVector::unit(my_index);
        self.axpy(Rational(-1), combo);
        combos_.push_back(std::move(self));
    }
    combo_out = SparseVector();
    return true;
}

int rank(const SparseRationalMatrix& m) {
    std::vector<int> order(static_cast<std::size_t>(m.n_cols()));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return m.column(a).nnz() < m.column(b).nnz(); });
    EliminationBasis elim;
    for (int c : order) {
        if (m.column(c).empty()) continue;
        elim.add(m.column(c));
    }
    return elim.rank();
}

Subspace kernel_basis(const SparseRationalMatrix& m) {
    EliminationBasis elim(true);
    SparseRationalMatrix basis(m.n_cols(), 0);
    for (int c = 0; c < m.n_cols(); ++c) {
        SparseVector combo;
        if (!elim.add_tracked(m.column(c), combo)) {
            SparseVector x = SparseVector::unit(c);
            x.axpy(Rational(-1), combo);
            basis.append_column(std::move(x));
        }
    }
    return Subspace{m.n_cols(), std::move(basis)};
}

std::optional<SparseVector> solve(const SparseRationalMatrix& m, const SparseVector& b) {
    if (!b.empty() && b.entries().back().first >= m.n_rows())
        throw std::invalid_argument("solve: rhs length exceeds n_rows");
    EliminationBasis elim(true);
    for (int c = 0; c < m.n_cols(); ++c) {
        SparseVector combo;
        elim.add_tracked(m.column(c), combo);
    }
    SparseVector combo;
    SparseVector residual = elim.reduce(b, &combo);
    if (!residual.empty()) return std::nullopt;
    return combo;
}

std::optional<std::vector<Rational>> solve(const SparseRationalMatrix& m, const std::vector<Rational>& b) {
    if (static_cast<int>(b.size()) != m.n_rows())
        throw std::invalid_argument("solve: rhs length mismatch");
    auto x = solve(m, SparseVector::from_dense(b));
    if (!x) return std::nullopt;
    return x->to_dense(m.n_cols());
}

int quotient_dim(const Subspace& k, const Subspace& i) {
    if (k.ambient_dim != i.ambient_dim)
        throw std::invalid_argument("quotient_dim: ambient mismatch");
    EliminationBasis elim;
    for (int c = 0; c < k.basis.n_cols(); ++c)
        if (!elim.add(k.basis.column(c)))
            throw std::logic_error("quotient_dim: K basis columns are dependent");
    EliminationBasis i_elim;
    for (int c = 0; c < i.basis.n_cols(); ++c) {
        if (!i_elim.add(i.basis.column(c)))
            throw std::logic_error("quotient_dim: I basis columns are dependent");
        if (!elim.contains(i.basis.column(c)))
            throw std::logic_error("quotient_dim: I is not contained in K");
    }
    return k.dim() - i.dim();
}

Coordinates::Coordinates(const SparseRationalMatrix& basis) : elim_(true) {
    for (int c = 0; c < basis.n_cols(); ++c) {
        SparseVector combo;
        if (!elim_.add_tracked(basis.column(c), combo))
            throw std::logic_error("Coordinates: basis columns are dependent");
    }
}

std::optional<SparseVector> Coordinates::of(const SparseVector& v) const {
    SparseVector combo;
    SparseVector res = elim_.reduce(v, &combo);
    if (!res.empty()) return std::nullopt;
    return combo;
}

Subspace closure_under(const std::vector<SparseRationalMatrix>& ops, const SparseRationalMatrix& seeds, int dim) {
    EliminationBasis elim;
    SparseRationalMatrix basis(dim, 0);
    std::vector<SparseVector> queue;
    for (int c = 0; c < seeds.n_cols(); ++c)
        if (elim.add(seeds.column(c))) {
            basis.append_column(seeds.column(c));
            queue.push_back(seeds.column(c));
        }
    while (!queue.empty()) {
        SparseVector v = std::move(queue.back());
        queue.pop_back();
        for (const auto& m : ops) {
            SparseVector w = m.apply(v);
            if (w.empty()) continue;
            if (elim.add(w)) {
                basis.append_column(w);
                queue.push_back(std::move(w));
            }
        }
    }
    return Subspace{dim, std::move(basis)};
}

std::optional<SparseRationalMatrix> invert_matrix(const SparseRationalMatrix& m) {
    if (m.n_rows() != m.n_cols()) throw std::invalid_argument("invert_matrix: square matrix required");
    EliminationBasis elim(true);
    for (int c = 0; c < m.n_cols(); ++c) {
        SparseVector combo;
        if (!elim.add_tracked(m.column(c), combo)) return std::nullopt;
    }
    SparseRationalMatrix inv(m.n_rows(), m.n_cols());
    for (int c = 0; c < m.n_cols(); ++c) {
        SparseVector combo;
        SparseVector residual = elim.reduce(SparseVector::unit(c), &combo);
        if (!residual.empty()) return std::nullopt;
        inv.set_column(c, std::move(combo));
    }
    return inv;
}

Subspace intersect(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim != b.ambient_dim)
        throw std::invalid_argument("intersect: ambient mismatch");
    const int ka = a.dim();
    const int kb = b.dim();
    SparseRationalMatrix stacked(a.ambient_dim, ka + kb);
    for (int c = 0; c < ka; ++c) stacked.set_column(c, a.basis.column(c));
    for (int c = 0; c < kb; ++c) {
        SparseVector col = b.basis.column(c);
        col.scale(Rational(-1));
        stacked.set_column(ka + c, std::move(col));
    }
    Subspace ker = kernel_basis(stacked);
    EliminationBasis elim;
    SparseRationalMatrix basis(a.ambient_dim, 0);
    for (int c = 0; c < ker.dim(); ++c) {
        SparseVector u;
        for (const auto& [idx, val] : ker.basis.column(c).entries())
            if (idx < ka) u.push_back(idx, val);
        SparseVector x = a.basis.apply(u);
        if (x.empty()) continue;
        if (elim.add(x)) basis.append_column(std::move(x));
    }
    return Subspace{a.ambient_dim, std::move(basis)};
}

} // namespace superkac

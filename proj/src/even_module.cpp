#include "superkac/even_module.hpp"

#include "superkac/poly.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace superkac {

std::string WeightVector::str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < cartan_eigenvalues.size(); ++i) {
        if (i) s += ",";
        s += cartan_eigenvalues[i].str();
    }
    return s + ")";
}

SparseVector EvenModule::apply(const SparseVector& coeffs, const SparseVector& v) const {
    SparseVector out;
    for (const auto& [g, c] : coeffs.entries()) out.axpy(c, act(g).apply(v));
    return out;
}

void verify_even_module(const EvenModule& u) {
    const auto& alg = *u.algebra;
    if (static_cast<int>(u.action.size()) != alg.dim)
        throw std::logic_error("even module: one action matrix per generator required");
    for (const auto& m : u.action)
        if (m.n_rows() != u.dim || m.n_cols() != u.dim)
            throw std::logic_error("even module: action matrix shape mismatch");
    for (int x = 0; x < alg.dim; ++x) {
        for (int y = 0; y < alg.dim; ++y) {
            SparseRationalMatrix lhs(u.dim, u.dim);
            for (const auto& [c, v] : alg.bracket_coeffs(x, y).entries()) lhs = lhs + u.act(c).scaled(v);
            SparseRationalMatrix rhs = u.act(x) * u.act(y) - u.act(y) * u.act(x);
            if (!(lhs == rhs))
                throw std::logic_error("even module: bracket relation fails for (" + alg.labels[static_cast<std::size_t>(x)] +
                                       ", " + alg.labels[static_cast<std::size_t>(y)] + ")");
        }
    }
}

EvenModule make_even_module(EvenAlgebraPtr algebra, int dim, std::vector<SparseRationalMatrix> action,
                            std::optional<WeightVector> hw) {
    EvenModule u;
    u.algebra = std::move(algebra);
    u.dim = dim;
    u.action = std::move(action);
    u.highest_weight = std::move(hw);
    verify_even_module(u);
    return u;
}

EvenModule trivial_even_module(const EvenAlgebraPtr& algebra) {
    std::vector<SparseRationalMatrix> act(static_cast<std::size_t>(algebra->dim), SparseRationalMatrix(1, 1));
    WeightVector w;
    w.cartan_eigenvalues.assign(algebra->cartan_indices.size(), Rational(0));
    return make_even_module(algebra, 1, std::move(act), w);
}

EvenModule sl21_even_module(const EvenAlgebraPtr& algebra, int a, const Rational& b) {
    if (a < 0) throw std::invalid_argument("sl21_even_module: a >= 0 required");
    int idx_e = algebra->find_label("A(1,2)");
    int idx_f = algebra->find_label("A(2,1)");
    int idx_h = algebra->find_label("HA1");
    int idx_y = algebra->y_index;
    if (idx_e < 0 || idx_f < 0 || idx_h < 0 || idx_y < 0 || algebra->dim != 4)
        throw std::invalid_argument("sl21_even_module: expects the even part of sl(2/1)");

    const int d = a + 1;
    Rational y = Rational(2) * b - Rational(a);
    std::vector<SparseRationalMatrix::Triplet> eh, fh, hh, yh;
    for (int i = 0; i < d; ++i) {
        hh.emplace_back(i, i, Rational(a - 2 * i));
        yh.emplace_back(i, i, y);
        if (i + 1 < d) fh.emplace_back(i + 1, i, Rational(1));
        if (i > 0) eh.emplace_back(i - 1, i, Rational(static_cast<long>(i) * (a + 1 - i)));
    }
    std::vector<SparseRationalMatrix> act(4, SparseRationalMatrix(d, d));
    act[static_cast<std::size_t>(idx_e)] = SparseRationalMatrix::from_triplets(d, d, eh);
    act[static_cast<std::size_t>(idx_f)] = SparseRationalMatrix::from_triplets(d, d, fh);
    act[static_cast<std::size_t>(idx_h)] = SparseRationalMatrix::from_triplets(d, d, hh);
    act[static_cast<std::size_t>(idx_y)] = SparseRationalMatrix::from_triplets(d, d, yh);

    WeightVector w;
    for (int c : algebra->cartan_indices)
        w.cartan_eigenvalues.push_back(c == idx_y ? y : Rational(a));
    return make_even_module(algebra, d, std::move(act), w);
}

EvenModule natural_module(const EvenAlgebraPtr& algebra, int factor, const Rational& y) {
    if (factor < 0 || factor >= static_cast<int>(algebra->factors.size()))
        throw std::invalid_argument("natural_module: no such factor");
    const auto& fac = algebra->factors[static_cast<std::size_t>(factor)];
    const int d = fac.block_size;
    std::vector<SparseRationalMatrix> act;
    act.reserve(static_cast<std::size_t>(algebra->dim));
    for (int g = 0; g < algebra->dim; ++g) {
        if (algebra->factor_of[static_cast<std::size_t>(g)] == factor) {
            std::vector<SparseRationalMatrix::Triplet> ts;
            const auto& real = algebra->realization[static_cast<std::size_t>(g)];
            for (int c = 0; c < real.n_cols(); ++c)
                for (const auto& [r, v] : real.column(c).entries())
                    ts.emplace_back(r - fac.block_offset, c - fac.block_offset, v);
            act.push_back(SparseRationalMatrix::from_triplets(d, d, ts));
        } else if (g == algebra->y_index) {
            act.push_back(SparseRationalMatrix::identity(d).scaled(y));
        } else {
            act.push_back(SparseRationalMatrix(d, d));
        }
    }
    return make_even_module(algebra, d, std::move(act));
}

EvenModule dual(const EvenModule& u) {
    std::vector<SparseRationalMatrix> act;
    act.reserve(u.action.size());
    for (const auto& m : u.action) act.push_back(m.transpose().scaled(Rational(-1)));
    return make_even_module(u.algebra, u.dim, std::move(act));
}

EvenModule tensor(const EvenModule& u1, const EvenModule& u2) {
    if (u1.algebra.get() != u2.algebra.get())
        throw std::invalid_argument("tensor: modules over different algebras");
    const int d1 = u1.dim, d2 = u2.dim, d = d1 * d2;
    std::vector<SparseRationalMatrix> act;
    act.reserve(u1.action.size());
    for (std::size_t g = 0; g < u1.action.size(); ++g) {
        std::vector<SparseRationalMatrix::Triplet> ts;
        for (int c = 0; c < d1; ++c)
            for (const auto& [r, v] : u1.action[g].column(c).entries())
                for (int j = 0; j < d2; ++j) ts.emplace_back(r * d2 + j, c * d2 + j, v);
        for (int c = 0; c < d2; ++c)
            for (const auto& [r, v] : u2.action[g].column(c).entries())
                for (int i = 0; i < d1; ++i) ts.emplace_back(i * d2 + r, i * d2 + c, v);
        act.push_back(SparseRationalMatrix::from_triplets_summed(d, d, ts));
    }
    return make_even_module(u1.algebra, d, std::move(act));
}

Subspace invariants(const EvenModule& u) {
    const int k = static_cast<int>(u.action.size());
    std::vector<SparseRationalMatrix::Triplet> ts;
    for (int g = 0; g < k; ++g)
        for (int c = 0; c < u.dim; ++c)
            for (const auto& [r, v] : u.action[static_cast<std::size_t>(g)].column(c).entries())
                ts.emplace_back(g * u.dim + r, c, v);
    return kernel_basis(SparseRationalMatrix::from_triplets(k * u.dim, u.dim, ts));
}

namespace {

SparseRationalMatrix restrict_operator(const SparseRationalMatrix& a, const Subspace& s, const Coordinates& coords) {
    SparseRationalMatrix out(s.dim(), s.dim());
    for (int c = 0; c < s.dim(); ++c) {
        auto co = coords.of(a.apply(s.basis.column(c)));
        if (!co) throw std::logic_error("restrict_operator: subspace is not invariant");
        out.set_column(c, *co);
    }
    return out;
}

} // namespace

std::optional<std::vector<BlockKey>> even_cartan_keys(const EvenModule& u) {
    std::vector<const SparseRationalMatrix*> cartan;
    for (int c : u.algebra->cartan_indices) cartan.push_back(&u.act(c));
    return diagonal_keys(cartan, u.dim);
}

std::vector<std::pair<WeightVector, Subspace>> weight_spaces(const EvenModule& u) {
    // fast path: diagonal Cartan action
    if (auto keys = even_cartan_keys(u)) {
        std::map<WeightVector, std::vector<int>> groups;
        for (int i = 0; i < u.dim; ++i) {
            WeightVector w;
            w.cartan_eigenvalues = (*keys)[static_cast<std::size_t>(i)];
            groups[w].push_back(i);
        }
        std::vector<std::pair<WeightVector, Subspace>> out;
        for (auto& [w, idxs] : groups) {
            SparseRationalMatrix basis(u.dim, static_cast<int>(idxs.size()));
            for (std::size_t k = 0; k < idxs.size(); ++k)
                basis.set_column(static_cast<int>(k), SparseVector::unit(idxs[k]));
            out.emplace_back(w, Subspace{u.dim, std::move(basis)});
        }
        return out;
    }

    // general path: refine simultaneous eigenspaces one Cartan at a time
    std::vector<std::pair<WeightVector, Subspace>> blocks{{WeightVector{}, Subspace::full(u.dim)}};
    for (int c : u.algebra->cartan_indices) {
        const auto& a = u.act(c);
        std::vector<std::pair<WeightVector, Subspace>> next;
        for (auto& [w, s] : blocks) {
            Coordinates coords(s.basis);
            SparseRationalMatrix restricted = restrict_operator(a, s, coords);
            Poly mp = minimal_polynomial(restricted);
            auto roots = rational_roots(mp);
            int degree_sum = 0;
            for (const auto& [r, m] : roots.roots) degree_sum += m;
            if (degree_sum != mp.degree())
                throw std::invalid_argument("weight_spaces: Cartan action not diagonalizable over Q");
            for (const auto& [lambda, mult] : roots.roots) {
                if (mult != 1)
                    throw std::invalid_argument("weight_spaces: Cartan action not diagonalizable over Q");
                SparseRationalMatrix shifted = restricted - SparseRationalMatrix::identity(s.dim()).scaled(lambda);
                Subspace local_kernel = kernel_basis(shifted);
                SparseRationalMatrix mapped(u.dim, local_kernel.dim());
                for (int k = 0; k < local_kernel.dim(); ++k)
                    mapped.set_column(k, s.basis.apply(local_kernel.basis.column(k)));
                WeightVector wn = w;
                wn.cartan_eigenvalues.push_back(lambda);
                next.emplace_back(std::move(wn), Subspace{u.dim, std::move(mapped)});
            }
        }
        blocks = std::move(next);
    }
    std::sort(blocks.begin(), blocks.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    return blocks;
}

std::map<WeightVector, int> weight_multiset(const EvenModule& u) {
    std::map<WeightVector, int> out;
    for (const auto& [w, s] : weight_spaces(u)) out[w] += s.dim();
    return out;
}

Subspace cyclic_closure(const EvenModule& u, const SparseRationalMatrix& seeds) {
    return closure_under(u.action, seeds, u.dim);
}

EvenModule submodule(const EvenModule& u, const Subspace& s) {
    Coordinates coords(s.basis);
    std::vector<SparseRationalMatrix> act;
    act.reserve(u.action.size());
    for (const auto& m : u.action) {
        SparseRationalMatrix restricted(s.dim(), s.dim());
        for (int c = 0; c < s.dim(); ++c) {
            auto co = coords.of(m.apply(s.basis.column(c)));
            if (!co) throw std::invalid_argument("submodule: subspace is not invariant");
            restricted.set_column(c, *co);
        }
        act.push_back(std::move(restricted));
    }
    return make_even_module(u.algebra, s.dim(), std::move(act));
}

std::vector<std::pair<WeightVector, int>> decompose_irreducibles(const EvenModule& u) {
    const auto& alg = *u.algebra;
    std::vector<SparseRationalMatrix::Triplet> ts;
    for (std::size_t k = 0; k < alg.raising.size(); ++k) {
        const auto& m = u.act(alg.raising[k]);
        for (int c = 0; c < u.dim; ++c)
            for (const auto& [r, v] : m.column(c).entries())
                ts.emplace_back(static_cast<int>(k) * u.dim + r, c, v);
    }
    Subspace singular = kernel_basis(SparseRationalMatrix::from_triplets(
        static_cast<int>(alg.raising.size()) * u.dim, u.dim, ts));

    std::vector<std::pair<WeightVector, int>> out;
    int total = 0;
    for (const auto& [w, space] : weight_spaces(u)) {
        Subspace s = intersect(space, singular);
        if (s.dim() == 0) continue;
        SparseRationalMatrix seed(u.dim, 1);
        seed.set_column(0, s.basis.column(0));
        int irrep_dim = cyclic_closure(u, seed).dim();
        out.emplace_back(w, s.dim());
        total += s.dim() * irrep_dim;
    }
    if (total != u.dim)
        throw std::logic_error("decompose_irreducibles: dimension bookkeeping fails (module not completely reducible?)");
    return out;
}

std::vector<SparseRationalMatrix> even_intertwiners(const EvenModule& u, const EvenModule& v) {
    if (u.algebra.get() != v.algebra.get())
        throw std::invalid_argument("even_intertwiners: modules over different algebras");
    auto ku = even_cartan_keys(u);
    auto kv = even_cartan_keys(v);
    const std::vector<BlockKey>* pu = (ku && kv) ? &*ku : nullptr;
    const std::vector<BlockKey>* pv = (ku && kv) ? &*kv : nullptr;
    return intertwiner_space(u.action, u.dim, v.action, v.dim, pu, pv);
}

EvenModule highest_weight_module(const EvenAlgebraPtr& algebra, const WeightVector& weight, int fuel) {
    if (weight.cartan_eigenvalues.size() != algebra->cartan_indices.size())
        throw std::invalid_argument("highest_weight_module: weight length mismatch");

    Rational y(0);
    std::vector<std::pair<int, Rational>> semisimple_targets; // (local cartan index, eigenvalue)
    for (std::size_t k = 0; k < algebra->cartan_indices.size(); ++k) {
        int c = algebra->cartan_indices[k];
        if (c == algebra->y_index)
            y = weight.cartan_eigenvalues[k];
        else
            semisimple_targets.emplace_back(c, weight.cartan_eigenvalues[k]);
    }

    const int n_factors = static_cast<int>(algebra->factors.size());
    std::vector<int> powers(static_cast<std::size_t>(std::max(n_factors, 1)), 0);
    for (int total = 0; total <= fuel; ++total) {
        // enumerate compositions of `total` over the factors
        std::vector<std::vector<int>> comps;
        std::vector<int> cur(static_cast<std::size_t>(std::max(n_factors, 1)), 0);
        std::function<void(int, int)> rec = [&](int pos, int left) {
            if (pos == n_factors) {
                if (left == 0) comps.push_back(cur);
                return;
            }
            for (int p = 0; p <= left; ++p) {
                cur[static_cast<std::size_t>(pos)] = p;
                rec(pos + 1, left - p);
            }
        };
        if (n_factors == 0) {
            if (total == 0) comps.push_back({});
        } else {
            rec(0, total);
        }

        for (const auto& comp : comps) {
            EvenModule cand = trivial_even_module(algebra);
            for (int f = 0; f < n_factors; ++f)
                for (int p = 0; p < comp[static_cast<std::size_t>(f)]; ++p)
                    cand = tensor(cand, natural_module(algebra, f, Rational(0)));

            // weight + raising-annihilated vectors
            std::vector<SparseRationalMatrix::Triplet> ts;
            int row_off = 0;
            for (const auto& [c, lambda] : semisimple_targets) {
                SparseRationalMatrix shifted = cand.act(c) - SparseRationalMatrix::identity(cand.dim).scaled(lambda);
                for (int col = 0; col < cand.dim; ++col)
                    for (const auto& [r, v] : shifted.column(col).entries())
                        ts.emplace_back(row_off + r, col, v);
                row_off += cand.dim;
            }
            for (int rIdx : algebra->raising) {
                for (int col = 0; col < cand.dim; ++col)
                    for (const auto& [r, v] : cand.act(rIdx).column(col).entries())
                        ts.emplace_back(row_off + r, col, v);
                row_off += cand.dim;
            }
            Subspace hw = kernel_basis(SparseRationalMatrix::from_triplets(row_off, cand.dim, ts));
            if (hw.dim() == 0) continue;

            SparseRationalMatrix seed(cand.dim, 1);
            seed.set_column(0, hw.basis.column(0));
            Subspace closure = cyclic_closure(cand, seed);
            EvenModule result = submodule(cand, closure);
            if (algebra->y_index >= 0)
                result.action[static_cast<std::size_t>(algebra->y_index)] =
                    SparseRationalMatrix::identity(result.dim).scaled(y);
            result.highest_weight = weight;
            verify_even_module(result);
            return result;
        }
    }
    throw std::invalid_argument("highest_weight_module: fuel exhausted before the weight appeared");
}

} // namespace superkac

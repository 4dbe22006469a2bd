#include "superkac/homology.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace superkac {

namespace {

// ad-weights of the generators under the Cartan set, read from the structure
// constants; empty when some bracket is not diagonal.
std::vector<std::vector<Rational>> ad_weights(const std::vector<std::vector<SparseVector>>& f,
                                              const std::vector<int>& cartan, int n_gen, bool& ok) {
    std::vector<std::vector<Rational>> w(static_cast<std::size_t>(n_gen));
    ok = true;
    for (int c : cartan) {
        for (int g = 0; g < n_gen; ++g) {
            const SparseVector& br = f[static_cast<std::size_t>(c)][static_cast<std::size_t>(g)];
            Rational lambda(0);
            if (br.nnz() > 1) {
                ok = false;
                return {};
            }
            if (br.nnz() == 1) {
                if (br.entries()[0].first != g) {
                    ok = false;
                    return {};
                }
                lambda = br.entries()[0].second;
            }
            w[static_cast<std::size_t>(g)].push_back(lambda);
        }
    }
    return w;
}

std::vector<std::vector<Rational>> module_weights(const std::vector<SparseRationalMatrix>& action,
                                                  const std::vector<int>& cartan, int dim, bool& ok) {
    std::vector<const SparseRationalMatrix*> mats;
    for (int c : cartan) mats.push_back(&action[static_cast<std::size_t>(c)]);
    auto keys = diagonal_keys(mats, dim);
    ok = keys.has_value();
    if (!ok) return {};
    return *keys;
}

} // namespace

ChainSetup chain_setup(const SuperModule& m) {
    const auto& alg = *m.algebra;
    ChainSetup s;
    s.n_gen = alg.dim;
    s.gen_parity.resize(static_cast<std::size_t>(alg.dim));
    for (int g = 0; g < alg.dim; ++g) s.gen_parity[static_cast<std::size_t>(g)] = alg.parity(g);
    s.f = alg.f;
    s.gen_action = m.action;
    s.mod_dim = m.dim;
    s.mod_parity = m.parity;
    for (int g = 0; g < alg.dim; ++g) s.gen_labels.push_back(alg.label(g));

    bool ok_gen = false, ok_mod = false;
    auto gw = ad_weights(alg.f, alg.cartan_indices, alg.dim, ok_gen);
    auto mw = module_weights(m.action, alg.cartan_indices, m.dim, ok_mod);
    if (ok_gen && ok_mod) {
        s.gen_weights = std::move(gw);
        s.mod_weights = std::move(mw);
    }
    return s;
}

ChainSetup chain_setup(const EvenAlgebraPtr& ev, const EvenModule& m) {
    if (m.algebra.get() != ev.get()) throw std::invalid_argument("chain_setup: module is not over this algebra");
    ChainSetup s;
    s.n_gen = ev->dim;
    s.gen_parity.assign(static_cast<std::size_t>(ev->dim), 0);
    s.f = ev->f;
    s.gen_action = m.action;
    s.mod_dim = m.dim;
    s.mod_parity.assign(static_cast<std::size_t>(m.dim), 0);
    s.gen_labels = ev->labels;

    bool ok_gen = false, ok_mod = false;
    auto gw = ad_weights(ev->f, ev->cartan_indices, ev->dim, ok_gen);
    auto mw = module_weights(m.action, ev->cartan_indices, m.dim, ok_mod);
    if (ok_gen && ok_mod) {
        s.gen_weights = std::move(gw);
        s.mod_weights = std::move(mw);
    }
    return s;
}

int ChainComplex::pair_index(int i, int j) const {
    for (std::size_t p = 0; p < pairs.size(); ++p)
        if (pairs[p].first == i && pairs[p].second == j) return static_cast<int>(p);
    return -1;
}

namespace {

std::vector<std::pair<int, int>> degree2_pairs(const ChainSetup& s) {
    std::vector<std::pair<int, int>> pairs;
    // even wedge even
    for (int i = 0; i < s.n_gen; ++i) {
        if (s.gen_parity[static_cast<std::size_t>(i)] != 0) continue;
        for (int j = i + 1; j < s.n_gen; ++j)
            if (s.gen_parity[static_cast<std::size_t>(j)] == 0) pairs.emplace_back(i, j);
    }
    // even (x) odd
    for (int i = 0; i < s.n_gen; ++i) {
        if (s.gen_parity[static_cast<std::size_t>(i)] != 0) continue;
        for (int j = 0; j < s.n_gen; ++j)
            if (s.gen_parity[static_cast<std::size_t>(j)] == 1) pairs.emplace_back(i, j);
    }
    // odd symmetric square, diagonal included
    for (int i = 0; i < s.n_gen; ++i) {
        if (s.gen_parity[static_cast<std::size_t>(i)] != 1) continue;
        for (int j = i; j < s.n_gen; ++j)
            if (s.gen_parity[static_cast<std::size_t>(j)] == 1) pairs.emplace_back(i, j);
    }
    return pairs;
}

} // namespace

ChainComplex build_chain_complex(ChainSetup setup) {
    ChainComplex c;
    c.setup = std::move(setup);
    const ChainSetup& s = c.setup;
    c.pairs = degree2_pairs(s);
    c.dim0 = s.mod_dim;
    c.dim1 = s.n_gen * s.mod_dim;
    c.dim2 = static_cast<int>(c.pairs.size()) * s.mod_dim;

    c.d0 = SparseRationalMatrix(c.dim0, c.dim1);
    for (int g = 0; g < s.n_gen; ++g)
        for (int m = 0; m < s.mod_dim; ++m)
            c.d0.set_column(c.index1(g, m), s.gen_action[static_cast<std::size_t>(g)].column(m));

    c.d1 = SparseRationalMatrix(c.dim1, c.dim2);
    for (std::size_t p = 0; p < c.pairs.size(); ++p) {
        auto [i, j] = c.pairs[p];
        bool both_odd = s.gen_parity[static_cast<std::size_t>(i)] == 1 && s.gen_parity[static_cast<std::size_t>(j)] == 1;
        Rational swap_sign = both_odd ? Rational(1) : Rational(-1);
        for (int m = 0; m < s.mod_dim; ++m) {
            std::vector<SparseVector::Entry> es;
            for (const auto& [r, v] : s.gen_action[static_cast<std::size_t>(j)].column(m).entries())
                es.emplace_back(c.index1(i, r), v);
            for (const auto& [r, v] : s.gen_action[static_cast<std::size_t>(i)].column(m).entries())
                es.emplace_back(c.index1(j, r), swap_sign * v);
            for (const auto& [g, v] : s.f[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].entries())
                es.emplace_back(c.index1(g, m), -v);
            c.d1.set_column(c.index2(static_cast<int>(p), m), SparseVector::from_entries_summed(std::move(es)));
        }
    }

    // the universal sign-convention guard
    for (int col = 0; col < c.dim2; ++col) {
        if (!c.d0.apply(c.d1.column(col)).empty()) {
            auto [i, j] = c.pairs[static_cast<std::size_t>(col / s.mod_dim)];
            throw std::logic_error("chain complex: d0*d1 != 0 on the pair (" +
                                   s.gen_labels[static_cast<std::size_t>(i)] + ", " +
                                   s.gen_labels[static_cast<std::size_t>(j)] + ")");
        }
    }
    return c;
}

CochainComplex build_cochain_complex(ChainSetup setup) {
    CochainComplex c;
    c.setup = std::move(setup);
    const ChainSetup& s = c.setup;
    c.pairs = degree2_pairs(s);
    c.dim0 = s.mod_dim;
    c.dim1 = s.n_gen * s.mod_dim;
    c.dim2 = static_cast<int>(c.pairs.size()) * s.mod_dim;

    c.d0 = SparseRationalMatrix(c.dim1, c.dim0);
    for (int m = 0; m < s.mod_dim; ++m) {
        std::vector<SparseVector::Entry> es;
        for (int g = 0; g < s.n_gen; ++g)
            for (const auto& [r, v] : s.gen_action[static_cast<std::size_t>(g)].column(m).entries())
                es.emplace_back(c.index1(g, r), v);
        c.d0.set_column(m, SparseVector::from_entries(std::move(es)));
    }

    // pairs with f_ij^g != 0, indexed by g
    std::vector<std::vector<std::pair<int, Rational>>> f_hits(static_cast<std::size_t>(s.n_gen));
    for (std::size_t p = 0; p < c.pairs.size(); ++p) {
        auto [i, j] = c.pairs[p];
        for (const auto& [g, v] : s.f[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].entries())
            f_hits[static_cast<std::size_t>(g)].emplace_back(static_cast<int>(p), v);
    }
    // pair lists touching a fixed generator
    std::vector<std::vector<int>> pairs_with(static_cast<std::size_t>(s.n_gen));
    for (std::size_t p = 0; p < c.pairs.size(); ++p) {
        pairs_with[static_cast<std::size_t>(c.pairs[p].first)].push_back(static_cast<int>(p));
        if (c.pairs[p].second != c.pairs[p].first)
            pairs_with[static_cast<std::size_t>(c.pairs[p].second)].push_back(static_cast<int>(p));
    }

    c.d1 = SparseRationalMatrix(c.dim2, c.dim1);
    for (int g = 0; g < s.n_gen; ++g) {
        for (int m = 0; m < s.mod_dim; ++m) {
            std::vector<SparseVector::Entry> es;
            for (int p : pairs_with[static_cast<std::size_t>(g)]) {
                auto [i, j] = c.pairs[static_cast<std::size_t>(p)];
                bool both_odd = s.gen_parity[static_cast<std::size_t>(i)] == 1 &&
                                s.gen_parity[static_cast<std::size_t>(j)] == 1;
                Rational swap_sign = both_odd ? Rational(1) : Rational(-1);
                if (j == g)
                    for (const auto& [r, v] : s.gen_action[static_cast<std::size_t>(i)].column(m).entries())
                        es.emplace_back(p * s.mod_dim + r, v);
                if (i == g)
                    for (const auto& [r, v] : s.gen_action[static_cast<std::size_t>(j)].column(m).entries())
                        es.emplace_back(p * s.mod_dim + r, swap_sign * v);
            }
            for (const auto& [p, v] : f_hits[static_cast<std::size_t>(g)])
                es.emplace_back(p * s.mod_dim + m, -v);
            c.d1.set_column(c.index1(g, m), SparseVector::from_entries_summed(std::move(es)));
        }
    }

    for (int col = 0; col < c.dim0; ++col)
        if (!c.d1.apply(c.d0.column(col)).empty())
            throw std::logic_error("cochain complex: d1*d0 != 0");
    return c;
}

namespace {

// Core of both homology computations: Ker(A)/Im(B) for A: X1 -> X0 and
// B: X2 -> X1 with A B = 0, optionally decomposed along X1 block keys.
CohomologyResult ker_mod_im(const SparseRationalMatrix& a, const SparseRationalMatrix& b,
                            const std::vector<BlockKey>* x1_keys, bool want_reps) {
    const int n1 = a.n_cols();
    std::vector<std::vector<int>> blocks;
    if (x1_keys && static_cast<int>(x1_keys->size()) == n1) {
        std::map<BlockKey, int> block_of;
        for (int i = 0; i < n1; ++i) {
            auto [it, fresh] = block_of.try_emplace((*x1_keys)[static_cast<std::size_t>(i)],
                                                    static_cast<int>(blocks.size()));
            if (fresh) blocks.emplace_back();
            blocks[static_cast<std::size_t>(it->second)].push_back(i);
        }
        // sanity: the rows of A touched by different blocks must not overlap
        std::vector<int> row_block(static_cast<std::size_t>(a.n_rows()), -1);
        bool consistent = true;
        for (std::size_t bi = 0; bi < blocks.size() && consistent; ++bi)
            for (int col : blocks[bi]) {
                for (const auto& [r, v] : a.column(col).entries()) {
                    int& owner = row_block[static_cast<std::size_t>(r)];
                    if (owner == -1)
                        owner = static_cast<int>(bi);
                    else if (owner != static_cast<int>(bi)) {
                        consistent = false;
                        break;
                    }
                }
                if (!consistent) break;
            }
        if (!consistent) {
            blocks.clear();
        }
    }
    if (blocks.empty()) {
        blocks.emplace_back(static_cast<std::size_t>(n1));
        std::iota(blocks[0].begin(), blocks[0].end(), 0);
    }

    // route the columns of B to blocks by their support
    std::vector<int> x1_block(static_cast<std::size_t>(n1), -1);
    for (std::size_t bi = 0; bi < blocks.size(); ++bi)
        for (int i : blocks[bi]) x1_block[static_cast<std::size_t>(i)] = static_cast<int>(bi);
    std::vector<std::vector<int>> b_cols(blocks.size());
    for (int col = 0; col < b.n_cols(); ++col) {
        const auto& sv = b.column(col);
        if (sv.empty()) continue;
        int blk = x1_block[static_cast<std::size_t>(sv.entries()[0].first)];
        for (const auto& [r, v] : sv.entries())
            if (x1_block[static_cast<std::size_t>(r)] != blk)
                throw std::logic_error("homology: boundary image crosses weight blocks");
        b_cols[static_cast<std::size_t>(blk)].push_back(col);
    }

    CohomologyResult out;
    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
        const auto& idxs = blocks[bi];
        // kernel of A restricted to the block columns
        SparseRationalMatrix sub(a.n_rows(), static_cast<int>(idxs.size()));
        for (std::size_t k = 0; k < idxs.size(); ++k) sub.set_column(static_cast<int>(k), a.column(idxs[k]));
        Subspace local_kernel = kernel_basis(sub);
        out.kernel_dim += local_kernel.dim();

        EliminationBasis image;
        int r_local = 0;
        for (int col : b_cols[bi])
            if (image.add(b.column(col))) ++r_local;
        out.image_dim += r_local;

        if (!want_reps) continue;
        int needed = local_kernel.dim() - r_local;
        for (int k = 0; k < local_kernel.dim() && needed > 0; ++k) {
            SparseVector global;
            for (const auto& [loc, v] : local_kernel.basis.column(k).entries())
                global.axpy(v, SparseVector::unit(idxs[static_cast<std::size_t>(loc)]));
            if (image.add(global)) {
                out.representatives.push_back(std::move(global));
                --needed;
            }
        }
    }
    return out;
}

std::vector<BlockKey> chain1_keys(const ChainSetup& s, bool cochain) {
    std::vector<BlockKey> keys;
    if (s.gen_weights.empty() || s.mod_weights.empty()) return keys;
    keys.reserve(static_cast<std::size_t>(s.n_gen * s.mod_dim));
    for (int g = 0; g < s.n_gen; ++g) {
        for (int m = 0; m < s.mod_dim; ++m) {
            BlockKey k;
            const auto& gw = s.gen_weights[static_cast<std::size_t>(g)];
            const auto& mw = s.mod_weights[static_cast<std::size_t>(m)];
            for (std::size_t i = 0; i < gw.size(); ++i)
                k.push_back(cochain ? mw[i] - gw[i] : mw[i] + gw[i]);
            int par = (s.gen_parity[static_cast<std::size_t>(g)] +
                       (s.mod_parity.empty() ? 0 : s.mod_parity[static_cast<std::size_t>(m)])) % 2;
            k.push_back(Rational(par));
            keys.push_back(std::move(k));
        }
    }
    return keys;
}

} // namespace

CohomologyResult homology1(const ChainComplex& c, bool want_representatives) {
    auto keys = chain1_keys(c.setup, false);
    return ker_mod_im(c.d0, c.d1, keys.empty() ? nullptr : &keys, want_representatives);
}

CohomologyResult cohomology1(const CochainComplex& c, bool want_representatives) {
    auto keys = chain1_keys(c.setup, true);
    return ker_mod_im(c.d1, c.d0, keys.empty() ? nullptr : &keys, want_representatives);
}

CohomologyResult homology1(const SuperModule& m, bool want_representatives) {
    return homology1(build_chain_complex(chain_setup(m)), want_representatives);
}

CohomologyResult cohomology1(const SuperModule& m, bool want_representatives) {
    return cohomology1(build_cochain_complex(chain_setup(m)), want_representatives);
}

namespace {

EvenModule adjoint_module(const EvenAlgebraPtr& ev) {
    std::vector<SparseRationalMatrix> act;
    for (int g = 0; g < ev->dim; ++g) act.push_back(ev->ad_matrix(g));
    return make_even_module(ev, ev->dim, std::move(act));
}

// Exterior square of an even module, with the pair basis supplied (i < j).
EvenModule wedge_module(const EvenModule& m, const std::vector<std::pair<int, int>>& pairs) {
    std::vector<int> pair_of(static_cast<std::size_t>(m.dim) * static_cast<std::size_t>(m.dim), -1);
    for (std::size_t p = 0; p < pairs.size(); ++p)
        pair_of[static_cast<std::size_t>(pairs[p].first) * static_cast<std::size_t>(m.dim) +
                static_cast<std::size_t>(pairs[p].second)] = static_cast<int>(p);
    auto wedge_at = [&](int i, int j) -> std::pair<int, Rational> {
        if (i == j) return {-1, Rational(0)};
        if (i < j) return {pair_of[static_cast<std::size_t>(i) * static_cast<std::size_t>(m.dim) + static_cast<std::size_t>(j)], Rational(1)};
        return {pair_of[static_cast<std::size_t>(j) * static_cast<std::size_t>(m.dim) + static_cast<std::size_t>(i)], Rational(-1)};
    };

    const int d = static_cast<int>(pairs.size());
    std::vector<SparseRationalMatrix> act;
    for (std::size_t g = 0; g < m.action.size(); ++g) {
        std::vector<SparseRationalMatrix::Triplet> ts;
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            auto [i, j] = pairs[p];
            for (const auto& [r, v] : m.action[g].column(i).entries()) {
                auto [q, sgn] = wedge_at(r, j);
                if (q >= 0) ts.emplace_back(q, static_cast<int>(p), sgn * v);
            }
            for (const auto& [r, v] : m.action[g].column(j).entries()) {
                auto [q, sgn] = wedge_at(i, r);
                if (q >= 0) ts.emplace_back(q, static_cast<int>(p), sgn * v);
            }
        }
        act.push_back(SparseRationalMatrix::from_triplets_summed(d, d, ts));
    }
    return make_even_module(m.algebra, d, std::move(act));
}

} // namespace

InvariantH1 invariant_restricted_h1(const EvenAlgebraPtr& ev, const EvenModule& uu) {
    ChainComplex c = build_chain_complex(chain_setup(ev, uu));

    EvenModule adj = adjoint_module(ev);
    EvenModule b1 = tensor(adj, uu);
    EvenModule b2 = tensor(wedge_module(adj, c.pairs), uu);

    Subspace inv0 = invariants(uu);
    Subspace inv1 = invariants(b1);
    Subspace inv2 = invariants(b2);

    // restrict the maps; failure to land in the invariants is an
    // equivariance bug
    Coordinates co0(inv0.basis);
    Coordinates co1(inv1.basis);
    SparseRationalMatrix r0(inv0.dim(), inv1.dim());
    for (int k = 0; k < inv1.dim(); ++k) {
        auto co = co0.of(c.d0.apply(inv1.basis.column(k)));
        if (!co) throw std::logic_error("invariant_restricted_h1: d0 restriction is not equivariant");
        r0.set_column(k, *co);
    }
    SparseRationalMatrix r1(inv1.dim(), inv2.dim());
    for (int k = 0; k < inv2.dim(); ++k) {
        auto co = co1.of(c.d1.apply(inv2.basis.column(k)));
        if (!co) throw std::logic_error("invariant_restricted_h1: d1 restriction is not equivariant");
        r1.set_column(k, *co);
    }

    InvariantH1 out;
    out.invariant_dim0 = inv0.dim();
    out.invariant_dim1 = inv1.dim();
    out.invariant_dim2 = inv2.dim();
    out.result = ker_mod_im(r0, r1, nullptr, true);
    // lift representatives and the kernel to B1 coordinates
    for (auto& rep : out.result.representatives) {
        SparseVector lifted;
        for (const auto& [k, v] : rep.entries()) lifted.axpy(v, inv1.basis.column(k));
        rep = std::move(lifted);
    }
    Subspace ker = kernel_basis(r0);
    for (int k = 0; k < ker.dim(); ++k) {
        SparseVector lifted;
        for (const auto& [i, v] : ker.basis.column(k).entries()) lifted.axpy(v, inv1.basis.column(i));
        out.kernel_basis_b1.push_back(std::move(lifted));
    }
    return out;
}

namespace {

// dense inverse of the invariant metric restricted to a factor
std::vector<std::vector<Rational>> metric_inverse(const SparseRationalMatrix& g, const std::vector<int>& idx) {
    const int n = static_cast<int>(idx.size());
    SparseRationalMatrix sub(n, n);
    for (int j = 0; j < n; ++j) {
        SparseVector col;
        for (int i = 0; i < n; ++i) {
            Rational v = g.at(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
            if (!v.is_zero()) col.axpy(v, SparseVector::unit(i));
        }
        sub.set_column(j, col);
    }
    std::vector<std::vector<Rational>> inv(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        std::vector<Rational> e(static_cast<std::size_t>(n), Rational(0));
        e[static_cast<std::size_t>(j)] = Rational(1);
        auto x = solve(sub, e);
        if (!x) throw std::logic_error("casimir: factor metric is degenerate");
        inv[static_cast<std::size_t>(j)] = *x;
    }
    // transpose-free: metric symmetric, inverse symmetric
    return inv;
}

} // namespace

Rational casimir_adjoint(const EvenAlgebraPtr& ev, int factor) {
    if (factor < 0 || factor >= static_cast<int>(ev->factors.size()))
        throw std::invalid_argument("casimir_adjoint: no such factor");
    const auto& idx = ev->factors[static_cast<std::size_t>(factor)].indices;
    const int n = static_cast<int>(idx.size());

    // invariant metric g = -K, recorded per-factor sign normalization
    SparseRationalMatrix g = ev->killing.scaled(Rational(-1));
    auto p = metric_inverse(g, idx);

    auto f_low = [&](int a, int b, int c) { // f_{abc} with the third index lowered
        Rational s(0);
        // [factor, factor] stays in the factor, so the metric contraction is direct
        for (const auto& [cc, v] : ev->bracket_coeffs(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(b)]).entries())
            s += v * g.at(cc, idx[static_cast<std::size_t>(c)]);
        return s;
    };
    // raised f^{ab}_d
    auto f_raised = [&](int a, int b, int d) {
        Rational s(0);
        for (int a2 = 0; a2 < n; ++a2)
            for (int b2 = 0; b2 < n; ++b2) {
                Rational pa = p[static_cast<std::size_t>(a)][static_cast<std::size_t>(a2)];
                Rational pb = p[static_cast<std::size_t>(b)][static_cast<std::size_t>(b2)];
                if (pa.is_zero() || pb.is_zero()) continue;
                s += pa * pb * f_low(a2, b2, d);
            }
        return s;
    };

    std::optional<Rational> c_value;
    for (int cI = 0; cI < n; ++cI) {
        for (int d = 0; d < n; ++d) {
            Rational t(0);
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    Rational fr = f_raised(a, b, d);
                    if (fr.is_zero()) continue;
                    t += f_low(cI, a, b) * fr;              // f_cab f^{ab}_d
                    t -= Rational(1, 2) * f_low(a, b, cI) * fr; // (1/2) f_abc f^{ab}_d
                }
            Rational gcd_entry = g.at(idx[static_cast<std::size_t>(cI)], idx[static_cast<std::size_t>(d)]);
            if (gcd_entry.is_zero()) {
                if (!t.is_zero()) throw std::logic_error("casimir_adjoint: contraction is not a metric multiple");
                continue;
            }
            Rational ratio = t / gcd_entry;
            if (!c_value)
                c_value = ratio;
            else if (!(*c_value == ratio))
                throw std::logic_error("casimir_adjoint: contraction is not a metric multiple");
        }
    }
    if (!c_value) throw std::logic_error("casimir_adjoint: degenerate factor metric");

    // cross-check against the Casimir operator of g on the factor adjoint:
    // sum_ab P^{ab} ad_a ad_b acts as -2C
    SparseRationalMatrix omega(ev->dim, ev->dim);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            Rational pab = p[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
            if (pab.is_zero()) continue;
            omega = omega + (ev->ad_matrix(idx[static_cast<std::size_t>(a)]) *
                             ev->ad_matrix(idx[static_cast<std::size_t>(b)]))
                                .scaled(pab);
        }
    for (int k = 0; k < n; ++k) {
        SparseVector col = omega.column(idx[static_cast<std::size_t>(k)]);
        SparseVector expect = SparseVector::unit(idx[static_cast<std::size_t>(k)]);
        expect.scale(Rational(-2) * *c_value);
        if (!(col == expect))
            throw std::logic_error("casimir_adjoint: operator cross-check failed");
    }
    return *c_value;
}

ProofDiagnostics proof_diagnostics(const EvenAlgebraPtr& ev, const EvenModule& uu) {
    ProofDiagnostics out;
    ChainComplex c = build_chain_complex(chain_setup(ev, uu));
    EvenModule adj = adjoint_module(ev);
    EvenModule b1 = tensor(adj, uu);
    EvenModule b2 = tensor(wedge_module(adj, c.pairs), uu);

    // the singlet w0 and the I1^Y = Y (x) w0 cycle
    Subspace singlets = invariants(uu);
    if (singlets.dim() >= 1 && ev->y_index >= 0) {
        SparseVector i1y;
        for (const auto& [m, v] : singlets.basis.column(0).entries())
            i1y.axpy(v, SparseVector::unit(c.index1(ev->y_index, m)));
        if (!c.d0.apply(i1y).empty()) out.d0_i1y_zero = false;
    }

    // constituents of uu for the W couplings
    std::vector<SparseRationalMatrix::Triplet> rts;
    for (std::size_t k = 0; k < ev->raising.size(); ++k)
        for (int col = 0; col < uu.dim; ++col)
            for (const auto& [r, v] : uu.act(ev->raising[k]).column(col).entries())
                rts.emplace_back(static_cast<int>(k) * uu.dim + r, col, v);
    Subspace singular = kernel_basis(SparseRationalMatrix::from_triplets(
        static_cast<int>(ev->raising.size()) * uu.dim, uu.dim, rts));

    std::vector<Subspace> constituents;
    for (const auto& [w, space] : weight_spaces(uu)) {
        Subspace s = intersect(space, singular);
        if (s.dim() == 0) continue;
        constituents.push_back(cyclic_closure(uu, s.basis));
    }

    for (int factor = 0; factor < static_cast<int>(ev->factors.size()); ++factor) {
        const auto& idx = ev->factors[static_cast<std::size_t>(factor)].indices;
        const int n = static_cast<int>(idx.size());

        // factor adjoint as a module over the full even algebra
        std::vector<SparseRationalMatrix> fact_act;
        for (int g = 0; g < ev->dim; ++g) {
            std::vector<SparseRationalMatrix::Triplet> ts;
            for (int bcol = 0; bcol < n; ++bcol)
                for (const auto& [cc, v] : ev->bracket_coeffs(g, idx[static_cast<std::size_t>(bcol)]).entries())
                    for (int r = 0; r < n; ++r)
                        if (idx[static_cast<std::size_t>(r)] == cc) ts.emplace_back(r, bcol, v);
            fact_act.push_back(SparseRationalMatrix::from_triplets(n, n, ts));
        }
        EvenModule adj_factor = make_even_module(ev, n, std::move(fact_act));

        auto thetas = even_intertwiners(adj_factor, uu);
        if (thetas.empty()) continue;
        out.adjoint_present = true;
        const SparseRationalMatrix& theta = thetas[0]; // w_a = theta(J_a)

        SparseRationalMatrix g = ev->killing.scaled(Rational(-1));
        auto p = metric_inverse(g, idx);

        // I1 = P^{ab} J_a (x) w_b
        SparseVector i1;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                Rational pab = p[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
                if (pab.is_zero()) continue;
                for (const auto& [m, v] : theta.column(b).entries())
                    i1.axpy(pab * v, SparseVector::unit(c.index1(idx[static_cast<std::size_t>(a)], m)));
            }
        if (!c.d0.apply(i1).empty()) out.d0_i1_zero = false;

        // I2 = 1/2 P P f (J wedge J) (x) w
        SparseVector i2;
        for (int a = 0; a < n; ++a) {
            for (int b = a + 1; b < n; ++b) {
                int pi = c.pair_index(std::min(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(b)]),
                                      std::max(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(b)]));
                Rational orient = idx[static_cast<std::size_t>(a)] < idx[static_cast<std::size_t>(b)] ? Rational(1) : Rational(-1);
                for (int cc = 0; cc < n; ++cc) {
                    Rational coeff(0);
                    for (int a2 = 0; a2 < n; ++a2)
                        for (int b2 = 0; b2 < n; ++b2) {
                            Rational paa = p[static_cast<std::size_t>(a)][static_cast<std::size_t>(a2)];
                            Rational pbb = p[static_cast<std::size_t>(b)][static_cast<std::size_t>(b2)];
                            if (paa.is_zero() || pbb.is_zero()) continue;
                            coeff += paa * pbb *
                                     ev->bracket_coeffs(idx[static_cast<std::size_t>(a2)], idx[static_cast<std::size_t>(b2)])
                                         .at(idx[static_cast<std::size_t>(cc)]);
                        }
                    if (coeff.is_zero()) continue;
                    for (const auto& [m, v] : theta.column(cc).entries())
                        i2.axpy(orient * coeff * v, SparseVector::unit(c.index2(pi, m)));
                }
            }
        }
        Rational cas = casimir_adjoint(ev, factor);
        out.factor_casimirs.push_back(cas);
        SparseVector residual = c.d1.apply(i2);
        residual.axpy(-cas, i1);
        if (!residual.empty()) out.d1_i2_proportional = false;

        // I2^Y = P^{ab} (Y wedge J_a) (x) w_b
        if (ev->y_index >= 0) {
            SparseVector i2y;
            for (int a = 0; a < n; ++a) {
                int ja = idx[static_cast<std::size_t>(a)];
                int pi = c.pair_index(std::min(ev->y_index, ja), std::max(ev->y_index, ja));
                Rational orient = ev->y_index < ja ? Rational(1) : Rational(-1);
                for (int b = 0; b < n; ++b) {
                    Rational pab = p[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
                    if (pab.is_zero()) continue;
                    for (const auto& [m, v] : theta.column(b).entries())
                        i2y.axpy(orient * pab * v, SparseVector::unit(c.index2(pi, m)));
                }
            }
            if (!c.d1.apply(i2y).empty()) out.d1_i2y_zero = false;
        }

        // I2^W for every non-adjoint, non-singlet constituent
        std::vector<std::pair<int, int>> factor_pairs;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) factor_pairs.emplace_back(a, b);
        EvenModule wedge_factor = wedge_module(adj_factor, factor_pairs);
        for (const auto& cons : constituents) {
            if (cons.dim() == 1) continue; // the singlet
            EvenModule w_mod = submodule(uu, cons);
            if (!even_intertwiners(adj_factor, w_mod).empty()) continue; // adjoint copy
            EvenModule pairing = tensor(wedge_factor, w_mod);
            Subspace couplings = invariants(pairing);
            for (int k = 0; k < couplings.dim(); ++k) {
                ++out.n_w_couplings;
                // map (pair in the factor wedge) (x) (w basis) into B2
                SparseVector i2w;
                for (const auto& [flat, v] : couplings.basis.column(k).entries()) {
                    auto [a, b] = factor_pairs[static_cast<std::size_t>(flat / w_mod.dim)];
                    int wi = flat % w_mod.dim;
                    int ja = idx[static_cast<std::size_t>(a)], jb = idx[static_cast<std::size_t>(b)];
                    int pi = c.pair_index(std::min(ja, jb), std::max(ja, jb));
                    Rational orient = ja < jb ? Rational(1) : Rational(-1);
                    for (const auto& [m, mv] : cons.basis.column(wi).entries())
                        i2w.axpy(orient * v * mv, SparseVector::unit(c.index2(pi, m)));
                }
                if (!c.d1.apply(i2w).empty()) out.d1_i2w_zero = false;
            }
        }
    }

    InvariantH1 inv = invariant_restricted_h1(ev, uu);
    out.invariant_kernel_dim = inv.result.kernel_dim;
    out.invariant_image_dim = inv.result.image_dim;
    return out;
}

ShapiroReport shapiro_check(const EvenModule& u) {
    ShapiroReport r;
    SuperModule big = doubling_module(u);
    r.direct_h1 = homology1(big, false).quotient();
    EvenModule uu = tensor(u, dual(u));
    r.invariant_h1 = invariant_restricted_h1(u.algebra, uu).result.quotient();
    return r;
}

} // namespace superkac

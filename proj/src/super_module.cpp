#include "superkac/super_module.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace superkac {

std::string provenance_name(Provenance p) {
    switch (p) {
        case Provenance::kac_plus: return "kac_plus";
        case Provenance::kac_minus: return "kac_minus";
        case Provenance::dual: return "dual";
        case Provenance::tensor: return "tensor";
        case Provenance::induced_even: return "induced_even";
        case Provenance::extension: return "extension";
        case Provenance::submodule: return "submodule";
        case Provenance::quotient: return "quotient";
        case Provenance::hand_supplied: return "hand_supplied";
    }
    return "unknown";
}

Provenance provenance_from_name(const std::string& name) {
    for (Provenance p : {Provenance::kac_plus, Provenance::kac_minus, Provenance::dual, Provenance::tensor,
                         Provenance::induced_even, Provenance::extension, Provenance::submodule,
                         Provenance::quotient, Provenance::hand_supplied})
        if (provenance_name(p) == name) return p;
    throw std::invalid_argument("unknown provenance tag '" + name + "'");
}

int SuperModule::PbwShape::index(std::uint32_t q_mask, std::uint32_t qb_mask, int seed) const {
    int qm = has_minus ? static_cast<int>(q_mask) : 0;
    int qbm = has_plus ? static_cast<int>(qb_mask) : 0;
    return (qm * n_plus_masks() + qbm) * seed_dim + seed;
}

SparseVector SuperModule::apply(const SparseVector& coeffs, const SparseVector& v) const {
    SparseVector out;
    for (const auto& [g, c] : coeffs.entries()) out.axpy(c, act(g).apply(v));
    return out;
}

void verify_super_module(const SuperModule& v) {
    const auto& alg = *v.algebra;
    if (static_cast<int>(v.action.size()) != alg.dim)
        throw std::logic_error("super module: one action matrix per generator required");
    if (static_cast<int>(v.parity.size()) != v.dim)
        throw std::logic_error("super module: parity list length mismatch");
    for (int g = 0; g < alg.dim; ++g) {
        const auto& m = v.act(g);
        if (m.n_rows() != v.dim || m.n_cols() != v.dim)
            throw std::logic_error("super module: action matrix shape mismatch");
        // odd generators must flip basis-vector parity, even ones preserve it
        for (int c = 0; c < v.dim; ++c)
            for (const auto& [r, val] : m.column(c).entries())
                if (((v.parity[static_cast<std::size_t>(r)] + v.parity[static_cast<std::size_t>(c)]) % 2) !=
                    alg.parity(g))
                    throw std::logic_error("super module: action violates the parity grading at " + alg.label(g));
    }
    for (int x = 0; x < alg.dim; ++x) {
        for (int y = 0; y < alg.dim; ++y) {
            SparseRationalMatrix lhs(v.dim, v.dim);
            for (const auto& [c, val] : alg.bracket_coeffs(x, y).entries()) lhs = lhs + v.act(c).scaled(val);
            SparseRationalMatrix rhs = v.act(x) * v.act(y);
            Rational sgn = (alg.parity(x) == 1 && alg.parity(y) == 1) ? Rational(1) : Rational(-1);
            rhs = rhs + (v.act(y) * v.act(x)).scaled(sgn);
            if (!(lhs == rhs))
                throw std::logic_error("super module: graded representation property fails for (" + alg.label(x) +
                                       ", " + alg.label(y) + ")");
        }
    }
}

SuperModule make_super_module(SuperAlgebraPtr algebra, int dim, std::vector<std::uint8_t> parity,
                              std::vector<SparseRationalMatrix> action, Provenance prov) {
    SuperModule v;
    v.algebra = std::move(algebra);
    v.dim = dim;
    v.parity = std::move(parity);
    v.action = std::move(action);
    v.provenance = prov;
    verify_super_module(v);
    return v;
}

namespace {

enum class InductionKind { from_plus, from_minus, from_even };

// PBW straightening for the three induced constructions. States are
// (q_mask, qb_mask, seed index); the normal form is Q's (ascending) then
// Qbar's (ascending) applied to the seed vector.
class Inducer {
public:
    Inducer(const SuperAlgebraPtr& alg, const EvenModule& seed, InductionKind kind)
        : alg_(alg), seed_(seed), kind_(kind) {
        const auto& ev = *seed.algebra;
        if (!ev.parent || ev.parent.get() != alg.get())
            throw std::invalid_argument("induce: seed module is not over the even part of this algebra");
        even_local_.assign(static_cast<std::size_t>(alg->dim), -1);
        for (int l = 0; l < ev.dim; ++l) even_local_[static_cast<std::size_t>(ev.parent_index[static_cast<std::size_t>(l)])] = l;
        pos_minus_.assign(static_cast<std::size_t>(alg->dim), -1);
        pos_plus_.assign(static_cast<std::size_t>(alg->dim), -1);
        for (std::size_t k = 0; k < alg->minus_indices.size(); ++k)
            pos_minus_[static_cast<std::size_t>(alg->minus_indices[k])] = static_cast<int>(k);
        for (std::size_t k = 0; k < alg->plus_indices.size(); ++k)
            pos_plus_[static_cast<std::size_t>(alg->plus_indices[k])] = static_cast<int>(k);

        shape_.minus_gens = alg->minus_indices;
        shape_.plus_gens = alg->plus_indices;
        shape_.seed_dim = seed.dim;
        shape_.has_minus = kind != InductionKind::from_minus;
        shape_.has_plus = kind != InductionKind::from_plus;
    }

    const SuperModule::PbwShape& shape() const { return shape_; }

    int dim() const { return shape_.n_minus_masks() * shape_.n_plus_masks() * seed_.dim; }

    SuperModule build(Provenance prov) const {
        const int d = dim();
        std::vector<std::uint8_t> parity(static_cast<std::size_t>(d), 0);
        for (std::uint32_t mq = 0; mq < static_cast<std::uint32_t>(shape_.n_minus_masks()); ++mq)
            for (std::uint32_t mqb = 0; mqb < static_cast<std::uint32_t>(shape_.n_plus_masks()); ++mqb)
                for (int u = 0; u < seed_.dim; ++u)
                    parity[static_cast<std::size_t>(shape_.index(mq, mqb, u))] =
                        static_cast<std::uint8_t>((std::popcount(mq) + std::popcount(mqb)) % 2);

        std::vector<SparseRationalMatrix> action;
        action.reserve(static_cast<std::size_t>(alg_->dim));
        for (int g = 0; g < alg_->dim; ++g) {
            SparseRationalMatrix m(d, d);
            for (std::uint32_t mq = 0; mq < static_cast<std::uint32_t>(shape_.n_minus_masks()); ++mq)
                for (std::uint32_t mqb = 0; mqb < static_cast<std::uint32_t>(shape_.n_plus_masks()); ++mqb)
                    for (int u = 0; u < seed_.dim; ++u) {
                        std::vector<SparseVector::Entry> terms;
                        act(g, mq, mqb, u, Rational(1), terms);
                        m.set_column(shape_.index(mq, mqb, u), SparseVector::from_entries_summed(std::move(terms)));
                    }
            action.push_back(std::move(m));
        }
        SuperModule v;
        v.algebra = alg_;
        v.dim = d;
        v.parity = std::move(parity);
        v.action = std::move(action);
        v.provenance = prov;
        v.pbw = shape_;
        verify_super_module(v);
        return v;
    }

private:
    // out += coeff * (g acting on the state Q_mask Qbar_mask (x) u).
    //
    // Only like-with-like insertions are positional (Q past Q, Qbar past
    // Qbar); whenever an odd letter crosses its opposite the {Q, Qbar}
    // anticommutator spawns even corrections, handled by the traversals.
    void act(int g, std::uint32_t mq, std::uint32_t mqb, int u, const Rational& coeff,
             std::vector<SparseVector::Entry>& out) const {
        if (coeff.is_zero()) return;
        const int z = alg_->z(g);
        if (z == 0) {
            act_even(g, mq, mqb, u, coeff, out);
            return;
        }
        if (z < 0) {
            if (kind_ != InductionKind::from_minus) {
                // the Q block is leftmost: a clean exterior insertion
                insert_q(pos_minus_[static_cast<std::size_t>(g)], mq, mqb, u, coeff, out);
                return;
            }
            // no Q block: traverse the Qbar letters, collecting {Q, Qbar} terms
            std::uint32_t prefix = 0;
            Rational run = coeff;
            for (std::uint32_t walk = mqb; walk != 0; walk &= walk - 1) {
                int pos = std::countr_zero(walk);
                int t = shape_.plus_gens[static_cast<std::size_t>(pos)];
                std::uint32_t suffix = mqb & ~((2u << pos) - 1);
                std::vector<SparseVector::Entry> tmp;
                for (const auto& [c, val] : alg_->bracket_coeffs(g, t).entries())
                    act_even(c, 0, suffix, u, run * val, tmp);
                reinsert_qb_prefix(prefix, tmp, out);
                prefix |= 1u << pos;
                run = -run;
            }
            return; // the seed is annihilated
        }
        // z > 0
        if (kind_ == InductionKind::from_minus) {
            insert_qb_positional(pos_plus_[static_cast<std::size_t>(g)], mq, mqb, u, coeff, out);
            return;
        }
        // traverse the Q letters, collecting {Qbar, Q} terms
        std::uint32_t prefix = 0;
        Rational run = coeff;
        for (std::uint32_t walk = mq; walk != 0; walk &= walk - 1) {
            int pos = std::countr_zero(walk);
            int s = shape_.minus_gens[static_cast<std::size_t>(pos)];
            std::uint32_t suffix = mq & ~((2u << pos) - 1);
            std::vector<SparseVector::Entry> tmp;
            for (const auto& [c, val] : alg_->bracket_coeffs(g, s).entries())
                act_even(c, suffix, mqb, u, run * val, tmp);
            reinsert_q_prefix(prefix, tmp, out);
            prefix |= 1u << pos;
            run = -run;
        }
        if (kind_ == InductionKind::from_plus) return; // passed through: annihilates the seed
        // `run` already carries the (-1)^p from crossing the Q block
        insert_qb_positional(pos_plus_[static_cast<std::size_t>(g)], mq, mqb, u, run, out);
    }

    // Even letters commute through both odd blocks: in-place replacements on
    // each block, plus the seed action.
    void act_even(int g, std::uint32_t mq, std::uint32_t mqb, int u, const Rational& coeff,
                  std::vector<SparseVector::Entry>& out) const {
        if (coeff.is_zero()) return;
        for (std::uint32_t walk = mq; walk != 0; walk &= walk - 1) {
            int pos = std::countr_zero(walk);
            int s = shape_.minus_gens[static_cast<std::size_t>(pos)];
            std::uint32_t wo = mq & ~(1u << pos);
            for (const auto& [c, val] : alg_->bracket_coeffs(g, s).entries()) {
                int cpos = pos_minus_[static_cast<std::size_t>(c)];
                if (wo & (1u << cpos)) continue;
                Rational v = coeff * val;
                if (replace_parity(wo, pos, cpos)) v = -v;
                out.emplace_back(shape_.index(wo | (1u << cpos), mqb, u), std::move(v));
            }
        }
        for (std::uint32_t walk = mqb; walk != 0; walk &= walk - 1) {
            int pos = std::countr_zero(walk);
            int t = shape_.plus_gens[static_cast<std::size_t>(pos)];
            std::uint32_t wo = mqb & ~(1u << pos);
            for (const auto& [c, val] : alg_->bracket_coeffs(g, t).entries()) {
                int cpos = pos_plus_[static_cast<std::size_t>(c)];
                if (wo & (1u << cpos)) continue;
                Rational v = coeff * val;
                if (replace_parity(wo, pos, cpos)) v = -v;
                out.emplace_back(shape_.index(mq, wo | (1u << cpos), u), std::move(v));
            }
        }
        int l = even_local_[static_cast<std::size_t>(g)];
        for (const auto& [r, val] : seed_.act(l).column(u).entries())
            out.emplace_back(shape_.index(mq, mqb, r), coeff * val);
    }

    // parity of moving a letter out of slot `from` and into slot `to` within
    // the mask `others`
    static bool replace_parity(std::uint32_t others, int from, int to) {
        if (from == to) return false;
        int lo = std::min(from, to), hi = std::max(from, to);
        std::uint32_t between = others & ((1u << hi) - 1) & ~((2u << lo) - 1);
        return std::popcount(between) % 2 == 1;
    }

    void insert_q(int pos, std::uint32_t mq, std::uint32_t mqb, int u, const Rational& coeff,
                  std::vector<SparseVector::Entry>& out) const {
        if (mq & (1u << pos)) return;
        Rational v = coeff;
        if (std::popcount(mq & ((1u << pos) - 1)) % 2 == 1) v = -v;
        out.emplace_back(shape_.index(mq | (1u << pos), mqb, u), std::move(v));
    }

    void reinsert_q_prefix(std::uint32_t prefix, const std::vector<SparseVector::Entry>& terms,
                           std::vector<SparseVector::Entry>& out) const {
        std::vector<SparseVector::Entry> cur = terms;
        // restore from the innermost prefix letter outwards
        for (int pos = 31; pos >= 0; --pos) {
            if (!(prefix & (1u << pos))) continue;
            std::vector<SparseVector::Entry> next;
            for (const auto& [idx, val] : cur) {
                std::uint32_t mq, mqb;
                int u;
                decode(idx, mq, mqb, u);
                insert_q(pos, mq, mqb, u, val, next);
            }
            cur = std::move(next);
        }
        out.insert(out.end(), cur.begin(), cur.end());
    }

    void reinsert_qb_prefix(std::uint32_t prefix, const std::vector<SparseVector::Entry>& terms,
                            std::vector<SparseVector::Entry>& out) const {
        std::vector<SparseVector::Entry> cur = terms;
        for (int pos = 31; pos >= 0; --pos) {
            if (!(prefix & (1u << pos))) continue;
            std::vector<SparseVector::Entry> next;
            for (const auto& [idx, val] : cur) {
                std::uint32_t mq, mqb;
                int u;
                decode(idx, mq, mqb, u);
                insert_qb_positional(pos, mq, mqb, u, val, next);
            }
            cur = std::move(next);
        }
        out.insert(out.end(), cur.begin(), cur.end());
    }

    // Positional Qbar insertion (no Q crossing): valid when no Q block exists
    // or when the crossing sign is already accounted for by the caller.
    void insert_qb_positional(int pos, std::uint32_t mq, std::uint32_t mqb, int u, const Rational& coeff,
                              std::vector<SparseVector::Entry>& out) const {
        if (mqb & (1u << pos)) return;
        Rational v = coeff;
        if (std::popcount(mqb & ((1u << pos) - 1)) % 2 == 1) v = -v;
        out.emplace_back(shape_.index(mq, mqb | (1u << pos), u), std::move(v));
    }

    void decode(int index, std::uint32_t& mq, std::uint32_t& mqb, int& u) const {
        u = index % shape_.seed_dim;
        int rest = index / shape_.seed_dim;
        mqb = static_cast<std::uint32_t>(rest % shape_.n_plus_masks());
        mq = static_cast<std::uint32_t>(rest / shape_.n_plus_masks());
    }

    SuperAlgebraPtr alg_;
    const EvenModule& seed_;
    InductionKind kind_;
    std::vector<int> even_local_;
    std::vector<int> pos_minus_, pos_plus_;
    SuperModule::PbwShape shape_;
};

} // namespace

SuperModule induce_plus(const EvenModule& u) {
    Inducer ind(u.algebra->parent, u, InductionKind::from_plus);
    return ind.build(Provenance::kac_plus);
}

SuperModule induce_minus(const EvenModule& u) {
    Inducer ind(u.algebra->parent, u, InductionKind::from_minus);
    return ind.build(Provenance::kac_minus);
}

SuperModule induce_even(const EvenModule& u0) {
    Inducer ind(u0.algebra->parent, u0, InductionKind::from_even);
    return ind.build(Provenance::induced_even);
}

SuperModule dual_module(const SuperModule& v) {
    std::vector<SparseRationalMatrix> action;
    action.reserve(v.action.size());
    for (int g = 0; g < v.algebra->dim; ++g) {
        SparseRationalMatrix t = v.act(g).transpose();
        SparseRationalMatrix out(v.dim, v.dim);
        for (int i = 0; i < v.dim; ++i) {
            SparseVector col = t.column(i);
            bool flip = v.algebra->parity(g) == 1 && v.parity[static_cast<std::size_t>(i)] == 1;
            col.scale(flip ? Rational(1) : Rational(-1));
            out.set_column(i, std::move(col));
        }
        action.push_back(std::move(out));
    }
    return make_super_module(v.algebra, v.dim, v.parity, std::move(action), Provenance::dual);
}

SuperModule tensor(const SuperModule& v, const SuperModule& w) {
    if (v.algebra.get() != w.algebra.get())
        throw std::invalid_argument("tensor: modules over different algebras");
    const int d1 = v.dim, d2 = w.dim, d = d1 * d2;
    std::vector<std::uint8_t> parity(static_cast<std::size_t>(d));
    for (int i = 0; i < d1; ++i)
        for (int j = 0; j < d2; ++j)
            parity[static_cast<std::size_t>(i * d2 + j)] =
                static_cast<std::uint8_t>((v.parity[static_cast<std::size_t>(i)] + w.parity[static_cast<std::size_t>(j)]) % 2);

    std::vector<SparseRationalMatrix> action;
    action.reserve(v.action.size());
    for (int g = 0; g < v.algebra->dim; ++g) {
        std::vector<SparseRationalMatrix::Triplet> ts;
        for (int c = 0; c < d1; ++c)
            for (const auto& [r, val] : v.act(g).column(c).entries())
                for (int j = 0; j < d2; ++j) ts.emplace_back(r * d2 + j, c * d2 + j, val);
        const bool odd = v.algebra->parity(g) == 1;
        for (int c = 0; c < d2; ++c)
            for (const auto& [r, val] : w.act(g).column(c).entries())
                for (int i = 0; i < d1; ++i) {
                    Rational s = val;
                    if (odd && v.parity[static_cast<std::size_t>(i)] == 1) s = -s;
                    ts.emplace_back(i * d2 + r, i * d2 + c, s);
                }
        action.push_back(SparseRationalMatrix::from_triplets_summed(d, d, ts));
    }
    return make_super_module(v.algebra, d, std::move(parity), std::move(action), Provenance::tensor);
}

SuperModule doubling_module(const EvenModule& u) {
    return tensor(induce_plus(u), induce_minus(dual(u)));
}

EvenModule even_restriction(const SuperModule& v, const EvenAlgebraPtr& ev) {
    if (!ev->parent || ev->parent.get() != v.algebra.get())
        throw std::invalid_argument("even_restriction: algebra mismatch");
    std::vector<SparseRationalMatrix> action;
    action.reserve(static_cast<std::size_t>(ev->dim));
    for (int l = 0; l < ev->dim; ++l) action.push_back(v.act(ev->parent_index[static_cast<std::size_t>(l)]));
    return make_even_module(ev, v.dim, std::move(action));
}

std::optional<std::vector<BlockKey>> cartan_parity_keys(const SuperModule& v) {
    std::vector<const SparseRationalMatrix*> cartan;
    for (int c : v.algebra->cartan_indices) cartan.push_back(&v.act(c));
    auto keys = diagonal_keys(cartan, v.dim);
    if (!keys) return std::nullopt;
    for (int i = 0; i < v.dim; ++i)
        (*keys)[static_cast<std::size_t>(i)].push_back(Rational(v.parity[static_cast<std::size_t>(i)]));
    return keys;
}

namespace {

bool induced_from_even(const SuperModule& m) {
    return m.pbw.has_value() && m.pbw->has_minus && m.pbw->has_plus;
}

// Frobenius reciprocity: Hom_L(Ind_{L0bar}(N), X) = Hom_{L0bar}(N, Res X).
// Each even-equivariant seed map extends along the PBW monomials, and the
// extension is verified to intertwine before being returned.
std::vector<SparseRationalMatrix> maps_from_induced(const SuperModule& ind, const SuperModule& target) {
    const auto& shape = *ind.pbw;
    auto ev = even_subalgebra(ind.algebra);

    // seed module: the (0,0) block of the induced action
    std::vector<SparseRationalMatrix> seed_action;
    for (int l = 0; l < ev->dim; ++l) {
        const auto& full = ind.act(ev->parent_index[static_cast<std::size_t>(l)]);
        std::vector<SparseRationalMatrix::Triplet> ts;
        for (int w = 0; w < shape.seed_dim; ++w)
            for (const auto& [r, v] : full.column(shape.index(0, 0, w)).entries()) {
                if (r >= shape.seed_dim)
                    throw std::logic_error("equivariant_maps: even action leaks out of the seed sector");
                ts.emplace_back(r, w, v);
            }
        seed_action.push_back(SparseRationalMatrix::from_triplets(shape.seed_dim, shape.seed_dim, ts));
    }
    EvenModule seed = make_even_module(ev, shape.seed_dim, std::move(seed_action));
    EvenModule res_target = even_restriction(target, ev);
    auto seeds = even_intertwiners(seed, res_target);

    std::vector<SparseRationalMatrix> out;
    for (const auto& phi0 : seeds) {
        SparseRationalMatrix s(target.dim, ind.dim);
        for (std::uint32_t mq = 0; mq < static_cast<std::uint32_t>(shape.n_minus_masks()); ++mq)
            for (std::uint32_t mqb = 0; mqb < static_cast<std::uint32_t>(shape.n_plus_masks()); ++mqb)
                for (int w = 0; w < shape.seed_dim; ++w) {
                    SparseVector v = phi0.column(w);
                    // apply the monomial right-to-left
                    for (int pos = static_cast<int>(shape.plus_gens.size()) - 1; pos >= 0; --pos)
                        if (mqb & (1u << pos))
                            v = target.act(shape.plus_gens[static_cast<std::size_t>(pos)]).apply(v);
                    for (int pos = static_cast<int>(shape.minus_gens.size()) - 1; pos >= 0; --pos)
                        if (mq & (1u << pos))
                            v = target.act(shape.minus_gens[static_cast<std::size_t>(pos)]).apply(v);
                    s.set_column(shape.index(mq, mqb, w), std::move(v));
                }
        // guard: the extension must intertwine every generator
        for (int g = 0; g < ind.algebra->dim; ++g)
            if (!(s * ind.act(g) == target.act(g) * s))
                throw std::logic_error("equivariant_maps: Frobenius extension failed to intertwine");
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace

std::vector<SparseRationalMatrix> equivariant_maps(const SuperModule& m1, const SuperModule& m2) {
    if (m1.algebra.get() != m2.algebra.get())
        throw std::invalid_argument("equivariant_maps: modules over different algebras");
    if (induced_from_even(m1)) return maps_from_induced(m1, m2);
    auto k1 = cartan_parity_keys(m1);
    auto k2 = cartan_parity_keys(m2);
    std::vector<BlockKey> p1, p2;
    if (!k1 || !k2) {
        // fall back to parity-only blocks
        p1.reserve(static_cast<std::size_t>(m1.dim));
        for (int i = 0; i < m1.dim; ++i) p1.push_back({Rational(m1.parity[static_cast<std::size_t>(i)])});
        p2.reserve(static_cast<std::size_t>(m2.dim));
        for (int i = 0; i < m2.dim; ++i) p2.push_back({Rational(m2.parity[static_cast<std::size_t>(i)])});
    } else {
        p1 = std::move(*k1);
        p2 = std::move(*k2);
    }
    return intertwiner_space(m1.action, m1.dim, m2.action, m2.dim, &p1, &p2);
}

std::optional<SparseRationalMatrix> find_equivariant_iso(const SuperModule& m1, const SuperModule& m2) {
    if (m1.algebra.get() != m2.algebra.get())
        throw std::invalid_argument("find_equivariant_iso: modules over different algebras");
    if (m1.dim != m2.dim) return std::nullopt;
    if (!induced_from_even(m1) && induced_from_even(m2)) {
        // solve in the cheap direction and invert
        auto reverse = invertible_element(maps_from_induced(m2, m1), m1.dim);
        if (!reverse) return std::nullopt;
        auto inv = invert_matrix(*reverse);
        if (!inv) return std::nullopt;
        return inv;
    }
    return invertible_element(equivariant_maps(m1, m2), m1.dim);
}

Subspace invariant_closure(const SuperModule& v, const SparseRationalMatrix& seeds) {
    return closure_under(v.action, seeds, v.dim);
}

SuperModule parity_shift(const SuperModule& v) {
    SuperModule out = v;
    for (auto& p : out.parity) p = static_cast<std::uint8_t>(1 - p);
    verify_super_module(out);
    return out;
}

Subspace invariants(const SuperModule& v) {
    const int k = static_cast<int>(v.action.size());
    std::vector<SparseRationalMatrix::Triplet> ts;
    for (int g = 0; g < k; ++g)
        for (int c = 0; c < v.dim; ++c)
            for (const auto& [r, val] : v.action[static_cast<std::size_t>(g)].column(c).entries())
                ts.emplace_back(g * v.dim + r, c, val);
    return kernel_basis(SparseRationalMatrix::from_triplets(k * v.dim, v.dim, ts));
}

Subspace singular_vectors(const SuperModule& v, const EvenAlgebraPtr& ev) {
    std::vector<int> killers = v.algebra->plus_indices;
    for (int r : ev->raising) killers.push_back(ev->parent_index[static_cast<std::size_t>(r)]);
    std::vector<SparseRationalMatrix::Triplet> ts;
    for (std::size_t k = 0; k < killers.size(); ++k)
        for (int c = 0; c < v.dim; ++c)
            for (const auto& [r, val] : v.act(killers[k]).column(c).entries())
                ts.emplace_back(static_cast<int>(k) * v.dim + r, c, val);
    return kernel_basis(
        SparseRationalMatrix::from_triplets(static_cast<int>(killers.size()) * v.dim, v.dim, ts));
}

SuperModule super_submodule(const SuperModule& v, const Subspace& s) {
    Coordinates coords(s.basis);
    std::vector<SparseRationalMatrix> action;
    std::vector<std::uint8_t> parity;
    for (int c = 0; c < s.dim(); ++c) {
        // subspace columns must be parity-homogeneous
        int p = -1;
        for (const auto& [r, val] : s.basis.column(c).entries()) {
            int pr = v.parity[static_cast<std::size_t>(r)];
            if (p < 0) p = pr;
            if (p != pr) throw std::invalid_argument("super_submodule: subspace mixes parities");
        }
        parity.push_back(static_cast<std::uint8_t>(p < 0 ? 0 : p));
    }
    for (const auto& m : v.action) {
        SparseRationalMatrix restricted(s.dim(), s.dim());
        for (int c = 0; c < s.dim(); ++c) {
            auto co = coords.of(m.apply(s.basis.column(c)));
            if (!co) throw std::invalid_argument("super_submodule: subspace is not invariant");
            restricted.set_column(c, *co);
        }
        action.push_back(std::move(restricted));
    }
    return make_super_module(v.algebra, s.dim(), std::move(parity), std::move(action), Provenance::submodule);
}

QuotientResult super_quotient(const SuperModule& v, const Subspace& s) {
    // complement basis among the unit vectors, deterministically
    EliminationBasis elim;
    for (int c = 0; c < s.dim(); ++c)
        if (!elim.add(s.basis.column(c))) throw std::logic_error("super_quotient: subspace basis is dependent");
    std::vector<int> kept;
    for (int i = 0; i < v.dim; ++i)
        if (elim.add(SparseVector::unit(i))) kept.push_back(i);

    // coordinates in the combined basis [S | kept units]; quotient coords are
    // the tail coefficients
    SparseRationalMatrix full(v.dim, s.dim() + static_cast<int>(kept.size()));
    for (int c = 0; c < s.dim(); ++c) full.set_column(c, s.basis.column(c));
    for (std::size_t k = 0; k < kept.size(); ++k)
        full.set_column(s.dim() + static_cast<int>(k), SparseVector::unit(kept[k]));
    Coordinates coords(full);

    const int qd = static_cast<int>(kept.size());
    std::vector<std::uint8_t> parity;
    for (int k : kept) parity.push_back(v.parity[static_cast<std::size_t>(k)]);

    std::vector<SparseRationalMatrix> action;
    for (const auto& m : v.action) {
        SparseRationalMatrix q(qd, qd);
        for (int c = 0; c < qd; ++c) {
            auto co = coords.of(m.apply(SparseVector::unit(kept[static_cast<std::size_t>(c)])));
            if (!co) throw std::logic_error("super_quotient: coordinate solve failed");
            SparseVector col;
            for (const auto& [idx, val] : co->entries())
                if (idx >= s.dim()) col.axpy(val, SparseVector::unit(idx - s.dim()));
            q.set_column(c, std::move(col));
        }
        action.push_back(std::move(q));
    }
    QuotientResult out{make_super_module(v.algebra, qd, std::move(parity), std::move(action), Provenance::quotient),
                       kept};
    return out;
}

MaximalSubmoduleResult maximal_invariant_submodule(const SuperModule& v, const EvenAlgebraPtr& ev) {
    Subspace s = Subspace::zero(v.dim);
    bool progress = true;
    while (progress) {
        progress = false;
        Subspace sing(Subspace::zero(v.dim));
        std::vector<int> kept;
        if (s.dim() == 0) {
            sing = singular_vectors(v, ev);
            kept.resize(static_cast<std::size_t>(v.dim));
            for (int i = 0; i < v.dim; ++i) kept[static_cast<std::size_t>(i)] = i;
        } else {
            QuotientResult q = super_quotient(v, s);
            Subspace qs = singular_vectors(q.module, ev);
            SparseRationalMatrix lifted(v.dim, qs.dim());
            for (int c = 0; c < qs.dim(); ++c) {
                SparseVector lift;
                for (const auto& [j, val] : qs.basis.column(c).entries())
                    lift.axpy(val, SparseVector::unit(q.kept[static_cast<std::size_t>(j)]));
                lifted.set_column(c, std::move(lift));
            }
            sing = Subspace{v.dim, std::move(lifted)};
        }
        for (int c = 0; c < sing.dim(); ++c) {
            const SparseVector& w = sing.basis.column(c);
            // already inside S?
            EliminationBasis test;
            for (int k = 0; k < s.dim(); ++k) test.add(s.basis.column(k));
            if (!test.add(w)) continue;
            SparseRationalMatrix seeds(v.dim, s.dim() + 1);
            for (int k = 0; k < s.dim(); ++k) seeds.set_column(k, s.basis.column(k));
            seeds.set_column(s.dim(), w);
            Subspace closure = invariant_closure(v, seeds);
            // proper iff the cyclic generator stays outside
            EliminationBasis inside;
            for (int k = 0; k < closure.dim(); ++k) inside.add(closure.basis.column(k));
            if (inside.contains(SparseVector::unit(0))) continue;
            s = std::move(closure);
            progress = true;
            break;
        }
    }
    return MaximalSubmoduleResult{s.dim() == 0, std::move(s)};
}

std::vector<std::pair<WeightVector, int>> decompose_constituents(const SuperModule& v, const EvenAlgebraPtr& ev) {
    std::vector<std::pair<WeightVector, int>> out;
    SuperModule cur = v;
    while (cur.dim > 0) {
        Subspace sing = singular_vectors(cur, ev);
        if (sing.dim() == 0) throw std::logic_error("decompose_constituents: no singular vector found");
        EvenModule restricted = even_restriction(cur, ev);
        auto spaces = weight_spaces(restricted);
        bool found = false;
        for (auto it = spaces.rbegin(); it != spaces.rend() && !found; ++it) {
            Subspace cand = intersect(it->second, sing);
            if (cand.dim() == 0) continue;
            SparseRationalMatrix seed(cur.dim, 1);
            seed.set_column(0, cand.basis.column(0));
            Subspace closure = invariant_closure(cur, seed);
            out.emplace_back(it->first, closure.dim());
            cur = super_quotient(cur, closure).module;
            found = true;
        }
        if (!found) throw std::logic_error("decompose_constituents: singular vectors outside weight spaces");
    }
    return out;
}

std::vector<int> double_induction_reindex(const SuperModule& v_plus, const SuperModule& v_minus,
                                          const SuperModule& induced) {
    if (!v_plus.pbw || !v_minus.pbw || !induced.pbw)
        throw std::invalid_argument("double_induction_reindex: PBW bookkeeping required");
    const auto& sp = *v_plus.pbw;
    const auto& sm = *v_minus.pbw;
    const auto& sw = *induced.pbw;
    if (!sp.has_minus || sp.has_plus || !sm.has_plus || sm.has_minus || !sw.has_minus || !sw.has_plus)
        throw std::invalid_argument("double_induction_reindex: unexpected induction shapes");
    if (sw.seed_dim != sp.seed_dim * sm.seed_dim)
        throw std::invalid_argument("double_induction_reindex: seed dimensions do not match");

    std::vector<int> pi(static_cast<std::size_t>(v_plus.dim * v_minus.dim), -1);
    for (std::uint32_t mq = 0; mq < static_cast<std::uint32_t>(sp.n_minus_masks()); ++mq)
        for (int u = 0; u < sp.seed_dim; ++u)
            for (std::uint32_t mqb = 0; mqb < static_cast<std::uint32_t>(sm.n_plus_masks()); ++mqb)
                for (int us = 0; us < sm.seed_dim; ++us) {
                    int i1 = sp.index(mq, 0, u) * v_minus.dim + sm.index(0, mqb, us);
                    int i2 = sw.index(mq, mqb, u * sm.seed_dim + us);
                    pi[static_cast<std::size_t>(i1)] = i2;
                }
    return pi;
}

} // namespace superkac

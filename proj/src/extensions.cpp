#include "superkac/extensions.hpp"

#include "superkac/poly.hpp"

#include <map>

#include <stdexcept>

namespace superkac {

HomModule hom_module(const SuperModule& v, const SuperModule& u) {
    if (v.algebra.get() != u.algebra.get())
        throw std::invalid_argument("hom_module: modules over different algebras");
    const int du = u.dim, dv = v.dim, d = du * dv;
    std::vector<std::uint8_t> parity(static_cast<std::size_t>(d));
    for (int i = 0; i < du; ++i)
        for (int j = 0; j < dv; ++j)
            parity[static_cast<std::size_t>(i * dv + j)] =
                static_cast<std::uint8_t>((u.parity[static_cast<std::size_t>(i)] + v.parity[static_cast<std::size_t>(j)]) % 2);

    std::vector<SparseRationalMatrix> action;
    for (int g = 0; g < u.algebra->dim; ++g) {
        const bool odd = u.algebra->parity(g) == 1;
        std::vector<SparseRationalMatrix::Triplet> ts;
        // X . E_ij = sum_r rhoU(x)_{ri} E_rj - (-1)^{|x||E_ij|} sum_s rhoV(x)_{js} E_is
        for (int i = 0; i < du; ++i)
            for (const auto& [r, val] : u.act(g).column(i).entries())
                for (int j = 0; j < dv; ++j) ts.emplace_back(r * dv + j, i * dv + j, val);
        SparseRationalMatrix vt = v.act(g).transpose();
        for (int j = 0; j < dv; ++j)
            for (const auto& [s, val] : vt.column(j).entries()) // rhoV(x)_{js}
                for (int i = 0; i < du; ++i) {
                    Rational coeff = -val;
                    if (odd && parity[static_cast<std::size_t>(i * dv + j)] == 1) coeff = -coeff;
                    ts.emplace_back(i * dv + s, i * dv + j, coeff);
                }
        action.push_back(SparseRationalMatrix::from_triplets_summed(d, d, ts));
    }
    HomModule out;
    out.module = make_super_module(u.algebra, d, std::move(parity), std::move(action), Provenance::hand_supplied);
    out.dim_u = du;
    out.dim_v = dv;
    return out;
}

bool is_cocycle(const SuperAlgebra& alg, const SuperModule& u, const SuperModule& v, const Cocycle& c) {
    if (static_cast<int>(c.c.size()) != alg.dim || c.dim_u != u.dim || c.dim_v != v.dim) return false;
    for (int x = 0; x < alg.dim; ++x) {
        for (int y = 0; y < alg.dim; ++y) {
            SparseRationalMatrix lhs(u.dim, v.dim);
            for (const auto& [z, val] : alg.bracket_coeffs(x, y).entries())
                lhs = lhs + c.c[static_cast<std::size_t>(z)].scaled(val);
            // x.c(y) - (-1)^{|x||y|} y.c(x) for an overall even cochain,
            // with a.c(b) = U(a) c(b) - (-1)^{|a||b|} c(b) V(a)
            Rational koszul = (alg.parity(x) == 1 && alg.parity(y) == 1) ? Rational(-1) : Rational(1);
            SparseRationalMatrix xc_y =
                u.act(x) * c.c[static_cast<std::size_t>(y)] -
                (c.c[static_cast<std::size_t>(y)] * v.act(x)).scaled(koszul);
            SparseRationalMatrix yc_x =
                u.act(y) * c.c[static_cast<std::size_t>(x)] -
                (c.c[static_cast<std::size_t>(x)] * v.act(y)).scaled(koszul);
            SparseRationalMatrix rhs = xc_y - yc_x.scaled(koszul);
            if (!(lhs == rhs)) return false;
        }
    }
    return true;
}

ExtensionModule extension_from_cocycle(const SuperModule& u, const SuperModule& v, const Cocycle& c,
                                       const Rational& t) {
    if (u.algebra.get() != v.algebra.get())
        throw std::invalid_argument("extension_from_cocycle: modules over different algebras");
    if (!is_cocycle(*u.algebra, u, v, c))
        throw std::invalid_argument("extension_from_cocycle: cocycle identity fails");

    const int du = u.dim, dv = v.dim, d = du + dv;
    std::vector<std::uint8_t> parity = u.parity;
    parity.insert(parity.end(), v.parity.begin(), v.parity.end());

    std::vector<SparseRationalMatrix> action;
    for (int g = 0; g < u.algebra->dim; ++g) {
        std::vector<SparseRationalMatrix::Triplet> ts;
        for (int col = 0; col < du; ++col)
            for (const auto& [r, val] : u.act(g).column(col).entries()) ts.emplace_back(r, col, val);
        for (int col = 0; col < dv; ++col) {
            for (const auto& [r, val] : v.act(g).column(col).entries())
                ts.emplace_back(du + r, du + col, val);
            for (const auto& [r, val] : c.c[static_cast<std::size_t>(g)].column(col).entries())
                ts.emplace_back(r, du + col, t * val);
        }
        action.push_back(SparseRationalMatrix::from_triplets(d, d, ts));
    }

    ExtensionModule out;
    out.w = make_super_module(u.algebra, d, std::move(parity), std::move(action), Provenance::extension);
    out.dim_u = du;
    out.dim_v = dv;
    out.cocycle = c;
    out.t = t;

    // the embedded copy is invariant by construction; assert it anyway
    for (int g = 0; g < u.algebra->dim; ++g)
        for (int col = 0; col < du; ++col)
            for (const auto& [r, val] : out.w.act(g).column(col).entries())
                if (r >= du) throw std::logic_error("extension_from_cocycle: embedded block leaks");
    return out;
}

bool is_split(const ExtensionModule& w) {
    // equivariant sigma: W -> U with sigma restricted to mu(U) the identity;
    // the U action is the upper-left block of the extension
    const int du = w.dim_u;
    std::vector<SparseRationalMatrix> u_action;
    for (int g = 0; g < w.w.algebra->dim; ++g) {
        std::vector<SparseRationalMatrix::Triplet> ts;
        for (int col = 0; col < du; ++col)
            for (const auto& [r, val] : w.w.act(g).column(col).entries()) ts.emplace_back(r, col, val);
        u_action.push_back(SparseRationalMatrix::from_triplets(du, du, ts));
    }
    std::map<int, SparseVector> fixed;
    for (int j = 0; j < du; ++j) fixed[j] = SparseVector::unit(j);
    auto sigma = intertwiner_with_fixed_columns(w.w.action, w.w.dim, u_action, du, fixed);
    return sigma.has_value();
}

bool is_coboundary(const SuperModule& u, const SuperModule& v, const Cocycle& c, const Rational& t) {
    HomModule hm = hom_module(v, u);
    CochainComplex cx = build_cochain_complex(chain_setup(hm.module));
    // flatten t*c into a C^1 vector
    std::vector<SparseVector::Entry> es;
    for (int g = 0; g < u.algebra->dim; ++g)
        for (int col = 0; col < v.dim; ++col)
            for (const auto& [r, val] : c.c[static_cast<std::size_t>(g)].column(col).entries())
                es.emplace_back(cx.index1(g, r * v.dim + col), t * val);
    SparseVector target = SparseVector::from_entries(std::move(es));
    return solve(cx.d0, target).has_value();
}

IndecomposabilityReport is_indecomposable(const SuperModule& w) {
    IndecomposabilityReport report;
    auto space = equivariant_maps(w, w);
    report.end_dim = static_cast<int>(space.size());

    std::vector<SparseRationalMatrix> candidates = space;
    for (std::size_t i = 0; i < space.size(); ++i)
        for (std::size_t j = i + 1; j < space.size(); ++j) candidates.push_back(space[i] + space[j]);

    bool saw_inconclusive = false;
    for (const auto& u : candidates) {
        Poly m = minimal_polynomial(u);
        if (m.degree() <= 0) continue;
        auto roots = rational_roots(m);
        // strip the rational linear part
        Poly rest = m;
        std::vector<std::pair<Rational, int>> linear;
        for (const auto& [r, mult] : roots.roots) {
            linear.emplace_back(r, mult);
            Poly lin = Poly::linear(-r, Rational(1));
            for (int k = 0; k < mult; ++k) rest = divmod(rest, lin).first;
        }
        int parts = static_cast<int>(linear.size()) + (rest.degree() >= 1 ? 1 : 0);
        if (parts >= 2) {
            // coprime split: f1 = (x - r0)^{e0}, f2 = m / f1
            Poly f1 = Poly::constant(Rational(1));
            Poly lin = Poly::linear(-linear[0].first, Rational(1));
            for (int k = 0; k < linear[0].second; ++k) f1 = f1 * lin;
            Poly f2 = divmod(m, f1).first;
            auto [g, s, t] = poly_xgcd(f1, f2);
            if (g.degree() != 0) throw std::logic_error("is_indecomposable: split factors are not coprime");
            // normalize g to 1
            Rational inv = g.c[0].inverse();
            for (auto& coeff : t.c) coeff *= inv;
            Poly proj = t * f2; // idempotent polynomial
            SparseRationalMatrix e = eval_on_matrix(proj, u);
            if (!(e * e == e)) throw std::logic_error("is_indecomposable: idempotent construction failed");
            if (e.is_zero() || e == SparseRationalMatrix::identity(w.dim))
                throw std::logic_error("is_indecomposable: degenerate idempotent");
            report.verdict = IndecomposabilityReport::Verdict::decomposable;
            report.idempotent = std::move(e);
            return report;
        }
        if (rest.degree() >= 1) saw_inconclusive = true; // one non-linear factor, unresolved over Q
    }
    report.verdict = saw_inconclusive ? IndecomposabilityReport::Verdict::inconclusive
                                      : IndecomposabilityReport::Verdict::indecomposable;
    return report;
}

bool family_equivalence(const ExtensionModule& a, const ExtensionModule& b) {
    return find_equivariant_iso(a.w, b.w).has_value();
}

namespace {

std::optional<Cocycle> cocycle_from_class(const SuperModule& u, const SuperModule& v) {
    HomModule hm = hom_module(v, u);
    CochainComplex cx = build_cochain_complex(chain_setup(hm.module));
    CohomologyResult h = cohomology1(cx, true);
    const auto& alg = *u.algebra;
    for (const auto& rep : h.representatives) {
        // project onto the even part: keep entries where the map parity
        // matches the generator parity
        Cocycle c;
        c.dim_u = u.dim;
        c.dim_v = v.dim;
        c.c.assign(static_cast<std::size_t>(alg.dim), SparseRationalMatrix(u.dim, v.dim));
        std::vector<std::vector<SparseRationalMatrix::Triplet>> ts(static_cast<std::size_t>(alg.dim));
        for (const auto& [idx, val] : rep.entries()) {
            int g = idx / hm.module.dim;
            int flat = idx % hm.module.dim;
            int i = flat / v.dim, j = flat % v.dim;
            int map_parity = (u.parity[static_cast<std::size_t>(i)] + v.parity[static_cast<std::size_t>(j)]) % 2;
            if (map_parity != alg.parity(g)) continue; // odd component, dropped
            ts[static_cast<std::size_t>(g)].emplace_back(i, j, val);
        }
        for (int g = 0; g < alg.dim; ++g)
            c.c[static_cast<std::size_t>(g)] = SparseRationalMatrix::from_triplets(u.dim, v.dim, ts[static_cast<std::size_t>(g)]);
        if (!is_cocycle(alg, u, v, c)) continue;      // parity projection of a cocycle stays closed; guard anyway
        if (is_coboundary(u, v, c, Rational(1))) continue; // even part trivial in cohomology
        return c;
    }
    return std::nullopt;
}

} // namespace

std::optional<Cocycle> doubling_cocycle(const SuperModule& v) { return cocycle_from_class(v, v); }

std::optional<Cocycle> extension_cocycle(const SuperModule& u, const SuperModule& v) {
    return cocycle_from_class(u, v);
}

} // namespace superkac

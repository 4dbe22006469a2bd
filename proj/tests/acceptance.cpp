// Acceptance suite: one line per criterion, exit code = number of failures.

#include "superkac/json_io.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

using namespace superkac;

namespace {

struct Harness {
    int failures = 0;
    int index = 0;

    void criterion(const std::string& name, const std::function<bool(std::ostream&)>& body) {
        ++index;
        std::ostringstream detail;
        bool ok = false;
        auto start = std::chrono::steady_clock::now();
        try {
            ok = body(detail);
        } catch (const std::exception& e) {
            detail << "exception: " << e.what();
            ok = false;
        }
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
        std::cout << "[" << index << "] " << name << ": " << (ok ? "PASS" : "FAIL") << " (" << ms.count()
                  << " ms)\n";
        std::string lines = detail.str();
        if (!lines.empty()) {
            std::istringstream in(lines);
            std::string line;
            while (std::getline(in, line)) std::cout << "      " << line << "\n";
        }
        if (!ok) ++failures;
    }
};

struct Sl21Case {
    int a;
    Rational b;
    bool atypical;
};

const std::vector<Sl21Case>& sl21_cases() {
    static std::vector<Sl21Case> cases = {
        {0, Rational(2), false},    {0, Rational(1, 2), false}, {0, Rational(0), true},
        {0, Rational(1), true},     {1, Rational(0), true},     {1, Rational(1), false},
        {1, Rational(3), false},    {0, Rational(1, 3), false}, // y = 2/3, the quark-quartet pairing
    };
    return cases;
}

std::string case_name(const Sl21Case& c) {
    return "(" + std::to_string(c.a) + "," + c.b.str() + ")";
}

std::map<WeightVector, int> multiplet(std::initializer_list<std::pair<Rational, Rational>> js) {
    // (j, y) multiplets expanded into (h, Y) weights
    std::map<WeightVector, int> out;
    for (const auto& [j, y] : js) {
        Rational two_j = Rational(2) * j;
        for (Rational h = two_j; h >= -two_j; h -= Rational(2)) {
            WeightVector w;
            w.cartan_eigenvalues = {h, y};
            ++out[w];
        }
    }
    return out;
}

} // namespace

int main() {
    Harness h;

    auto sl21 = build_sl(2, 1);
    auto ev21 = even_subalgebra(sl21);
    auto sl31 = build_sl(3, 1);
    auto ev31 = even_subalgebra(sl31);
    auto osp4 = build_osp2_2n(2);
    auto evo4 = even_subalgebra(osp4);

    auto seed21 = [&](const Sl21Case& c) { return sl21_even_module(ev21, c.a, c.b); };
    EvenModule seed31 = natural_module(ev31, 0, Rational(2)); // typical hypercharge
    EvenModule seed_osp = trivial_even_module(evo4);

    auto irr21 = [&](int a, const Rational& b) {
        SuperModule v = induce_plus(sl21_even_module(ev21, a, b));
        auto sub = maximal_invariant_submodule(v, ev21);
        if (sub.submodule.dim() == 0) return v;
        return super_quotient(v, sub.submodule).module;
    };

    // ------------------------------------------------------------------ 1
    h.criterion("Corollary 5: dim H1(L, Kac (x) opposite Kac) = 1 on all cases", [&](std::ostream& out) {
        bool ok = true;
        int count = 0;
        for (const auto& c : sl21_cases()) {
            int dim = homology1(doubling_module(seed21(c)), false).quotient();
            ++count;
            if (dim != 1) {
                ok = false;
                out << "sl(2/1) " << case_name(c) << ": H1 = " << dim << "\n";
            }
        }
        int d31 = homology1(doubling_module(seed31), false).quotient();
        ++count;
        if (d31 != 1) {
            ok = false;
            out << "sl(3/1) fundamental: H1 = " << d31 << "\n";
        }
        int dosp = homology1(doubling_module(seed_osp), false).quotient();
        ++count;
        if (dosp != 1) {
            ok = false;
            out << "osp(2/4) trivial: H1 = " << dosp << "\n";
        }
        out << count << " cases, all H1 = 1" << (ok ? "" : " FAILED");
        return ok;
    });

    // ------------------------------------------------------------------ 2
    h.criterion("Theorem 4 / Shapiro: direct H1 equals invariant-restricted H1", [&](std::ostream& out) {
        bool ok = true;
        for (const auto& c : sl21_cases()) {
            auto rep = shapiro_check(seed21(c));
            if (!rep.pass()) {
                ok = false;
                out << "sl(2/1) " << case_name(c) << ": " << rep.direct_h1 << " != " << rep.invariant_h1 << "\n";
            }
        }
        auto rep31 = shapiro_check(seed31);
        if (!rep31.pass()) {
            ok = false;
            out << "sl(3/1): " << rep31.direct_h1 << " != " << rep31.invariant_h1 << "\n";
        }
        auto repo = shapiro_check(seed_osp);
        if (!repo.pass()) {
            ok = false;
            out << "osp(2/4): " << repo.direct_h1 << " != " << repo.invariant_h1 << "\n";
        }
        out << "10 equalities checked";
        return ok;
    });

    // ------------------------------------------------------------------ 3
    h.criterion("Proof diagnostics: boundary identities, Casimir value, 2 - 1 = 1", [&](std::ostream& out) {
        bool ok = true;
        // adjoint-bearing cases
        for (const auto& c : std::vector<Sl21Case>{{1, Rational(0), true}, {1, Rational(1), false}, {1, Rational(3), false}}) {
            auto uu = tensor(seed21(c), dual(seed21(c)));
            auto d = proof_diagnostics(ev21, uu);
            if (!(d.adjoint_present && d.ok() && d.invariant_kernel_dim == 2 && d.invariant_image_dim == 1)) {
                ok = false;
                out << "sl(2/1) " << case_name(c) << ": identities " << d.ok() << ", count "
                    << d.invariant_kernel_dim << "-" << d.invariant_image_dim << "\n";
            }
        }
        auto uu31 = tensor(seed31, dual(seed31));
        auto d31 = proof_diagnostics(ev31, uu31);
        if (!(d31.adjoint_present && d31.ok() && d31.invariant_kernel_dim == 2 && d31.invariant_image_dim == 1)) {
            ok = false;
            out << "sl(3/1) fundamental: identities " << d31.ok() << ", count " << d31.invariant_kernel_dim
                << "-" << d31.invariant_image_dim << "\n";
        }
        // spin-0 seeds: no adjoint constituent, identities vacuous
        for (const auto& c : std::vector<Sl21Case>{{0, Rational(2), false}, {0, Rational(0), true}}) {
            auto d = proof_diagnostics(ev21, tensor(seed21(c), dual(seed21(c))));
            if (!d.ok() || d.adjoint_present) {
                ok = false;
                out << "sl(2/1) " << case_name(c) << ": unexpected diagnostics\n";
            }
        }
        // independently contracted Casimir values
        Rational c21 = casimir_adjoint(ev21, 0);
        Rational c31 = casimir_adjoint(ev31, 0);
        Rational cosp = casimir_adjoint(evo4, 0);
        out << "contracted Casimir values: sl(2) " << c21.str() << ", sl(3) " << c31.str() << ", sp(4) "
            << cosp.str();
        if (c21.sign() <= 0 || c31.sign() <= 0 || cosp.sign() <= 0) ok = false;
        if (!d31.factor_casimirs.empty() && !(d31.factor_casimirs[0] == c31)) ok = false;
        return ok;
    });

    // ------------------------------------------------------------------ 4
    h.criterion("Table 1: Kac weight patterns and atypical irreducible quotients", [&](std::ostream& out) {
        bool ok = true;
        Rational half(1, 2), one(1), three_half(3, 2);

        auto check_kac = [&](int a, Rational b, std::map<WeightVector, int> expect, const std::string& label) {
            auto got = weight_multiset(even_restriction(induce_plus(sl21_even_module(ev21, a, b)), ev21));
            if (got != expect) {
                ok = false;
                out << "Kac " << label << ": weight pattern mismatch\n";
            }
        };
        // (0,b): 0_y + 1/2_{y-1} + 0_{y-2} at y = 2b (b = 3)
        check_kac(0, Rational(3),
                  multiplet({{Rational(0), Rational(6)}, {half, Rational(5)}, {Rational(0), Rational(4)}}),
                  "(0,3)");
        // (1,b): 1/2_y + (0+1)_{y-1} + 1/2_{y-2} (b = 3, y = 5)
        check_kac(1, Rational(3),
                  multiplet({{half, Rational(5)},
                             {Rational(0), Rational(4)},
                             {one, Rational(4)},
                             {half, Rational(3)}}),
                  "(1,3)");
        // the adjoint 8_1 at (1,1)
        check_kac(1, Rational(1),
                  multiplet({{half, Rational(1)}, {Rational(0), Rational(0)}, {one, Rational(0)}, {half, Rational(-1)}}),
                  "(1,1)");
        // (2,b): 1_y + (1/2 + 3/2)_{y-1} + 1_{y-2} (b = 1/2, y = -1)
        check_kac(2, half,
                  multiplet({{one, Rational(-1)},
                             {half, Rational(-2)},
                             {three_half, Rational(-2)},
                             {one, Rational(-3)}}),
                  "(2,1/2)");

        struct Atypical {
            int a;
            Rational b;
            int dim;
            std::map<WeightVector, int> content;
            std::string name;
        };
        std::vector<Atypical> table = {
            {1, Rational(0), 3, multiplet({{half, Rational(-1)}, {Rational(0), Rational(-2)}}), "3_{-1}"},
            {0, Rational(1), 3, multiplet({{Rational(0), Rational(2)}, {half, Rational(1)}}), "3*_2"},
            {2, Rational(0), 5, multiplet({{one, Rational(-2)}, {half, Rational(-3)}}), "5_{-2}"},
            {1, Rational(2), 5, multiplet({{half, Rational(3)}, {one, Rational(2)}}), "5*_3"},
            {3, Rational(0), 7, multiplet({{three_half, Rational(-3)}, {one, Rational(-4)}}), "7_{-3}"},
            {2, Rational(3), 7, multiplet({{one, Rational(4)}, {three_half, Rational(3)}}), "7*_4"},
        };
        for (const auto& t : table) {
            auto v = induce_plus(sl21_even_module(ev21, t.a, t.b));
            auto sub = maximal_invariant_submodule(v, ev21);
            if (sub.typical) {
                ok = false;
                out << t.name << ": expected atypical\n";
                continue;
            }
            auto q = super_quotient(v, sub.submodule).module;
            if (q.dim != t.dim) {
                ok = false;
                out << t.name << ": quotient dim " << q.dim << " != " << t.dim << "\n";
                continue;
            }
            auto got = weight_multiset(even_restriction(q, ev21));
            if (got != t.content) {
                ok = false;
                out << t.name << ": quotient weight content mismatch\n";
            }
        }
        out << "4 typical patterns, 6 atypical quotients";
        return ok;
    });

    // ------------------------------------------------------------------ 5
    h.criterion("Table 2: tensor product resolutions", [&](std::ostream& out) {
        bool ok = true;
        auto three = irr21(1, Rational(0));
        auto three_star = irr21(0, Rational(1));
        auto five = irr21(2, Rational(0));
        auto seven = irr21(3, Rational(0));

        auto check = [&](const SuperModule& x, const SuperModule& y, std::vector<int> dims, const std::string& label) {
            auto parts = decompose_constituents(tensor(x, y), ev21);
            std::vector<int> got;
            for (const auto& [w, d] : parts) got.push_back(d);
            std::sort(got.rbegin(), got.rend());
            std::sort(dims.rbegin(), dims.rend());
            if (got != dims) {
                ok = false;
                out << label << ": got";
                for (int d : got) out << " " << d;
                out << "\n";
            }
        };
        check(three, three, {5, 4}, "3 (x) 3");
        check(three, three_star, {8, 1}, "3 (x) 3*");
        check(five, three_star, {12, 3}, "5 (x) 3*");
        check(seven, three_star, {16, 5}, "7 (x) 3*");
        out << "4 resolutions, exact weight-multiset extraction";
        return ok;
    });

    // ------------------------------------------------------------------ 6
    h.criterion("Nonvanishing H^1 exactly for the fundamental and its dual", [&](std::ostream& out) {
        bool ok = true;
        struct Entry {
            std::string name;
            SuperModule mod;
            bool expect_nonzero;
        };
        std::vector<SparseRationalMatrix> triv_act(static_cast<std::size_t>(sl21->dim), SparseRationalMatrix(1, 1));
        std::vector<Entry> entries;
        entries.push_back({"1_0", make_super_module(sl21, 1, {0}, std::move(triv_act), Provenance::hand_supplied), false});
        entries.push_back({"3_{-1}", irr21(1, Rational(0)), true});
        entries.push_back({"3*_2", irr21(0, Rational(1)), true});
        entries.push_back({"5_{-2}", irr21(2, Rational(0)), false});
        entries.push_back({"5*_3", irr21(1, Rational(2)), false});
        entries.push_back({"7_{-3}", irr21(3, Rational(0)), false});
        entries.push_back({"7*_4", irr21(2, Rational(3)), false});
        entries.push_back({"8_1", induce_plus(sl21_even_module(ev21, 1, Rational(1))), false});
        entries.push_back({"4_4 (typical)", induce_plus(sl21_even_module(ev21, 0, Rational(2))), false});
        entries.push_back({"4_1 (typical)", induce_plus(sl21_even_module(ev21, 0, Rational(1, 2))), false});
        for (const auto& e : entries) {
            int dim = cohomology1(e.mod, false).quotient();
            bool nonzero = dim != 0;
            if (nonzero != e.expect_nonzero) {
                ok = false;
                out << e.name << ": H^1 dim " << dim << ", expected " << (e.expect_nonzero ? "nonzero" : "zero")
                    << "\n";
            }
        }
        out << entries.size() << " irreducibles ( <= 8-dim) checked";
        return ok;
    });

    // ------------------------------------------------------------------ 7
    h.criterion("Lemma 1 / Lemma 2 certification with the straightening oracle", [&](std::ostream& out) {
        bool ok = true;
        int l1_pass = 0, l1_fail = 0;
        for (const auto& c : sl21_cases()) {
            EvenModule u = seed21(c);
            auto lhs = dual_module(induce_plus(u));
            auto rhs = induce_minus(dual(u));
            bool found = find_equivariant_iso(lhs, rhs).has_value();
            if (found)
                ++l1_pass;
            else {
                ++l1_fail;
                ok = false;
                out << "Lemma 1 " << case_name(c) << ": no invertible intertwiner"
                    << (c.atypical ? " (atypical seed: the two sides have mirrored socle chains)" : "") << "\n";
            }
        }
        {
            auto lhs = dual_module(induce_plus(seed31));
            auto rhs = induce_minus(dual(seed31));
            if (find_equivariant_iso(lhs, rhs).has_value())
                ++l1_pass;
            else {
                ++l1_fail;
                ok = false;
                out << "Lemma 1 sl(3/1) fundamental: no invertible intertwiner\n";
            }
        }
        out << "Lemma 1: " << l1_pass << " pass, " << l1_fail << " fail\n";

        int l2_pass = 0;
        for (const auto& c : sl21_cases()) {
            EvenModule u = seed21(c);
            auto m1 = tensor(induce_plus(u), induce_minus(dual(u)));
            auto m2 = induce_even(tensor(u, dual(u)));
            if (find_equivariant_iso(m1, m2).has_value())
                ++l2_pass;
            else {
                ok = false;
                out << "Lemma 2 " << case_name(c) << ": no invertible intertwiner\n";
            }
        }
        {
            auto m1 = tensor(induce_plus(seed31), induce_minus(dual(seed31)));
            auto m2 = induce_even(tensor(seed31, dual(seed31)));
            if (find_equivariant_iso(m1, m2).has_value())
                ++l2_pass;
            else {
                ok = false;
                out << "Lemma 2 sl(3/1) fundamental: no invertible intertwiner\n";
            }
        }
        out << "Lemma 2: " << l2_pass << " pass\n";

        // Appendix oracle: the normalized straightening map fixes the vacuum
        // and Qbar sectors and sends the (Q'Qbar) trace to itself + 2y |0>
        int oracle_pass = 0;
        for (const auto& c : std::vector<Sl21Case>{{0, Rational(1, 2), false}, {0, Rational(2), false}, {0, Rational(0), true}}) {
            EvenModule u = seed21(c);
            Rational y = Rational(2) * c.b - Rational(c.a);
            auto vp = induce_plus(u);
            auto vm = induce_minus(dual(u));
            auto m1 = tensor(vp, vm);
            auto m2 = induce_even(tensor(u, dual(u)));
            auto pi = double_induction_reindex(vp, vm, m2);
            std::vector<int> pi_inv(pi.size());
            for (std::size_t i = 0; i < pi.size(); ++i) pi_inv[static_cast<std::size_t>(pi[i])] = static_cast<int>(i);
            const auto& sw = *m2.pbw;
            int vac = sw.index(0, 0, 0);
            std::map<int, SparseVector> fixed;
            fixed[pi_inv[static_cast<std::size_t>(vac)]] = SparseVector::unit(vac);
            for (int t = 0; t < 2; ++t) {
                int idx = sw.index(0, 1u << t, 0);
                fixed[pi_inv[static_cast<std::size_t>(idx)]] = SparseVector::unit(idx);
            }
            auto phi = intertwiner_with_fixed_columns(m1.action, m1.dim, m2.action, m2.dim, fixed);
            if (!phi) {
                ok = false;
                out << "oracle " << case_name(c) << ": constrained intertwiner missing\n";
                continue;
            }
            SparseVector arg, expect;
            for (int a = 0; a < 2; ++a) {
                arg.axpy(Rational(-2), SparseVector::unit(pi_inv[static_cast<std::size_t>(sw.index(1u << a, 1u << a, 0))]));
                expect.axpy(Rational(-2), SparseVector::unit(sw.index(1u << a, 1u << a, 0)));
            }
            expect.axpy(Rational(2) * y, SparseVector::unit(vac));
            if (phi->apply(arg) == expect)
                ++oracle_pass;
            else {
                ok = false;
                out << "oracle " << case_name(c) << ": phi((Q'Qbar)|0>) != (Q'Qbar)|0> + 2y|0>\n";
            }
        }
        out << "straightening oracle: " << oracle_pass << "/3 seeds reproduce the 2y matrix element";
        return ok;
    });

    // ------------------------------------------------------------------ 8
    h.criterion("Extension pipeline: W(t) verified, nonsplit, indecomposable; W(0) splits", [&](std::ostream& out) {
        bool ok = true;
        auto v = induce_plus(sl21_even_module(ev21, 0, Rational(1, 3))); // the y = 2/3 quartet
        auto c = doubling_cocycle(v);
        if (!c) {
            out << "no doubling class";
            return false;
        }
        std::map<std::string, ExtensionModule> ws;
        for (const std::string& t : {"1", "2", "5", "-3"}) {
            auto w = extension_from_cocycle(v, v, *c, Rational::parse(t));
            bool split = is_split(w);
            bool cob = is_coboundary(v, v, *c, Rational::parse(t));
            auto indec = is_indecomposable(w.w);
            if (split || cob || indec.verdict != IndecomposabilityReport::Verdict::indecomposable ||
                indec.end_dim != 2) {
                ok = false;
                out << "W(" << t << "): split " << split << ", coboundary " << cob << ", End dim "
                    << indec.end_dim << "\n";
            }
            ws.emplace(t, std::move(w));
        }
        auto w0 = extension_from_cocycle(v, v, *c, Rational(0));
        if (!is_split(w0) || !is_coboundary(v, v, *c, Rational(0)) ||
            is_indecomposable(w0.w).verdict != IndecomposabilityReport::Verdict::decomposable) {
            ok = false;
            out << "W(0): expected split + decomposable\n";
        }
        if (!family_equivalence(ws.at("1"), ws.at("5"))) {
            ok = false;
            out << "W(1) and W(5) not equivalent\n";
        }
        if (family_equivalence(ws.at("1"), w0)) {
            ok = false;
            out << "W(1) unexpectedly equivalent to W(0)\n";
        }
        out << "t in {1, 2, 5, -3} all nonsplit indecomposable with End dim 2; W(1) ~ W(5), W(1) !~ W(0)";
        return ok;
    });

    // ------------------------------------------------------------------ 9
    h.criterion("Property suites: Jacobi, graded representations, complexes, rank-nullity, JSON", [&](std::ostream& out) {
        bool ok = true;
        // exhaustive axioms on every built algebra
        for (const auto& alg : {sl21, sl31, osp4})
            if (!verify_super_jacobi(*alg).ok()) {
                ok = false;
                out << "super-Jacobi failure\n";
            }
        // graded representation property, re-run explicitly on a spread of modules
        std::vector<SuperModule> sample;
        sample.push_back(induce_plus(sl21_even_module(ev21, 1, Rational(3))));
        sample.push_back(dual_module(sample[0]));
        sample.push_back(doubling_module(sl21_even_module(ev21, 0, Rational(1, 2))));
        sample.push_back(induce_even(tensor(seed_osp, dual(seed_osp))));
        for (const auto& m : sample) verify_super_module(m); // throws on failure
        // d0 d1 = 0 and d1 d0 = 0 are construction guards; exercise them
        auto cc = build_chain_complex(chain_setup(sample[2]));
        auto cx = build_cochain_complex(chain_setup(sample[2]));
        // rank-nullity on the boundary maps
        if (rank(cc.d0) + kernel_basis(cc.d0).dim() != cc.d1.n_rows()) {
            ok = false;
            out << "rank-nullity failure on d0\n";
        }
        if (rank(cc.d1) + kernel_basis(cc.d1).dim() != cc.dim2) {
            ok = false;
            out << "rank-nullity failure on d1\n";
        }
        // JSON round-trip identity on every sampled module
        for (const auto& m : sample) {
            auto back = super_module_from_json(super_module_to_json(m));
            for (int g = 0; g < m.algebra->dim; ++g)
                if (!(back.act(g) == m.act(g))) {
                    ok = false;
                    out << "JSON round-trip mismatch\n";
                }
        }
        auto aj = algebra_to_json(*osp4);
        if (!(algebra_to_json(*AlgebraSpec::from_json(aj["algebra"]).build()) == aj)) {
            ok = false;
            out << "algebra JSON round-trip mismatch\n";
        }
        out << "axioms, representation property, complex guards, rank-nullity, JSON round-trips";
        return ok;
    });

    std::cout << (h.failures == 0 ? "ALL CRITERIA PASS" : std::to_string(h.failures) + " CRITERIA FAILED")
              << "\n";
    return h.failures;
}

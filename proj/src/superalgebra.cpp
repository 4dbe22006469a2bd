#include "superkac/superalgebra.hpp"

#include <algorithm>
#include <stdexcept>

namespace superkac {

namespace {

SparseRationalMatrix matrix_unit(int size, int r, int c, Rational v = Rational(1)) {
    return SparseRationalMatrix::from_triplets(size, size, {{r, c, std::move(v)}});
}

SparseVector flatten(const SparseRationalMatrix& m) {
    std::vector<SparseVector::Entry> es;
    for (int c = 0; c < m.n_cols(); ++c)
        for (const auto& [r, v] : m.column(c).entries()) es.emplace_back(r * m.n_cols() + c, v);
    return SparseVector::from_entries(std::move(es));
}

// Expands matrices in the span of a fixed independent family, by reduction
// against the flattened columns.
class BasisExpander {
public:
    explicit BasisExpander(const std::vector<SparseRationalMatrix>& family) : elim_(true) {
        for (const auto& m : family) {
            SparseVector combo;
            if (!elim_.add_tracked(flatten(m), combo))
                throw std::logic_error("superalgebra: realization family is dependent");
        }
    }

    SparseVector expand(const SparseRationalMatrix& m) const {
        SparseVector combo;
        SparseVector residual = elim_.reduce(flatten(m), &combo);
        if (!residual.empty())
            throw std::logic_error("superalgebra: bracket does not close on the basis");
        return combo;
    }

private:
    EliminationBasis elim_;
};

SparseRationalMatrix graded_bracket_matrices(const SparseRationalMatrix& x, int px,
                                             const SparseRationalMatrix& y, int py) {
    SparseRationalMatrix xy = x * y;
    SparseRationalMatrix yx = y * x;
    return (px == 1 && py == 1) ? xy + yx : xy - yx;
}

Rational supertrace(const SparseRationalMatrix& m, int block_m) {
    Rational s(0);
    for (int i = 0; i < m.n_rows(); ++i) {
        Rational d = m.at(i, i);
        if (i < block_m)
            s += d;
        else
            s -= d;
    }
    return s;
}

// Fills f, killing, even/odd index lists, and validates gradings, graded
// antisymmetry, z-additivity and the super-Jacobi identity.
void finalize_algebra(SuperAlgebra& alg) {
    const int d = alg.dim;
    BasisExpander expander(alg.realization);

    alg.f.assign(static_cast<std::size_t>(d), std::vector<SparseVector>(static_cast<std::size_t>(d)));
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            SparseRationalMatrix br = graded_bracket_matrices(alg.realization[static_cast<std::size_t>(a)], alg.parity(a),
                                                              alg.realization[static_cast<std::size_t>(b)], alg.parity(b));
            alg.f[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = expander.expand(br);
        }
    }

    for (int a = 0; a < d; ++a) {
        const auto& e = alg.basis[static_cast<std::size_t>(a)];
        if ((e.parity == 0) != (e.z_grade == 0))
            throw std::logic_error("superalgebra: parity/z-grade mismatch at " + e.label);
        if (e.z_grade == 0)
            alg.even_indices.push_back(a);
        else if (e.z_grade < 0)
            alg.minus_indices.push_back(a);
        else
            alg.plus_indices.push_back(a);
    }

    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            // graded antisymmetry: f_ab = -(-1)^{|a||b|} f_ba
            SparseVector lhs = alg.f[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
            Rational sgn = (alg.parity(a) == 1 && alg.parity(b) == 1) ? Rational(-1) : Rational(1);
            lhs.axpy(sgn, alg.f[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)]);
            if (!lhs.empty()) throw std::logic_error("superalgebra: graded antisymmetry fails");
            // z-additivity
            for (const auto& [c, v] : alg.bracket_coeffs(a, b).entries())
                if (alg.z(c) != alg.z(a) + alg.z(b))
                    throw std::logic_error("superalgebra: z-grade additivity fails");
        }
    }

    // Killing form: supertrace of ad_a ad_b.
    std::vector<SparseRationalMatrix> ads;
    ads.reserve(static_cast<std::size_t>(d));
    for (int a = 0; a < d; ++a) ads.push_back(alg.ad_matrix(a));
    // Supersymmetric form: the odd-odd block is antisymmetric, so every pair
    // is computed directly.
    std::vector<SparseRationalMatrix::Triplet> kts;
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            SparseRationalMatrix prod = ads[static_cast<std::size_t>(a)] * ads[static_cast<std::size_t>(b)];
            Rational s(0);
            for (int c = 0; c < d; ++c) {
                Rational diag = prod.at(c, c);
                if (alg.parity(c) == 1)
                    s -= diag;
                else
                    s += diag;
            }
            if (!s.is_zero()) kts.emplace_back(a, b, s);
        }
    }
    alg.killing = SparseRationalMatrix::from_triplets(d, d, kts);

    auto report = verify_super_jacobi(alg);
    if (!report.ok()) throw std::logic_error("superalgebra: super-Jacobi identity fails");
}

} // namespace

SparseRationalMatrix SuperAlgebra::ad_matrix(int a) const {
    SparseRationalMatrix m(dim, dim);
    for (int b = 0; b < dim; ++b) m.set_column(b, bracket_coeffs(a, b));
    return m;
}

int SuperAlgebra::find_label(const std::string& lbl) const {
    for (const auto& e : basis)
        if (e.label == lbl) return e.index;
    return -1;
}

SparseRationalMatrix EvenAlgebra::ad_matrix(int a) const {
    SparseRationalMatrix m(dim, dim);
    for (int b = 0; b < dim; ++b) m.set_column(b, bracket_coeffs(a, b));
    return m;
}

int EvenAlgebra::find_label(const std::string& lbl) const {
    for (int i = 0; i < dim; ++i)
        if (labels[static_cast<std::size_t>(i)] == lbl) return i;
    return -1;
}

SuperAlgebraPtr build_sl(int m, int n) {
    if (m < 1 || n < 1) throw std::invalid_argument("build_sl: m, n >= 1 required");
    if (m == n) throw std::invalid_argument("build_sl: m != n required");

    auto alg = std::make_shared<SuperAlgebra>();
    alg->family = SuperAlgebra::Family::sl;
    alg->param_m = m;
    alg->param_n = n;
    alg->block_m = m;
    alg->block_n = n;
    const int size = m + n;

    auto add = [&](int parity, int z, std::string label, SparseRationalMatrix real, int factor) {
        BasisElement e;
        e.index = alg->dim++;
        e.parity = parity;
        e.z_grade = z;
        e.label = std::move(label);
        alg->basis.push_back(std::move(e));
        alg->realization.push_back(std::move(real));
        alg->factor_of.push_back(factor);
    };

    // sl(m) block, then sl(n) block: off-diagonal units then Cartan differences.
    auto add_sl_block = [&](int offset, int k, const std::string& prefix, int factor) {
        if (k < 2) return;
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) {
                if (i == j) continue;
                add(0, 0, prefix + "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")",
                    matrix_unit(size, offset + i, offset + j), factor);
            }
        for (int i = 0; i + 1 < k; ++i) {
            SparseRationalMatrix h = matrix_unit(size, offset + i, offset + i) -
                                     matrix_unit(size, offset + i + 1, offset + i + 1);
            add(0, 0, "H" + prefix + std::to_string(i + 1), h, factor);
            alg->cartan_indices.push_back(alg->dim - 1);
        }
    };

    int factor_count = 0;
    int factor_a = m >= 2 ? factor_count++ : -1;
    add_sl_block(0, m, "A", factor_a);
    int factor_b = n >= 2 ? factor_count++ : -1;
    add_sl_block(m, n, "B", factor_b);
    alg->n_factors = factor_count;

    // Y = diag(n/(n-m) 1_m, m/(n-m) 1_n): supertraceless, [Y, upper-right] = +1.
    {
        Rational a(n, n - m), b(m, n - m);
        std::vector<SparseRationalMatrix::Triplet> ts;
        for (int i = 0; i < m; ++i) ts.emplace_back(i, i, a);
        for (int j = 0; j < n; ++j) ts.emplace_back(m + j, m + j, b);
        add(0, 0, "Y", SparseRationalMatrix::from_triplets(size, size, ts), -1);
        alg->y_index = alg->dim - 1;
        alg->cartan_indices.push_back(alg->y_index);
    }

    // L_{-1}: lower-left units; L_{+1}: upper-right units, both ordered by (i, j).
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
            add(1, -1, "Q(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")",
                matrix_unit(size, m + j, i), -1);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
            add(1, +1, "Qb(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")",
                matrix_unit(size, i, m + j), -1);

    if (alg->dim != size * size - 1) throw std::logic_error("build_sl: dimension bookkeeping is off");
    for (const auto& r : alg->realization)
        if (!supertrace(r, m).is_zero()) throw std::logic_error("build_sl: realization not supertraceless");

    finalize_algebra(*alg);
    return alg;
}

SuperAlgebraPtr build_osp2_2n(int n) {
    if (n < 1) throw std::invalid_argument("build_osp2_2n: n >= 1 required");

    auto alg = std::make_shared<SuperAlgebra>();
    alg->family = SuperAlgebra::Family::osp2;
    alg->param_n = n;
    alg->block_m = 2;
    alg->block_n = 2 * n;
    const int size = 2 + 2 * n;
    const int d2n = 2 * n;

    // Symmetric form G = antidiag(1, 1) on the 2-block; symplectic form
    // S[i, 2n-1-i] = +1 (i < n), -1 (i >= n) on the 2n-block.
    auto s_sign = [&](int i) { return i < n ? Rational(1) : Rational(-1); };

    auto add = [&](int parity, int z, std::string label, SparseRationalMatrix real, int factor) {
        BasisElement e;
        e.index = alg->dim++;
        e.parity = parity;
        e.z_grade = z;
        e.label = std::move(label);
        alg->basis.push_back(std::move(e));
        alg->realization.push_back(std::move(real));
        alg->factor_of.push_back(factor);
    };

    // sp(2n) block: independent elements among E - S^{-1} E^T S.
    {
        EliminationBasis indep;
        for (int i = 0; i < d2n; ++i) {
            for (int j = 0; j < d2n; ++j) {
                // sp(2n) candidate E_ij - S^{-1} E_ij^T S. With the
                // antidiagonal form, S^{-1} E_ji S = (s(i)/s(j)) E_{2n-1-j, 2n-1-i}.
                Rational tau = s_sign(i) / s_sign(j);
                SparseRationalMatrix cand(size, size);
                if (i == 2 * n - 1 - j) {
                    // both terms land on the same entry
                    Rational v = Rational(1) - tau;
                    if (v.is_zero()) continue;
                    cand = SparseRationalMatrix::from_triplets(size, size, {{2 + i, 2 + j, v}});
                } else {
                    cand = SparseRationalMatrix::from_triplets(
                        size, size,
                        {{2 + i, 2 + j, Rational(1)},
                         {2 + (2 * n - 1 - j), 2 + (2 * n - 1 - i), -tau}});
                }
                if (cand.is_zero()) continue;
                if (!indep.add(flatten(cand))) continue;
                add(0, 0, "C(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")", cand, 0);
                if (i == j && i < n) alg->cartan_indices.push_back(alg->dim - 1);
            }
        }
        if (static_cast<int>(alg->basis.size()) != n * (2 * n + 1))
            throw std::logic_error("build_osp2_2n: sp block dimension is off");
    }
    alg->n_factors = 1;

    // Y spans so(2) for the antidiagonal symmetric form.
    {
        std::vector<SparseRationalMatrix::Triplet> ts{{0, 0, Rational(1)}, {1, 1, Rational(-1)}};
        add(0, 0, "Y", SparseRationalMatrix::from_triplets(size, size, ts), -1);
        alg->y_index = alg->dim - 1;
        alg->cartan_indices.push_back(alg->y_index);
    }

    // Odd part: B the free 2 x 2n block, C = S^{-1} B^T G forced by the form.
    auto odd_element = [&](int row, int j) {
        std::vector<SparseRationalMatrix::Triplet> ts;
        ts.emplace_back(row, 2 + j, Rational(1)); // B = E_{row, j}
        // C = S^{-1} B^T G = (1/s(j)) E_{2n-1-j, 1-row}; G swaps columns 0 <-> 1.
        ts.emplace_back(2 + (2 * n - 1 - j), 1 - row, Rational(1) / s_sign(j));
        return SparseRationalMatrix::from_triplets(size, size, ts);
    };
    for (int j = 0; j < d2n; ++j) add(1, -1, "Q" + std::to_string(j + 1), odd_element(1, j), -1);
    for (int j = 0; j < d2n; ++j) add(1, +1, "Qb" + std::to_string(j + 1), odd_element(0, j), -1);

    if (alg->dim != 2 * n * n + 5 * n + 1)
        throw std::logic_error("build_osp2_2n: dimension bookkeeping is off");

    finalize_algebra(*alg);
    return alg;
}

std::vector<Rational> bracket(const SuperAlgebra& a, const std::vector<Rational>& x,
                              const std::vector<Rational>& y) {
    if (static_cast<int>(x.size()) != a.dim || static_cast<int>(y.size()) != a.dim)
        throw std::invalid_argument("bracket: coefficient length mismatch");
    return bracket(a, SparseVector::from_dense(x), SparseVector::from_dense(y)).to_dense(a.dim);
}

SparseVector bracket(const SuperAlgebra& a, const SparseVector& x, const SparseVector& y) {
    SparseVector out;
    for (const auto& [i, xv] : x.entries())
        for (const auto& [j, yv] : y.entries()) out.axpy(xv * yv, a.bracket_coeffs(i, j));
    return out;
}

JacobiReport verify_super_jacobi(const SuperAlgebra& a) {
    JacobiReport report;
    auto term = [&](int x, int y, int z) {
        // [x, [y, z]]
        SparseVector acc;
        for (const auto& [c, v] : a.bracket_coeffs(y, z).entries())
            acc.axpy(v, a.bracket_coeffs(x, c));
        return acc;
    };
    for (int x = 0; x < a.dim; ++x) {
        for (int y = 0; y < a.dim; ++y) {
            for (int z = 0; z < a.dim; ++z) {
                SparseVector sum = term(x, y, z);
                Rational s1 = ((a.parity(x) * (a.parity(y) + a.parity(z))) % 2 == 1) ? Rational(-1) : Rational(1);
                Rational s2 = ((a.parity(z) * (a.parity(x) + a.parity(y))) % 2 == 1) ? Rational(-1) : Rational(1);
                sum.axpy(s1, term(y, z, x));
                sum.axpy(s2, term(z, x, y));
                if (!sum.empty()) report.violations.emplace_back(x, y, z);
            }
        }
    }
    return report;
}

TriangularDecomposition triangular_decomposition(const SuperAlgebra& a) {
    if (a.y_index < 0) throw std::logic_error("triangular_decomposition: Y not identified");
    TriangularDecomposition t;
    for (int i = 0; i < a.dim; ++i) {
        SparseVector ady = a.bracket_coeffs(a.y_index, i);
        SparseVector expect = SparseVector::unit(i);
        expect.scale(Rational(a.z(i)));
        if (!(ady == expect))
            throw std::logic_error("triangular_decomposition: ad-Y eigenvalue disagrees with z-grade at " +
                                   a.label(i));
        if (a.z(i) < 0)
            t.minus.push_back(i);
        else if (a.z(i) == 0)
            t.even.push_back(i);
        else
            t.plus.push_back(i);
    }
    return t;
}

namespace {

EvenAlgebraPtr make_even(const SuperAlgebraPtr& a, const std::vector<int>& chosen, bool with_y) {
    auto ev = std::make_shared<EvenAlgebra>();
    ev->parent = a;
    ev->dim = static_cast<int>(chosen.size());
    ev->parent_index = chosen;
    ev->realization_size = a->block_m + a->block_n;

    std::vector<int> local_of(static_cast<std::size_t>(a->dim), -1);
    for (int i = 0; i < ev->dim; ++i) local_of[static_cast<std::size_t>(chosen[static_cast<std::size_t>(i)])] = i;

    std::vector<EvenAlgebra::Factor> factors(static_cast<std::size_t>(a->n_factors));
    if (a->family == SuperAlgebra::Family::sl) {
        int fid = 0;
        if (a->param_m >= 2) {
            factors[static_cast<std::size_t>(fid)].block_offset = 0;
            factors[static_cast<std::size_t>(fid)].block_size = a->param_m;
            ++fid;
        }
        if (a->param_n >= 2) {
            factors[static_cast<std::size_t>(fid)].block_offset = a->param_m;
            factors[static_cast<std::size_t>(fid)].block_size = a->param_n;
        }
    } else {
        factors[0].block_offset = 2;
        factors[0].block_size = 2 * a->param_n;
    }

    ev->factor_of.assign(static_cast<std::size_t>(ev->dim), -1);
    for (int i = 0; i < ev->dim; ++i) {
        int p = chosen[static_cast<std::size_t>(i)];
        ev->labels.push_back(a->label(p));
        ev->realization.push_back(a->realization[static_cast<std::size_t>(p)]);
        int fid = a->factor_of[static_cast<std::size_t>(p)];
        ev->factor_of[static_cast<std::size_t>(i)] = fid;
        if (fid >= 0) {
            factors[static_cast<std::size_t>(fid)].indices.push_back(i);
            ev->semisimple_indices.push_back(i);
        }
        if (with_y && p == a->y_index) ev->y_index = i;
        if (std::find(a->cartan_indices.begin(), a->cartan_indices.end(), p) != a->cartan_indices.end())
            ev->cartan_indices.push_back(i);

        // triangularity of the realization decides raising/lowering
        const auto& real = a->realization[static_cast<std::size_t>(p)];
        bool upper = true, lower = true;
        for (int c = 0; c < real.n_cols(); ++c)
            for (const auto& [r, v] : real.column(c).entries()) {
                if (r >= c) upper = false;
                if (r <= c) lower = false;
            }
        if (upper) ev->raising.push_back(i);
        if (lower) ev->lowering.push_back(i);
    }
    // drop factors that ended up empty (can happen for secondary uses)
    for (const auto& fac : factors)
        if (!fac.indices.empty()) ev->factors.push_back(fac);

    ev->f.assign(static_cast<std::size_t>(ev->dim), std::vector<SparseVector>(static_cast<std::size_t>(ev->dim)));
    for (int i = 0; i < ev->dim; ++i) {
        for (int j = 0; j < ev->dim; ++j) {
            SparseVector loc;
            for (const auto& [c, v] : a->bracket_coeffs(chosen[static_cast<std::size_t>(i)],
                                                        chosen[static_cast<std::size_t>(j)])
                                          .entries()) {
                int lc = local_of[static_cast<std::size_t>(c)];
                if (lc < 0) throw std::logic_error("even_subalgebra: bracket leaves the even span");
                loc.axpy(v, SparseVector::unit(lc));
            }
            ev->f[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = std::move(loc);
        }
    }

    // standalone Killing form (plain trace; everything is even here)
    std::vector<SparseRationalMatrix> ads;
    for (int i = 0; i < ev->dim; ++i) ads.push_back(ev->ad_matrix(i));
    std::vector<SparseRationalMatrix::Triplet> kts;
    for (int i = 0; i < ev->dim; ++i)
        for (int j = i; j < ev->dim; ++j) {
            SparseRationalMatrix prod = ads[static_cast<std::size_t>(i)] * ads[static_cast<std::size_t>(j)];
            Rational s(0);
            for (int c = 0; c < ev->dim; ++c) s += prod.at(c, c);
            if (!s.is_zero()) {
                kts.emplace_back(i, j, s);
                if (i != j) kts.emplace_back(j, i, s);
            }
        }
    ev->killing = SparseRationalMatrix::from_triplets(ev->dim, ev->dim, kts);
    return ev;
}

} // namespace

EvenAlgebraPtr even_subalgebra(const SuperAlgebraPtr& a) {
    return make_even(a, a->even_indices, true);
}

EvenAlgebraPtr semisimple_factor_algebra(const SuperAlgebraPtr& a, int factor) {
    std::vector<int> chosen;
    for (int i : a->even_indices)
        if (a->factor_of[static_cast<std::size_t>(i)] == factor) chosen.push_back(i);
    if (chosen.empty()) throw std::invalid_argument("semisimple_factor_algebra: no such factor");
    return make_even(a, chosen, false);
}

} // namespace superkac

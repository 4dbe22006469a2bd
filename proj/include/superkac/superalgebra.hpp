#ifndef SUPERKAC_SUPERALGEBRA_HPP
#define SUPERKAC_SUPERALGEBRA_HPP

#include "superkac/linalg.hpp"

#include <memory>
#include <string>
#include <vector>

namespace superkac {

struct BasisElement {
    int index = 0;
    int parity = 0;  // 0 even, 1 odd
    int z_grade = 0; // -1 / 0 / +1 slot under ad Y
    std::string label;
};

/// A type I Lie superalgebra presented by a basis, structure constants, and
/// the supermatrix realization the constants were derived from.
///
/// Basis order convention: semisimple even part, then Y, then L_{-1}, then
/// L_{+1}. Structure constants satisfy [e_a, e_b] = sum_c f_ab^c e_c for the
/// graded bracket (anticommutator on odd pairs).
struct SuperAlgebra {
    enum class Family { sl, osp2 };

    Family family = Family::sl;
    int param_m = 0; // sl(m/n); unused for osp2
    int param_n = 0;

    int dim = 0;
    std::vector<BasisElement> basis;
    std::vector<std::vector<SparseVector>> f; // f[a][b] = bracket coefficients
    std::vector<int> cartan_indices;          // even Cartan, Y included
    int y_index = -1;
    SparseRationalMatrix killing;             // supertrace form on the adjoint

    // realization: (block_m + block_n) square rational matrices, even elements
    // block-diagonal, odd elements block-off-diagonal
    int block_m = 0;
    int block_n = 0;
    std::vector<SparseRationalMatrix> realization;

    std::vector<int> even_indices;
    std::vector<int> minus_indices; // z = -1 (the Q's)
    std::vector<int> plus_indices;  // z = +1 (the Qbar's)

    std::vector<int> factor_of; // semisimple factor id per basis index, -1 otherwise
    int n_factors = 0;

    int parity(int a) const { return basis[static_cast<std::size_t>(a)].parity; }
    int z(int a) const { return basis[static_cast<std::size_t>(a)].z_grade; }
    const std::string& label(int a) const { return basis[static_cast<std::size_t>(a)].label; }
    const SparseVector& bracket_coeffs(int a, int b) const {
        return f[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
    }

    /// ad_a as a matrix: column b holds f_ab^c.
    SparseRationalMatrix ad_matrix(int a) const;

    int find_label(const std::string& lbl) const; // -1 if absent
};

using SuperAlgebraPtr = std::shared_ptr<const SuperAlgebra>;

/// sl(m/n) from the supertraceless (m+n)x(m+n) realization. Requires
/// m, n >= 1 and m != n.
SuperAlgebraPtr build_sl(int m, int n);

/// osp(2/2n): supermatrices preserving the graded bilinear form with
/// antidiagonal symmetric 2-block and antidiagonal symplectic 2n-block.
SuperAlgebraPtr build_osp2_2n(int n);

/// Structure-constant contraction of two coefficient vectors (bilinear).
std::vector<Rational> bracket(const SuperAlgebra& a, const std::vector<Rational>& x,
                              const std::vector<Rational>& y);
SparseVector bracket(const SuperAlgebra& a, const SparseVector& x, const SparseVector& y);

struct JacobiReport {
    std::vector<std::tuple<int, int, int>> violations;
    bool ok() const { return violations.empty(); }
};

/// Exhaustive graded Jacobi check over all basis triples.
JacobiReport verify_super_jacobi(const SuperAlgebra& a);

struct TriangularDecomposition {
    std::vector<int> minus; // L_{-1}
    std::vector<int> even;  // L_0bar
    std::vector<int> plus;  // L_{+1}
};

/// Partition of the basis by z-grade; verifies [Y, Qbar] = +Qbar and
/// [Y, Q] = -Q against the stored grades (throws std::logic_error on
/// disagreement).
TriangularDecomposition triangular_decomposition(const SuperAlgebra& a);

/// The even part L_0bar with its own structure constants and the bookkeeping
/// every module constructor needs: Cartan, semisimple factors, raising and
/// lowering sets, and the realization blocks for natural modules.
struct EvenAlgebra {
    SuperAlgebraPtr parent; // may be null for hand-built even algebras

    int dim = 0;
    std::vector<std::string> labels;
    std::vector<int> parent_index; // -1 when standalone
    std::vector<std::vector<SparseVector>> f;

    std::vector<int> cartan_indices;
    int y_index = -1;
    std::vector<int> semisimple_indices;

    struct Factor {
        std::vector<int> indices; // local indices of this simple factor
        int block_offset = 0;     // realization block
        int block_size = 0;
    };
    std::vector<Factor> factors;
    std::vector<int> factor_of;

    std::vector<int> raising; // strictly upper-triangular realization
    std::vector<int> lowering;

    int realization_size = 0;
    std::vector<SparseRationalMatrix> realization;

    /// Killing form of L_0bar computed from its own structure constants
    /// (zero on the Y row/column).
    SparseRationalMatrix killing;

    const SparseVector& bracket_coeffs(int a, int b) const {
        return f[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
    }
    SparseRationalMatrix ad_matrix(int a) const;
    int find_label(const std::string& lbl) const;
};

using EvenAlgebraPtr = std::shared_ptr<const EvenAlgebra>;

/// Restriction of a built superalgebra to its even part.
EvenAlgebraPtr even_subalgebra(const SuperAlgebraPtr& a);

/// Even algebra consisting of a single semisimple factor of `a` (no Y); used
/// for diagnostics that exercise the semisimple part alone.
EvenAlgebraPtr semisimple_factor_algebra(const SuperAlgebraPtr& a, int factor);

} // namespace superkac

#endif

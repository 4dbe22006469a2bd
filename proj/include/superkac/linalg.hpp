#ifndef SUPERKAC_LINALG_HPP
#define SUPERKAC_LINALG_HPP

#include "superkac/sparse.hpp"

#include <optional>
#include <unordered_map>
#include <vector>

namespace superkac {

/// Subspace of Q^ambient_dim spanned by the (linearly independent) columns of
/// `basis`.
struct Subspace {
    int ambient_dim = 0;
    SparseRationalMatrix basis; // ambient_dim x dim

    int dim() const { return basis.n_cols(); }

    static Subspace zero(int ambient) { return Subspace{ambient, SparseRationalMatrix(ambient, 0)}; }
    static Subspace full(int ambient) { return Subspace{ambient, SparseRationalMatrix::identity(ambient)}; }
};

/// Incremental column echelon over Q. Stored pivot columns are reduced against
/// all earlier pivots, so reducing a new vector is a single ordered pass.
/// Deterministic: pivot rows are chosen by a fixed rule (smallest scalar bulk,
/// then lowest row index).
class EliminationBasis {
public:
    explicit EliminationBasis(bool track_combinations = false)
        : track_(track_combinations) {}

    /// Reduces `v` against the current pivots. If `combo` is non-null and
    /// tracking is on, receives the coefficients c_k with
    /// residual = v - sum_k c_k * original_k.
    SparseVector reduce(SparseVector v, SparseVector* combo = nullptr) const;

    /// Reduces and, if the residual is nonzero, installs it as a new pivot.
    /// Returns true when the vector was independent of the basis so far.
    bool add(SparseVector v);

    /// add() that also reports the combination of previously *added* vectors
    /// (by insertion index) reproducing v when it was dependent.
    bool add_tracked(SparseVector v, SparseVector& combo_out);

    bool contains(const SparseVector& v) const { return reduce(v).empty(); }

    int rank() const { return static_cast<int>(cols_.size()); }

private:
    bool track_;
    std::vector<SparseVector> cols_;      // reduced pivot columns
    std::vector<int> pivot_rows_;
    std::vector<Rational> pivot_vals_;
    std::vector<SparseVector> combos_;    // expression of each pivot column in added vectors
    std::unordered_map<int, int> pivot_of_row_;
    int added_ = 0;
};

/// Exact rank over Q. Columns are processed sparsest-first to limit fill;
/// the result is deterministic for a given matrix.
int rank(const SparseRationalMatrix& m);

/// Basis of { x : M x = 0 }. dim = n_cols - rank(M), and every basis column
/// satisfies M x = 0 exactly.
Subspace kernel_basis(const SparseRationalMatrix& m);

/// Some x with M x = b, or nullopt when the system is inconsistent.
/// Throws on dimension mismatch.
std::optional<std::vector<Rational>> solve(const SparseRationalMatrix& m, const std::vector<Rational>& b);

/// Sparse right-hand-side variant of solve().
std::optional<SparseVector> solve(const SparseRationalMatrix& m, const SparseVector& b);

/// dim K - dim I, after verifying I `subseteq` K (throws std::logic_error when
/// a column of I falls outside span K, which indicates a boundary-map bug
/// upstream).
int quotient_dim(const Subspace& k, const Subspace& i);

/// Basis of A `cap` B. Throws on ambient mismatch.
Subspace intersect(const Subspace& a, const Subspace& b);

/// Coordinates of vectors relative to a fixed independent column family.
class Coordinates {
public:
    explicit Coordinates(const SparseRationalMatrix& basis);

    /// nullopt when v lies outside the span.
    std::optional<SparseVector> of(const SparseVector& v) const;

private:
    EliminationBasis elim_;
};

/// Smallest subspace containing the seed columns and closed under the given
/// operators.
Subspace closure_under(const std::vector<SparseRationalMatrix>& ops, const SparseRationalMatrix& seeds, int dim);

/// Exact inverse of a square invertible matrix; nullopt when singular.
std::optional<SparseRationalMatrix> invert_matrix(const SparseRationalMatrix& m);

} // namespace superkac

#endif

#ifndef SUPERKAC_SUPER_MODULE_HPP
#define SUPERKAC_SUPER_MODULE_HPP

#include "superkac/even_module.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace superkac {

enum class Provenance {
    kac_plus,
    kac_minus,
    dual,
    tensor,
    induced_even,
    extension,
    submodule,
    quotient,
    hand_supplied,
};

std::string provenance_name(Provenance p);
Provenance provenance_from_name(const std::string& name);

/// Z2-graded module of a type I superalgebra: one exact action matrix per
/// algebra basis element, a parity per basis vector, and the graded
/// representation property verified on construction.
struct SuperModule {
    SuperAlgebraPtr algebra;
    int dim = 0;
    std::vector<std::uint8_t> parity;
    std::vector<SparseRationalMatrix> action;
    Provenance provenance = Provenance::hand_supplied;

    /// PBW bookkeeping for induced modules: basis index =
    /// ((rank of Q-mask) * n_plus_masks + rank of Qbar-mask) * seed_dim + seed.
    struct PbwShape {
        std::vector<int> minus_gens; // algebra indices, canonical order
        std::vector<int> plus_gens;
        int seed_dim = 0;
        bool has_minus = false; // Q-exterior factor present
        bool has_plus = false;  // Qbar-exterior factor present

        int n_minus_masks() const { return has_minus ? 1 << minus_gens.size() : 1; }
        int n_plus_masks() const { return has_plus ? 1 << plus_gens.size() : 1; }
        int index(std::uint32_t q_mask, std::uint32_t qb_mask, int seed) const;
    };
    std::optional<PbwShape> pbw;

    const SparseRationalMatrix& act(int g) const { return action[static_cast<std::size_t>(g)]; }
    SparseVector apply(const SparseVector& coeffs, const SparseVector& v) const;
};

/// Graded representation property, exhaustively over basis pairs; throws
/// std::logic_error with the offending pair on failure.
void verify_super_module(const SuperModule& v);

SuperModule make_super_module(SuperAlgebraPtr algebra, int dim, std::vector<std::uint8_t> parity,
                              std::vector<SparseRationalMatrix> action, Provenance prov);

/// Highest-weight Kac module: basis Wedge(L_{-1}) (x) U with L_{+1} U = 0.
SuperModule induce_plus(const EvenModule& u);

/// Lowest-weight opposite: basis Wedge(L_{+1}) (x) U with L_{-1} U = 0.
SuperModule induce_minus(const EvenModule& u);

/// Module induced from the full even subalgebra:
/// basis Wedge(L_{-1}) (x) Wedge(L_{+1}) (x) U0 in ordered monomial form.
SuperModule induce_even(const EvenModule& u0);

/// Graded dual: (x . xi)(v) = -(-1)^{|x||xi|} xi(x . v).
SuperModule dual_module(const SuperModule& v);

/// Graded tensor product with the Koszul sign on the pass-through factor.
SuperModule tensor(const SuperModule& v, const SuperModule& w);

/// V_plus(U) (x) V_minus(U*): the module whose first homology measures the
/// self-extensions of the Kac module.
SuperModule doubling_module(const EvenModule& u);

/// Restriction of the action to the even subalgebra.
EvenModule even_restriction(const SuperModule& v, const EvenAlgebraPtr& ev);

/// Cartan weights with parity appended; nullopt when the Cartan action is
/// not diagonal in the given basis.
std::optional<std::vector<BlockKey>> cartan_parity_keys(const SuperModule& v);

/// Even (parity-preserving) invertible intertwiner M1 -> M2, or nullopt.
std::optional<SparseRationalMatrix> find_equivariant_iso(const SuperModule& m1, const SuperModule& m2);

/// Basis of the even intertwiner space Hom_L(M1, M2) (not necessarily
/// invertible elements).
std::vector<SparseRationalMatrix> equivariant_maps(const SuperModule& m1, const SuperModule& m2);

/// Smallest invariant subspace containing the seed columns.
Subspace invariant_closure(const SuperModule& v, const SparseRationalMatrix& seeds);

/// Joint kernel of all generator actions.
Subspace invariants(const SuperModule& v);

/// Parity-shift functor: same action, all basis parities flipped.
SuperModule parity_shift(const SuperModule& v);

/// Vectors annihilated by L_{+1} and by the even raising operators.
Subspace singular_vectors(const SuperModule& v, const EvenAlgebraPtr& ev);

/// Largest invariant subspace avoiding the cyclic generator (basis vector 0
/// of a Kac module); `typical` is true when it is zero.
struct MaximalSubmoduleResult {
    bool typical = false;
    Subspace submodule;
};
MaximalSubmoduleResult maximal_invariant_submodule(const SuperModule& v, const EvenAlgebraPtr& ev);

SuperModule super_submodule(const SuperModule& v, const Subspace& s);

/// Quotient by an invariant graded subspace; `kept` lists the original basis
/// indices representing the quotient basis.
struct QuotientResult {
    SuperModule module;
    std::vector<int> kept;
};
QuotientResult super_quotient(const SuperModule& v, const Subspace& s);

/// Iterated singular-vector extraction: list of (highest weight, dimension)
/// of successive cyclic constituents, together covering the module.
std::vector<std::pair<WeightVector, int>> decompose_constituents(const SuperModule& v, const EvenAlgebraPtr& ev);

/// Index permutation of the double induction identification
/// (m (x) u) (x) (mbar (x) u*) -> m mbar (x) (u (x) u*); entry [i1] is the
/// induced-module index of tensor-basis index i1.
std::vector<int> double_induction_reindex(const SuperModule& v_plus, const SuperModule& v_minus,
                                          const SuperModule& induced);

} // namespace superkac

#endif

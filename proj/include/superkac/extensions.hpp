#ifndef SUPERKAC_EXTENSIONS_HPP
#define SUPERKAC_EXTENSIONS_HPP

#include "superkac/homology.hpp"

#include <optional>

namespace superkac {

/// The representation on Hom(V, U) with X.T = X_U T - (-1)^{|X||T|} T X_V,
/// flattened as index(i, j) = i * dim V + j.
struct HomModule {
    SuperModule module;
    int dim_u = 0;
    int dim_v = 0;
};
HomModule hom_module(const SuperModule& v, const SuperModule& u);

/// One matrix c(x): V -> U per algebra basis element, overall even.
struct Cocycle {
    int dim_u = 0;
    int dim_v = 0;
    std::vector<SparseRationalMatrix> c;
};

/// Exact check of c([x,y]) = x.c(y) - (-1)^{|x||y|} y.c(x) over all pairs.
bool is_cocycle(const SuperAlgebra& alg, const SuperModule& u, const SuperModule& v, const Cocycle& c);

/// Extension 0 -> U -> W -> V -> 0 with block action [[U, t c], [0, V]].
/// The cocycle identity is validated before assembly.
struct ExtensionModule {
    SuperModule w;
    int dim_u = 0;
    int dim_v = 0;
    Cocycle cocycle;
    Rational t;
};
ExtensionModule extension_from_cocycle(const SuperModule& u, const SuperModule& v, const Cocycle& c,
                                       const Rational& t);

/// Split iff an equivariant projection W -> U fixing the embedded copy
/// exists; cross-checkable against the coboundary test below.
bool is_split(const ExtensionModule& w);

/// Whether t*c lies in the image of d0 in the Hom(V,U)-valued cochain complex.
bool is_coboundary(const SuperModule& u, const SuperModule& v, const Cocycle& c, const Rational& t);

struct IndecomposabilityReport {
    enum class Verdict { decomposable, indecomposable, inconclusive };
    Verdict verdict = Verdict::inconclusive;
    int end_dim = 0;
    std::optional<SparseRationalMatrix> idempotent; // witness when decomposable
};

/// Decides decomposability through the equivariant endomorphism algebra:
/// minimal polynomials of the basis elements and their pairwise sums are
/// factored over Q; a coprime split yields an explicit idempotent, an
/// irreducible factor of degree > 1 that resists the bounded root search is
/// surfaced as inconclusive.
IndecomposabilityReport is_indecomposable(const SuperModule& w);

/// Equivalence of two extensions as modules (invertible intertwiner).
bool family_equivalence(const ExtensionModule& a, const ExtensionModule& b);

/// An even, non-coboundary representative of H^1(L, Hom(V, V)); nullopt when
/// the class space is trivial.
std::optional<Cocycle> doubling_cocycle(const SuperModule& v);

/// General form: representative of H^1(L, Hom(V, U)).
std::optional<Cocycle> extension_cocycle(const SuperModule& u, const SuperModule& v);

} // namespace superkac

#endif

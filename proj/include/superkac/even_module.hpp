#ifndef SUPERKAC_EVEN_MODULE_HPP
#define SUPERKAC_EVEN_MODULE_HPP

#include "superkac/intertwiner.hpp"
#include "superkac/superalgebra.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace superkac {

/// Cartan eigenvalue list, ordered like EvenAlgebra::cartan_indices.
struct WeightVector {
    std::vector<Rational> cartan_eigenvalues;

    friend bool operator==(const WeightVector& a, const WeightVector& b) {
        return a.cartan_eigenvalues == b.cartan_eigenvalues;
    }
    friend bool operator<(const WeightVector& a, const WeightVector& b) {
        return a.cartan_eigenvalues < b.cartan_eigenvalues;
    }
    std::string str() const;
};

/// Finite-dimensional module of the even subalgebra, given by one exact
/// rational action matrix per algebra basis element. Verified against the
/// bracket relations on construction.
struct EvenModule {
    EvenAlgebraPtr algebra;
    int dim = 0;
    std::vector<SparseRationalMatrix> action;
    std::optional<WeightVector> highest_weight;

    const SparseRationalMatrix& act(int local) const { return action[static_cast<std::size_t>(local)]; }

    /// Applies a coefficient combination of generators to a vector.
    SparseVector apply(const SparseVector& coeffs, const SparseVector& v) const;
};

/// Throws std::logic_error when action([x,y]) != [action(x), action(y)] for
/// some basis pair.
void verify_even_module(const EvenModule& u);

EvenModule make_even_module(EvenAlgebraPtr algebra, int dim, std::vector<SparseRationalMatrix> action,
                            std::optional<WeightVector> hw = std::nullopt);

EvenModule trivial_even_module(const EvenAlgebraPtr& algebra);

/// The (a+1)-dimensional sl(2) module of spin a/2 with hypercharge
/// y = 2b - a on every state. Requires the even part of sl(2/1).
EvenModule sl21_even_module(const EvenAlgebraPtr& algebra, int a, const Rational& b);

/// Defining module of one simple factor (other factors act as zero); Y acts
/// as the scalar y.
EvenModule natural_module(const EvenAlgebraPtr& algebra, int factor, const Rational& y);

/// Cyclic highest-weight module located inside tensor powers of the factor
/// naturals; `fuel` bounds the total tensor power searched. Throws when the
/// fuel is exhausted before the weight appears.
EvenModule highest_weight_module(const EvenAlgebraPtr& algebra, const WeightVector& weight, int fuel);

EvenModule dual(const EvenModule& u);
EvenModule tensor(const EvenModule& u1, const EvenModule& u2);

/// Joint kernel of all generator actions.
Subspace invariants(const EvenModule& u);

/// Multiset of simultaneous Cartan eigenvalues. Throws std::invalid_argument
/// when the Cartan action is not diagonalizable over Q.
std::map<WeightVector, int> weight_multiset(const EvenModule& u);

/// Weights together with their eigenspaces.
std::vector<std::pair<WeightVector, Subspace>> weight_spaces(const EvenModule& u);

/// Highest weights with multiplicities, by singular-vector extraction;
/// dimension bookkeeping is cross-checked against closures.
std::vector<std::pair<WeightVector, int>> decompose_irreducibles(const EvenModule& u);

/// Restriction of the action to an invariant subspace (throws when the
/// subspace is not invariant).
EvenModule submodule(const EvenModule& u, const Subspace& s);

/// Smallest invariant subspace containing the seeds.
Subspace cyclic_closure(const EvenModule& u, const SparseRationalMatrix& seeds);

/// Equivariant maps U -> V as matrices; weight-blocked when possible.
std::vector<SparseRationalMatrix> even_intertwiners(const EvenModule& u, const EvenModule& v);

/// Per-basis-index Cartan keys when the Cartan acts diagonally.
std::optional<std::vector<BlockKey>> even_cartan_keys(const EvenModule& u);

} // namespace superkac

#endif

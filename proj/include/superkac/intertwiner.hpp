#ifndef SUPERKAC_INTERTWINER_HPP
#define SUPERKAC_INTERTWINER_HPP

#include "superkac/linalg.hpp"

#include <map>
#include <optional>
#include <vector>

namespace superkac {

/// Per-basis-index block key (Cartan weights, and parity where graded). Maps
/// commuting with a diagonal Cartan action only connect indices with equal
/// keys, which cuts the intertwiner unknowns to the block diagonal.
using BlockKey = std::vector<Rational>;

/// Keys read off diagonal action matrices; nullopt when some matrix in
/// `diagonals` is not diagonal.
std::optional<std::vector<BlockKey>> diagonal_keys(const std::vector<const SparseRationalMatrix*>& diagonals,
                                                   int dim);

/// Basis of { T : T A_g = B_g T for all g }. A and B must list the actions of
/// the same generators in the same order. When both key vectors are provided,
/// unknowns are restricted to key-matched (row, col) pairs.
std::vector<SparseRationalMatrix> intertwiner_space(const std::vector<SparseRationalMatrix>& act_a, int dim_a,
                                                    const std::vector<SparseRationalMatrix>& act_b, int dim_b,
                                                    const std::vector<BlockKey>* keys_a = nullptr,
                                                    const std::vector<BlockKey>* keys_b = nullptr);

/// Deterministic search for an invertible element in a span of square
/// matrices; nullopt when the sampled combinations are all singular.
std::optional<SparseRationalMatrix> invertible_element(const std::vector<SparseRationalMatrix>& space, int dim);

/// Intertwiner with prescribed columns: T A_g = B_g T and T e_j = fixed[j]
/// for every pinned column j. Returns any solution, or nullopt.
std::optional<SparseRationalMatrix> intertwiner_with_fixed_columns(
    const std::vector<SparseRationalMatrix>& act_a, int dim_a, const std::vector<SparseRationalMatrix>& act_b,
    int dim_b, const std::map<int, SparseVector>& fixed, const std::vector<BlockKey>* keys_a = nullptr,
    const std::vector<BlockKey>* keys_b = nullptr);

} // namespace superkac

#endif

#ifndef SUPERKAC_JSON_IO_HPP
#define SUPERKAC_JSON_IO_HPP

#include "superkac/extensions.hpp"

#include <json.hpp>

#include <string>

namespace superkac {

using Json = nlohmann::ordered_json;

/// Supported constructor families and their parameters.
struct AlgebraSpec {
    std::string family; // "sl" | "osp2"
    int m = 0;
    int n = 0;

    Json to_json() const;
    static AlgebraSpec from_json(const Json& j);
    SuperAlgebraPtr build() const;
    static AlgebraSpec of(const SuperAlgebra& a);
};

/// Structure-constant dump: basis labels, parities, z-grades, nonzero f as
/// (a, b, c, "p/q") quadruples, Killing matrix.
Json algebra_to_json(const SuperAlgebra& a);

Json matrix_to_json(const SparseRationalMatrix& m);
SparseRationalMatrix matrix_from_json(const Json& j, int rows, int cols);

Json super_module_to_json(const SuperModule& v);
/// Rebuilds the algebra from its spec and verifies the representation
/// property on load (throws on failure).
SuperModule super_module_from_json(const Json& j);

Json even_module_to_json(const EvenModule& u);
EvenModule even_module_from_json(const Json& j);

Json cohomology_to_json(const CohomologyResult& r);

Json cocycle_to_json(const Cocycle& c, const SuperAlgebra& a);
Cocycle cocycle_from_json(const Json& j, const SuperAlgebra& a);

void write_json_file(const std::string& path, const Json& j);
Json read_json_file(const std::string& path);

} // namespace superkac

#endif

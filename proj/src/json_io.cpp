#include "superkac/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace superkac {

namespace {
constexpr int kSchema = 1;

void require_schema(const Json& j) {
    if (!j.contains("schema") || j["schema"].get<int>() != kSchema)
        throw std::invalid_argument("json: missing or unsupported schema version");
}
} // namespace

Json AlgebraSpec::to_json() const {
    Json j;
    j["family"] = family;
    if (family == "sl") {
        j["m"] = m;
        j["n"] = n;
    } else {
        j["n"] = n;
    }
    return j;
}

AlgebraSpec AlgebraSpec::from_json(const Json& j) {
    AlgebraSpec s;
    s.family = j.at("family").get<std::string>();
    if (s.family == "sl") {
        s.m = j.at("m").get<int>();
        s.n = j.at("n").get<int>();
    } else if (s.family == "osp2") {
        s.n = j.at("n").get<int>();
    } else {
        throw std::invalid_argument("json: unknown algebra family '" + s.family + "'");
    }
    return s;
}

SuperAlgebraPtr AlgebraSpec::build() const {
    if (family == "sl") return build_sl(m, n);
    if (family == "osp2") return build_osp2_2n(n);
    throw std::invalid_argument("AlgebraSpec: unknown family '" + family + "'");
}

AlgebraSpec AlgebraSpec::of(const SuperAlgebra& a) {
    AlgebraSpec s;
    s.family = a.family == SuperAlgebra::Family::sl ? "sl" : "osp2";
    s.m = a.param_m;
    s.n = a.param_n;
    return s;
}

Json algebra_to_json(const SuperAlgebra& a) {
    Json j;
    j["schema"] = kSchema;
    j["algebra"] = AlgebraSpec::of(a).to_json();
    j["dim"] = a.dim;
    Json basis = Json::array();
    for (const auto& e : a.basis) {
        Json b;
        b["label"] = e.label;
        b["parity"] = e.parity;
        b["z_grade"] = e.z_grade;
        basis.push_back(std::move(b));
    }
    j["basis"] = std::move(basis);
    j["cartan"] = a.cartan_indices;
    j["y_index"] = a.y_index;
    Json f = Json::array();
    for (int x = 0; x < a.dim; ++x)
        for (int y = 0; y < a.dim; ++y)
            for (const auto& [c, v] : a.bracket_coeffs(x, y).entries())
                f.push_back(Json::array({x, y, c, v.str()}));
    j["structure_constants"] = std::move(f);
    j["killing"] = matrix_to_json(a.killing);
    return j;
}

Json matrix_to_json(const SparseRationalMatrix& m) {
    Json rows = Json::array();
    SparseRationalMatrix t = m.transpose();
    for (int r = 0; r < m.n_rows(); ++r) {
        Json row = Json::array();
        auto dense = t.column(r).to_dense(m.n_cols());
        for (const auto& v : dense) row.push_back(v.str());
        rows.push_back(std::move(row));
    }
    return rows;
}

SparseRationalMatrix matrix_from_json(const Json& j, int rows, int cols) {
    if (!j.is_array() || static_cast<int>(j.size()) != rows)
        throw std::invalid_argument("json: matrix row count mismatch");
    std::vector<SparseRationalMatrix::Triplet> ts;
    for (int r = 0; r < rows; ++r) {
        const auto& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw std::invalid_argument("json: matrix column count mismatch");
        for (int c = 0; c < cols; ++c) {
            Rational v = Rational::parse(row[static_cast<std::size_t>(c)].get<std::string>());
            if (!v.is_zero()) ts.emplace_back(r, c, v);
        }
    }
    return SparseRationalMatrix::from_triplets(rows, cols, ts);
}

Json super_module_to_json(const SuperModule& v) {
    Json j;
    j["schema"] = kSchema;
    j["algebra"] = AlgebraSpec::of(*v.algebra).to_json();
    j["kind"] = "super";
    j["dim"] = v.dim;
    Json par = Json::array();
    for (auto p : v.parity) par.push_back(static_cast<int>(p));
    j["parity"] = std::move(par);
    j["provenance"] = provenance_name(v.provenance);
    Json action;
    for (int g = 0; g < v.algebra->dim; ++g) action[v.algebra->label(g)] = matrix_to_json(v.act(g));
    j["action"] = std::move(action);
    return j;
}

SuperModule super_module_from_json(const Json& j) {
    require_schema(j);
    if (j.at("kind").get<std::string>() != "super")
        throw std::invalid_argument("json: expected a super module file");
    auto alg = AlgebraSpec::from_json(j.at("algebra")).build();
    int dim = j.at("dim").get<int>();
    std::vector<std::uint8_t> parity;
    for (const auto& p : j.at("parity")) parity.push_back(static_cast<std::uint8_t>(p.get<int>()));
    std::vector<SparseRationalMatrix> action;
    const auto& act = j.at("action");
    for (int g = 0; g < alg->dim; ++g) {
        if (!act.contains(alg->label(g)))
            throw std::invalid_argument("json: missing action for generator " + alg->label(g));
        action.push_back(matrix_from_json(act.at(alg->label(g)), dim, dim));
    }
    Provenance prov = j.contains("provenance") ? provenance_from_name(j.at("provenance").get<std::string>())
                                                : Provenance::hand_supplied;
    return make_super_module(alg, dim, std::move(parity), std::move(action), prov);
}

Json even_module_to_json(const EvenModule& u) {
    Json j;
    j["schema"] = kSchema;
    if (u.algebra->parent) j["algebra"] = AlgebraSpec::of(*u.algebra->parent).to_json();
    j["kind"] = "even";
    j["dim"] = u.dim;
    Json action;
    for (int g = 0; g < u.algebra->dim; ++g) action[u.algebra->labels[static_cast<std::size_t>(g)]] = matrix_to_json(u.act(g));
    j["action"] = std::move(action);
    return j;
}

EvenModule even_module_from_json(const Json& j) {
    require_schema(j);
    if (j.at("kind").get<std::string>() != "even")
        throw std::invalid_argument("json: expected an even module file");
    auto ev = even_subalgebra(AlgebraSpec::from_json(j.at("algebra")).build());
    int dim = j.at("dim").get<int>();
    std::vector<SparseRationalMatrix> action;
    const auto& act = j.at("action");
    for (int g = 0; g < ev->dim; ++g) {
        const std::string& label = ev->labels[static_cast<std::size_t>(g)];
        if (!act.contains(label)) throw std::invalid_argument("json: missing action for generator " + label);
        action.push_back(matrix_from_json(act.at(label), dim, dim));
    }
    return make_even_module(ev, dim, std::move(action));
}

Json cohomology_to_json(const CohomologyResult& r) {
    Json j;
    j["kernel"] = r.kernel_dim;
    j["image"] = r.image_dim;
    j["h1"] = r.quotient();
    Json reps = Json::array();
    for (const auto& rep : r.representatives) {
        Json entries = Json::array();
        for (const auto& [i, v] : rep.entries()) entries.push_back(Json::array({i, v.str()}));
        reps.push_back(std::move(entries));
    }
    j["representatives"] = std::move(reps);
    return j;
}

Json cocycle_to_json(const Cocycle& c, const SuperAlgebra& a) {
    Json j;
    j["schema"] = kSchema;
    j["dim_u"] = c.dim_u;
    j["dim_v"] = c.dim_v;
    Json maps;
    for (int g = 0; g < a.dim; ++g) maps[a.label(g)] = matrix_to_json(c.c[static_cast<std::size_t>(g)]);
    j["c"] = std::move(maps);
    return j;
}

Cocycle cocycle_from_json(const Json& j, const SuperAlgebra& a) {
    require_schema(j);
    Cocycle c;
    c.dim_u = j.at("dim_u").get<int>();
    c.dim_v = j.at("dim_v").get<int>();
    for (int g = 0; g < a.dim; ++g)
        c.c.push_back(matrix_from_json(j.at("c").at(a.label(g)), c.dim_u, c.dim_v));
    return c;
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << j.dump(2) << "\n";
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    Json j;
    in >> j;
    return j;
}

} // namespace superkac

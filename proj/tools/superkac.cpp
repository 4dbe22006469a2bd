// superkac: exact construction and verification of Kac modules, their first
// (co)homology, and indecomposable doubled extensions for sl(m/n) and
// osp(2/2n).

#include "superkac/json_io.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <map>
#include <string>

using namespace superkac;

namespace {

using Clock = std::chrono::steady_clock;

struct Context {
    SuperAlgebraPtr algebra;
    EvenAlgebraPtr even;
};

Context make_context(const std::string& family, const std::vector<int>& params) {
    AlgebraSpec spec;
    spec.family = family;
    if (family == "sl") {
        if (params.size() != 2) throw CLI::ValidationError("params", "sl expects two integers m n");
        spec.m = params[0];
        spec.n = params[1];
    } else if (family == "osp2") {
        if (params.size() != 1) throw CLI::ValidationError("params", "osp2 expects one integer n");
        spec.n = params[0];
    } else {
        throw CLI::ValidationError("family", "family must be sl or osp2");
    }
    Context ctx;
    ctx.algebra = spec.build();
    ctx.even = even_subalgebra(ctx.algebra);
    return ctx;
}

std::vector<std::string> split_top_level(const std::string& s, char sep) {
    std::vector<std::string> parts;
    int depth = 0;
    std::string cur;
    for (char ch : s) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (ch == sep && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    return parts;
}

EvenModule parse_seed(const Context& ctx, const std::string& spec) {
    if (spec.rfind("trivial", 0) == 0) {
        auto rest = spec.substr(7);
        EvenModule u = trivial_even_module(ctx.even);
        if (!rest.empty() && rest[0] == ',') {
            Rational y = Rational::parse(rest.substr(1));
            if (ctx.even->y_index >= 0)
                u.action[static_cast<std::size_t>(ctx.even->y_index)] =
                    SparseRationalMatrix::identity(1).scaled(y);
        }
        return u;
    }
    if (spec.rfind("natural:", 0) == 0) {
        auto parts = split_top_level(spec.substr(8), ',');
        if (parts.size() != 2) throw std::invalid_argument("seed: natural:<factor>,<y>");
        return natural_module(ctx.even, std::stoi(parts[0]), Rational::parse(parts[1]));
    }
    if (spec.rfind("hw:", 0) == 0) {
        auto parts = split_top_level(spec.substr(3), ',');
        WeightVector w;
        for (const auto& p : parts) w.cartan_eigenvalues.push_back(Rational::parse(p));
        return highest_weight_module(ctx.even, w, 8);
    }
    if (spec.rfind("evfile:", 0) == 0) {
        return even_module_from_json(read_json_file(spec.substr(7)));
    }
    // "a,b": Kac-Dynkin labels for the even part of sl(2/1)
    auto parts = split_top_level(spec, ',');
    if (parts.size() == 2) {
        Rational a = Rational::parse(parts[0]);
        if (!a.is_integer() || a.sign() < 0) throw std::invalid_argument("seed: a must be a nonnegative integer");
        return sl21_even_module(ctx.even, static_cast<int>(a.numerator().get_si()), Rational::parse(parts[1]));
    }
    throw std::invalid_argument("unrecognized seed spec '" + spec + "'");
}

SuperModule parse_module(const Context& ctx, const std::string& spec);

SuperModule parse_module_inner(const Context& ctx, const std::string& spec) {
    auto strip = [](std::string s) {
        while (!s.empty() && s.front() == ' ') s.erase(s.begin());
        while (!s.empty() && s.back() == ' ') s.pop_back();
        return s;
    };
    std::string s = strip(spec);
    auto prefixed = [&](const std::string& p) { return s.rfind(p, 0) == 0; };

    if (prefixed("dual(") && s.back() == ')')
        return dual_module(parse_module(ctx, s.substr(5, s.size() - 6)));
    if (prefixed("tensor(") && s.back() == ')') {
        // seeds also contain top-level commas, so try every split point
        auto parts = split_top_level(s.substr(7, s.size() - 8), ',');
        if (parts.size() < 2) throw std::invalid_argument("tensor(<spec>,<spec>) expects two arguments");
        for (std::size_t cut = 1; cut < parts.size(); ++cut) {
            std::string left, right;
            for (std::size_t k = 0; k < parts.size(); ++k) {
                std::string& dst = k < cut ? left : right;
                if (!dst.empty()) dst += ",";
                dst += parts[k];
            }
            try {
                SuperModule lm = parse_module(ctx, left);
                SuperModule rm = parse_module(ctx, right);
                return tensor(lm, rm);
            } catch (const std::invalid_argument&) {
                continue;
            }
        }
        throw std::invalid_argument("cannot parse tensor arguments in '" + s + "'");
    }
    if (prefixed("kac+:")) return induce_plus(parse_seed(ctx, s.substr(5)));
    if (prefixed("kac-:")) return induce_minus(dual(parse_seed(ctx, s.substr(5))));
    if (prefixed("kac:")) return induce_plus(parse_seed(ctx, s.substr(4)));
    if (prefixed("irr:")) {
        SuperModule v = induce_plus(parse_seed(ctx, s.substr(4)));
        auto sub = maximal_invariant_submodule(v, ctx.even);
        if (sub.submodule.dim() == 0) return v;
        return super_quotient(v, sub.submodule).module;
    }
    if (prefixed("double:")) return doubling_module(parse_seed(ctx, s.substr(7)));
    if (prefixed("ind0:")) {
        EvenModule u = parse_seed(ctx, s.substr(5));
        return induce_even(tensor(u, dual(u)));
    }
    if (prefixed("file:")) {
        SuperModule v = super_module_from_json(read_json_file(s.substr(5)));
        // rebind to the session algebra (the constructors are deterministic,
        // so equal specs mean identical structure constants)
        if (!(AlgebraSpec::of(*v.algebra).to_json() == AlgebraSpec::of(*ctx.algebra).to_json()))
            throw std::invalid_argument("module file belongs to a different algebra");
        v.algebra = ctx.algebra;
        return v;
    }
    throw std::invalid_argument("unrecognized module spec '" + s + "'");
}

SuperModule parse_module(const Context& ctx, const std::string& spec) { return parse_module_inner(ctx, spec); }

// "0_6 + 1/2_5 + 0_4"-style spin/hypercharge decomposition for rank-1 even
// parts; raw weights otherwise.
std::string weight_summary(const Context& ctx, const SuperModule& v) {
    EvenModule rest = even_restriction(v, ctx.even);
    std::map<WeightVector, int> ws;
    try {
        ws = weight_multiset(rest);
    } catch (const std::invalid_argument&) {
        // indecomposable extensions can carry a non-semisimple Cartan action
        return "(Cartan action not diagonalizable over Q: weight multiset undefined)";
    }
    const std::size_t n_cartan = ctx.even->cartan_indices.size();
    bool rank1 = n_cartan == 2 && ctx.even->y_index >= 0;
    if (!rank1) {
        std::string out;
        for (const auto& [w, m] : ws) {
            if (!out.empty()) out += " + ";
            out += std::to_string(m) + "x" + w.str();
        }
        return out;
    }
    // peel sl(2) strings per hypercharge
    std::map<Rational, std::multiset<Rational>> by_y;
    std::size_t y_pos = 0;
    for (std::size_t k = 0; k < n_cartan; ++k)
        if (ctx.even->cartan_indices[k] == ctx.even->y_index) y_pos = k;
    for (const auto& [w, m] : ws)
        for (int i = 0; i < m; ++i)
            by_y[w.cartan_eigenvalues[y_pos]].insert(w.cartan_eigenvalues[1 - y_pos]);
    std::vector<std::pair<Rational, Rational>> multiplets; // (j, y)
    for (auto& [y, hs] : by_y) {
        while (!hs.empty()) {
            Rational top = *hs.rbegin();
            for (Rational h = top; h >= -top; h -= Rational(2)) {
                auto it = hs.find(h);
                if (it == hs.end()) throw std::logic_error("weight multiset is not a union of sl(2) strings");
                hs.erase(it);
            }
            multiplets.emplace_back(top / Rational(2), y);
        }
    }
    std::sort(multiplets.begin(), multiplets.end(), [](const auto& a, const auto& b) {
        if (!(a.second == b.second)) return b.second < a.second;
        return b.first < a.first;
    });
    std::string out;
    for (const auto& [j, y] : multiplets) {
        if (!out.empty()) out += " + ";
        out += j.str() + "_" + y.str();
    }
    return out;
}

std::string constituent_summary(const std::vector<std::pair<WeightVector, int>>& parts) {
    std::string out;
    for (const auto& [w, d] : parts) {
        if (!out.empty()) out += " + ";
        out += std::to_string(d);
    }
    return out;
}

std::string strip_spaces(const std::string& s) {
    std::string out;
    for (char c : s)
        if (c != ' ') out += c;
    return out;
}

int finish(const Json& report, const std::string& json_path, bool ok) {
    if (!json_path.empty()) write_json_file(json_path, report);
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Kac modules, first (co)homology, and indecomposable doubles for sl(m/n) and osp(2/2n)"};
    app.require_subcommand(1);

    std::string family;
    std::vector<int> params;
    std::string json_path, module_spec, spec_a, spec_b, expect, expect_file, mode = "homology", kac_spec,
                out_path, param_t = "1";

    auto add_algebra_args = [&](CLI::App* cmd) {
        cmd->add_option("family", family, "algebra family: sl | osp2")->required();
        cmd->add_option("params", params, "family parameters (sl: m n; osp2: n)")->required();
        cmd->add_option("--json", json_path, "write the machine-readable report here");
    };

    auto* cmd_algebra = app.add_subcommand("algebra", "construct and verify an algebra; dump its structure");
    add_algebra_args(cmd_algebra);

    auto* cmd_module = app.add_subcommand("module", "construct a module, verify it, print its weight content");
    add_algebra_args(cmd_module);
    cmd_module->add_option("--spec", module_spec, "module spec, e.g. kac:0,1/2 or tensor(irr:1,0,dual(irr:1,0))")
        ->required();

    auto* cmd_tensor = app.add_subcommand("tensor", "decompose a tensor product into constituents");
    add_algebra_args(cmd_tensor);
    cmd_tensor->add_option("--a", spec_a, "left factor module spec")->required();
    cmd_tensor->add_option("--b", spec_b, "right factor module spec")->required();
    cmd_tensor->add_option("--expect", expect, "expected decomposition, e.g. 5+4");
    cmd_tensor->add_option("--expect-file", expect_file, "file whose first line is the expected decomposition");

    auto* cmd_homology = app.add_subcommand("homology", "first (co)homology and the invariant-complex diagnostics");
    add_algebra_args(cmd_homology);
    cmd_homology->add_option("--module", module_spec, "module spec for homology/cohomology modes");
    cmd_homology->add_option("--double", kac_spec, "Kac seed spec, e.g. kac:0,1/2 (modes needing a seed)");
    cmd_homology->add_option("--mode", mode, "homology | cohomology | invariant | shapiro | diagnostics");

    auto* cmd_double = app.add_subcommand("double", "build and verify the doubled module W(t) of a Kac module");
    add_algebra_args(cmd_double);
    cmd_double->add_option("--kac", kac_spec, "Kac seed spec, e.g. 0,2/3")->required();
    cmd_double->add_option("--param", param_t, "extension parameter t (rational)");
    cmd_double->add_option("--out", out_path, "write the doubled module here (JSON)");

    CLI11_PARSE(app, argc, argv);

    auto t_start = Clock::now();
    Json report;
    report["schema"] = 1;

    try {
        Context ctx = make_context(family, params);

        if (cmd_algebra->parsed()) {
            report["command"] = "algebra";
            auto jac = verify_super_jacobi(*ctx.algebra);
            Json result = algebra_to_json(*ctx.algebra);
            result["jacobi_ok"] = jac.ok();
            result["odd_dim"] =
                static_cast<int>(ctx.algebra->minus_indices.size() + ctx.algebra->plus_indices.size());
            report["ok"] = jac.ok();
            report["result"] = std::move(result);
            std::cout << "algebra " << family << " dim " << ctx.algebra->dim << ", odd "
                      << ctx.algebra->minus_indices.size() + ctx.algebra->plus_indices.size()
                      << ", super-Jacobi " << (jac.ok() ? "pass" : "FAIL") << "\n";
            report["timing_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t_start).count();
            return finish(report, json_path, jac.ok());
        }

        if (cmd_module->parsed()) {
            report["command"] = "module";
            SuperModule v = parse_module(ctx, module_spec);
            std::string summary = weight_summary(ctx, v);
            std::cout << "module " << module_spec << ": dim " << v.dim << "\n  " << summary << "\n";
            Json result;
            result["dim"] = v.dim;
            result["weights"] = summary;
            result["module"] = super_module_to_json(v);
            report["ok"] = true;
            report["result"] = std::move(result);
            report["timing_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t_start).count();
            return finish(report, json_path, true);
        }

        if (cmd_tensor->parsed()) {
            report["command"] = "tensor";
            SuperModule a = parse_module(ctx, spec_a);
            SuperModule b = parse_module(ctx, spec_b);
            SuperModule t = tensor(a, b);
            auto parts = decompose_constituents(t, ctx.even);
            std::string got = constituent_summary(parts);
            std::string expected = expect;
            if (!expect_file.empty()) {
                auto j = read_json_file(expect_file);
                expected = j.at("expect").get<std::string>();
            }
            bool ok = expected.empty() || strip_spaces(got) == strip_spaces(expected);
            std::cout << spec_a << " (x) " << spec_b << " = " << got;
            if (!expected.empty()) std::cout << (ok ? "  [matches " : "  [expected ") << expected << "]";
            std::cout << "\n";
            Json result;
            result["decomposition"] = got;
            Json consts = Json::array();
            for (const auto& [w, d] : parts) consts.push_back(Json::array({d, w.str()}));
            result["constituents"] = std::move(consts);
            if (!expected.empty()) result["expected"] = expected;
            report["ok"] = ok;
            report["result"] = std::move(result);
            report["timing_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t_start).count();
            return finish(report, json_path, ok);
        }

        if (cmd_homology->parsed()) {
            report["command"] = "homology";
            report["mode"] = mode;
            Json result;
            bool ok = true;

            if (mode == "homology" || mode == "cohomology") {
                std::string spec = module_spec;
                if (spec.empty() && !kac_spec.empty()) {
                    std::string seed = kac_spec;
                    if (seed.rfind("kac+:", 0) == 0) seed = seed.substr(5);
                    if (seed.rfind("kac:", 0) == 0) seed = seed.substr(4);
                    spec = "double:" + seed;
                }
                if (spec.empty()) throw std::invalid_argument("--module or --double required");
                SuperModule v = parse_module(ctx, spec);
                CohomologyResult h = mode == "homology" ? homology1(v) : cohomology1(v);
                result = cohomology_to_json(h);
                std::cout << mode << " of " << spec << ": h1 = " << h.quotient() << " (ker " << h.kernel_dim
                          << ", im " << h.image_dim << ")\n";
            } else {
                if (kac_spec.empty()) throw std::invalid_argument("--double <seed spec> required for this mode");
                std::string seed_str = kac_spec;
                if (seed_str.rfind("kac:", 0) == 0) seed_str = seed_str.substr(4);
                if (seed_str.rfind("kac+:", 0) == 0) seed_str = seed_str.substr(5);
                EvenModule u = parse_seed(ctx, seed_str);
                EvenModule uu = tensor(u, dual(u));
                if (mode == "invariant") {
                    auto inv = invariant_restricted_h1(ctx.even, uu);
                    result["kernel"] = inv.result.kernel_dim;
                    result["image"] = inv.result.image_dim;
                    result["h1"] = inv.result.quotient();
                    result["invariant_dims"] =
                        Json::array({inv.invariant_dim2, inv.invariant_dim1, inv.invariant_dim0});
                    std::cout << "invariant-restricted h1 = " << inv.result.quotient() << " (ker "
                              << inv.result.kernel_dim << ", im " << inv.result.image_dim << ")\n";
                } else if (mode == "shapiro") {
                    auto rep = shapiro_check(u);
                    ok = rep.pass();
                    result["direct_h1"] = rep.direct_h1;
                    result["invariant_h1"] = rep.invariant_h1;
                    result["pass"] = rep.pass();
                    std::cout << "shapiro: " << rep.direct_h1 << " = " << rep.invariant_h1 << " "
                              << (rep.pass() ? "PASS" : "FAIL") << "\n";
                } else if (mode == "diagnostics") {
                    auto diag = proof_diagnostics(ctx.even, uu);
                    ok = diag.ok();
                    result["adjoint_present"] = diag.adjoint_present;
                    result["d0_I1_zero"] = diag.d0_i1_zero;
                    result["d0_I1Y_zero"] = diag.d0_i1y_zero;
                    result["d1_I2_proportional"] = diag.d1_i2_proportional;
                    result["d1_I2W_zero"] = diag.d1_i2w_zero;
                    result["d1_I2Y_zero"] = diag.d1_i2y_zero;
                    result["n_w_couplings"] = diag.n_w_couplings;
                    Json cas = Json::array();
                    for (const auto& c : diag.factor_casimirs) cas.push_back(c.str());
                    result["factor_casimirs"] = std::move(cas);
                    result["invariant_kernel"] = diag.invariant_kernel_dim;
                    result["invariant_image"] = diag.invariant_image_dim;
                    std::cout << "diagnostics: d0 I1 = 0: " << diag.d0_i1_zero
                              << ", d0 I1Y = 0: " << diag.d0_i1y_zero
                              << ", d1 I2 = C I1: " << diag.d1_i2_proportional
                              << ", d1 I2W = 0: " << diag.d1_i2w_zero << " (" << diag.n_w_couplings
                              << " couplings), d1 I2Y = 0: " << diag.d1_i2y_zero << "\n";
                    std::cout << "  invariant complex count: " << diag.invariant_kernel_dim << " - "
                              << diag.invariant_image_dim << " = "
                              << diag.invariant_kernel_dim - diag.invariant_image_dim << "\n";
                } else {
                    throw std::invalid_argument("unknown mode '" + mode + "'");
                }
            }
            report["ok"] = ok;
            report["result"] = std::move(result);
            report["timing_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t_start).count();
            return finish(report, json_path, ok);
        }

        if (cmd_double->parsed()) {
            report["command"] = "double";
            std::string seed_str = kac_spec;
            if (seed_str.rfind("kac:", 0) == 0) seed_str = seed_str.substr(4);
            EvenModule u = parse_seed(ctx, seed_str);
            Rational t = Rational::parse(param_t);

            SuperModule v = induce_plus(u);
            auto c = doubling_cocycle(v);
            if (!c) throw std::runtime_error("no nontrivial doubling class found");
            ExtensionModule w = extension_from_cocycle(v, v, *c, t);

            bool embedded_ok = true;
            for (int g = 0; g < ctx.algebra->dim && embedded_ok; ++g)
                for (int col = 0; col < w.dim_u && embedded_ok; ++col)
                    for (const auto& [r, val] : w.w.act(g).column(col).entries())
                        if (r >= w.dim_u) embedded_ok = false;
            bool split = is_split(w);
            bool cob = is_coboundary(v, v, *c, t);
            auto indec = is_indecomposable(w.w);

            bool expected_split = t.is_zero();
            bool ok = embedded_ok && split == expected_split && cob == expected_split &&
                      (expected_split
                           ? indec.verdict == IndecomposabilityReport::Verdict::decomposable
                           : indec.verdict == IndecomposabilityReport::Verdict::indecomposable);

            std::cout << "W(" << t.str() << "): dim " << w.w.dim << ", representation ok, submodule "
                      << (embedded_ok ? "ok" : "FAIL") << ", " << (split ? "split" : "nonsplit") << ", "
                      << (indec.verdict == IndecomposabilityReport::Verdict::indecomposable ? "indecomposable"
                          : indec.verdict == IndecomposabilityReport::Verdict::decomposable ? "decomposable"
                                                                                            : "inconclusive")
                      << ", End dim " << indec.end_dim << "\n";

            Json result;
            result["dim"] = w.w.dim;
            result["t"] = t.str();
            result["representation_ok"] = true;
            result["submodule_ok"] = embedded_ok;
            result["split"] = split;
            result["coboundary"] = cob;
            result["indecomposable"] = indec.verdict == IndecomposabilityReport::Verdict::indecomposable;
            result["end_dim"] = indec.end_dim;
            result["h1_class"] = cocycle_to_json(*c, *ctx.algebra);
            report["ok"] = ok;
            report["result"] = std::move(result);
            if (!out_path.empty()) write_json_file(out_path, super_module_to_json(w.w));
            report["timing_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t_start).count();
            return finish(report, json_path, ok);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        report["ok"] = false;
        report["error"] = e.what();
        if (!json_path.empty()) write_json_file(json_path, report);
        return 1;
    }
    return 0;
}

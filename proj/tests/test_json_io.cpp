#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "superkac/json_io.hpp"

using namespace superkac;

namespace {

SuperAlgebraPtr sl21() {
    static SuperAlgebraPtr a = build_sl(2, 1);
    return a;
}

EvenAlgebraPtr ev21() {
    static EvenAlgebraPtr ev = even_subalgebra(sl21());
    return ev;
}

} // namespace

TEST_CASE("algebra dump carries the full structure") {
    auto j = algebra_to_json(*sl21());
    CHECK(j["dim"] == 8);
    CHECK(j["basis"].size() == 8);
    CHECK(j["algebra"]["family"] == "sl");

    // round-trip through the spec rebuilds the same structure constants
    auto again = AlgebraSpec::from_json(j["algebra"]).build();
    CHECK(algebra_to_json(*again) == j);

    auto o = build_osp2_2n(2);
    auto jo = algebra_to_json(*o);
    CHECK(jo["dim"] == 19);
    CHECK(AlgebraSpec::from_json(jo["algebra"]).build()->dim == 19);
}

TEST_CASE("module round-trip: dump, reload, identical action") {
    auto u = sl21_even_module(ev21(), 1, Rational(1, 3));
    auto v = induce_plus(u);
    auto j = super_module_to_json(v);
    auto back = super_module_from_json(j);
    CHECK(back.dim == v.dim);
    CHECK(back.parity == v.parity);
    for (int g = 0; g < sl21()->dim; ++g) CHECK(back.act(g) == v.act(g));

    // deterministic serialization
    CHECK(super_module_to_json(back).dump() == j.dump());

    auto je = even_module_to_json(u);
    auto ue = even_module_from_json(je);
    CHECK(ue.dim == u.dim);
    for (int g = 0; g < ev21()->dim; ++g) CHECK(ue.act(g) == u.act(g));
}

TEST_CASE("invalid hand-supplied module is rejected on load") {
    auto v = induce_plus(sl21_even_module(ev21(), 0, Rational(1, 2)));
    auto j = super_module_to_json(v);
    j["action"]["Y"][0][0] = "7"; // corrupt one entry
    CHECK_THROWS_AS(super_module_from_json(j), std::logic_error);

    Json bad = j;
    bad.erase("schema");
    CHECK_THROWS_AS(super_module_from_json(bad), std::invalid_argument);
}

TEST_CASE("rationals serialize as exact p/q strings") {
    SparseRationalMatrix m = SparseRationalMatrix::from_dense(
        {{Rational(1, 3), Rational(-7)}, {Rational(0), Rational(22, 7)}});
    auto j = matrix_to_json(m);
    CHECK(j[0][0] == "1/3");
    CHECK(j[0][1] == "-7");
    CHECK(j[1][0] == "0");
    CHECK(j[1][1] == "22/7");
    CHECK(matrix_from_json(j, 2, 2) == m);
}

TEST_CASE("cocycle round-trip") {
    auto v = induce_plus(sl21_even_module(ev21(), 0, Rational(1, 3)));
    auto c = doubling_cocycle(v);
    REQUIRE(c.has_value());
    auto j = cocycle_to_json(*c, *sl21());
    auto back = cocycle_from_json(j, *sl21());
    CHECK(is_cocycle(*sl21(), v, v, back));
    for (std::size_t g = 0; g < c->c.size(); ++g) CHECK(back.c[g] == c->c[g]);
}

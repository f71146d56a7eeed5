#include <random>

#include "doctest.h"
#include "gforge/gbasis.hpp"
#include "oracles.hpp"
#include "testutil.hpp"

using namespace gforge;

namespace {

NcPoly rand_word_poly(std::mt19937& rng, const GeneratorAlphabet& a, int deg) {
    std::uniform_int_distribution<int> coeff(-2, 2), gen(0, int(a.size()) - 1);
    NcPoly p(deg);
    for (int t = 0; t < 3; ++t) {
        Word w;
        for (int i = 0; i < deg; ++i) w.push_back(Gen(gen(rng)));
        p.add_term(w, Scalar(coeff(rng)));
    }
    return p;
}

}  // namespace

TEST_SUITE("gbasis") {

TEST_CASE("commutative plane basis is the relation itself") {
    GeneratorAlphabet a({"x", "y"}, {1, 1});
    auto rel = parse_expr("y*x - x*y", a, Field{});
    auto gb = truncated_groebner(a, {rel}, 6);
    REQUIRE(gb.basis.size() == 1);
    CHECK(gb.basis[0] == rel);
    CHECK(normal_form(parse_expr("y*x", a, Field{}), gb) == parse_expr("x*y", a, Field{}));
}

TEST_CASE("degree <2 relations rejected") {
    GeneratorAlphabet a({"x", "y"}, {1, 1});
    CHECK_THROWS_AS(truncated_groebner(a, {parse_expr("x - y", a, Field{})}, 4), Error);
}

TEST_CASE("down-up dims match the Euler-characteristic series") {
    // 1/((1-t)^2 (1-t^2)) forced by 0 -> A(-4) -> A(-3)^2 -> A(-1)^2 -> A -> k
    auto expect = oracles::series_inverse({1, -2, 0, 2, -1}, 6);
    auto A = testutil::down_up(6);
    auto h = A.hilbert();
    REQUIRE(h.size() == 7);
    for (int d = 0; d <= 6; ++d) CHECK(h[d] == expect[d]);
    CHECK(expect == std::vector<long>{1, 2, 4, 6, 9, 12, 16});
}

TEST_CASE("free algebra") {
    GeneratorAlphabet a({"x", "y"}, {1, 1});
    auto gb = truncated_groebner(a, {}, 4);
    CHECK(gb.basis.empty());
    CHECK(hilbert_function(gb) == std::vector<long>{1, 2, 4, 8, 16});
    CHECK(monomial_basis(gb, 3).size() == 8);
}

TEST_CASE("normal form examples") {
    auto A = testutil::down_up(6);
    const auto& gb = A.gb();
    auto f1 = parse_expr("x1*x1*x2 - x2*x1*x1", gb.alphabet, Field{});
    CHECK(normal_form(f1, gb).is_zero());
    auto w = parse_expr("x1*x2*x1", gb.alphabet, Field{});
    CHECK(normal_form(w, gb) == w);  // irreducible monomial
    std::mt19937 rng(1);
    CHECK_THROWS_AS(normal_form(rand_word_poly(rng, gb.alphabet, 7), gb), Error);
}

TEST_CASE("monomial basis examples") {
    auto A = testutil::down_up(6);
    CHECK(monomial_basis(A.gb(), 2).size() == 4);
    CHECK(monomial_basis(A.gb(), 0) == std::vector<Word>{Word{}});
    auto F = testutil::free2(4);
    CHECK(monomial_basis(F.gb(), 3).size() == 8);
}

TEST_CASE("hilbert examples") {
    auto P = testutil::poly2(5);
    CHECK(P.hilbert() == std::vector<long>{1, 2, 3, 4, 5, 6});
    auto A = testutil::down_up(5);
    CHECK(A.hilbert() == std::vector<long>{1, 2, 4, 6, 9, 12});
    auto F = testutil::free2(3);
    CHECK(F.hilbert() == std::vector<long>{1, 2, 4, 8});
}

TEST_CASE("quantum plane hilbert is d+1 for q != 0") {
    for (long q : {2L, 3L, -1L, 5L}) {
        auto Q = testutil::quantum_plane(6, q);
        auto h = Q.hilbert();
        for (int d = 0; d <= 6; ++d) CHECK(h[d] == d + 1);
    }
}

TEST_CASE("normal form idempotence and multiplicativity") {
    auto A = testutil::down_up(6);
    const auto& gb = A.gb();
    std::mt19937 rng(41);
    for (int t = 0; t < 200; ++t) {
        NcPoly p = rand_word_poly(rng, gb.alphabet, 2);
        NcPoly q = rand_word_poly(rng, gb.alphabet, 3);
        NcPoly np = normal_form(p, gb);
        CHECK(normal_form(np, gb) == np);
        CHECK(normal_form(mul(p, q), gb) ==
              normal_form(mul(normal_form(p, gb), normal_form(q, gb)), gb));
    }
}

TEST_CASE("dims agree with the brute-force ideal span oracle") {
    GeneratorAlphabet a({"x1", "x2"}, {1, 1});
    std::vector<NcPoly> rels{parse_expr("x1*x1*x2 - x2*x1*x1", a, Field{}),
                             parse_expr("x1*x2*x2 - x2*x2*x1", a, Field{})};
    auto gb = truncated_groebner(a, rels, 5);
    for (int d = 0; d <= 5; ++d)
        CHECK(long(monomial_basis(gb, d).size()) == oracles::ideal_dim_oracle(a, rels, d));

    GeneratorAlphabet b({"x", "y"}, {1, 1});
    std::vector<NcPoly> rels2{parse_expr("x*x", b, Field{}),
                              parse_expr("x*y*y - y*y*x", b, Field{})};
    auto gb2 = truncated_groebner(b, rels2, 5);
    for (int d = 0; d <= 5; ++d)
        CHECK(long(monomial_basis(gb2, d).size()) == oracles::ideal_dim_oracle(b, rels2, d));
}
}

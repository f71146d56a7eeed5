#include <random>

#include "doctest.h"
#include "gforge/freealg.hpp"

using namespace gforge;

namespace {

GeneratorAlphabet xy() { return GeneratorAlphabet({"x1", "x2"}, {1, 1}); }

NcPoly parse(const std::string& s, const GeneratorAlphabet& a) {
    return parse_expr(s, a, Field{});
}

NcPoly random_poly(std::mt19937& rng, const GeneratorAlphabet& a, int deg) {
    std::uniform_int_distribution<int> coeff(-3, 3), gen(0, int(a.size()) - 1);
    NcPoly p(deg);
    for (int t = 0; t < 4; ++t) {
        Word w;
        int d = 0;
        while (d < deg) {
            Gen g = Gen(gen(rng));
            w.push_back(g);
            d += a.degree(g);
        }
        if (d == deg) p.add_term(w, Scalar(coeff(rng)));
    }
    return p;
}

}  // namespace

TEST_SUITE("freealg") {

TEST_CASE("alphabet validation") {
    CHECK_THROWS_AS(GeneratorAlphabet({"x", "x"}, {1, 1}), Error);
    CHECK_THROWS_AS(GeneratorAlphabet({"x"}, {0}), Error);
}

TEST_CASE("parse paper relation") {
    auto a = xy();
    NcPoly f1 = parse("x1*x1*x2 - x2*x1*x1", a);
    CHECK(f1.degree() == 3);
    CHECK(f1.term_count() == 2);
    Word w112{0, 0, 1}, w211{1, 0, 0};
    CHECK(f1.coeff(w112) == Scalar(1));
    CHECK(f1.coeff(w211) == Scalar(-1));
}

TEST_CASE("parse zero and inhomogeneity") {
    auto a = xy();
    CHECK(parse("0", a).is_zero());
    CHECK_THROWS_AS(parse("x1 + x1*x2", a), ParseError);
    CHECK_THROWS_AS(parse("x1 + y", a), ParseError);
    CHECK_THROWS_AS(parse("x1 *", a), ParseError);
    CHECK_THROWS_AS(parse("2*", a), ParseError);
}

TEST_CASE("parse scalars and parameters") {
    auto a = xy();
    std::map<std::string, Scalar> params{{"p", Scalar(mpq_class(1, 2), {})}};
    NcPoly p = parse_expr("-p*x1 + 1/2*x2", a, Field{}, params);
    CHECK(p.coeff(Word{0}) == Scalar(mpq_class(-1, 2), {}));
    CHECK(p.coeff(Word{1}) == Scalar(mpq_class(1, 2), {}));
    NcPoly q = parse_expr("3x1", a, Field{});  // juxtaposed scalar
    CHECK(q.coeff(Word{0}) == Scalar(3));
    NcPoly par = parse_expr("(x1 + x2)*x1", a, Field{});
    CHECK(par.term_count() == 2);
}

TEST_CASE("offset reporting") {
    auto a = xy();
    try {
        parse("x1 + $", a);
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.offset == 5);
    }
}

TEST_CASE("mul basics") {
    auto a = xy();
    NcPoly x1 = parse("x1", a), x2 = parse("x2", a);
    NcPoly prod = mul(x1, x2);
    CHECK(prod.degree() == 2);
    CHECK(prod.coeff(Word{0, 1}) == Scalar(1));

    NcPoly lhs = mul(parse("x1 + x2", a), parse("x1 - x2", a));
    CHECK(lhs == parse("x1*x1 - x1*x2 + x2*x1 - x2*x2", a));

    NcPoly z = mul(parse("x1", a), NcPoly(1));
    CHECK(z.is_zero());
}

TEST_CASE("mul associativity and distributivity") {
    auto a = xy();
    std::mt19937 rng(23);
    for (int t = 0; t < 40; ++t) {
        NcPoly p = random_poly(rng, a, 2), q = random_poly(rng, a, 1),
               r = random_poly(rng, a, 2);
        CHECK(mul(mul(p, q), r) == mul(p, mul(q, r)));
        CHECK(mul(p + p, r) == mul(p, r) + mul(p, r));
    }
}

TEST_CASE("word degree additivity") {
    GeneratorAlphabet a({"x", "z"}, {1, 2});
    std::mt19937 rng(29);
    std::uniform_int_distribution<int> gen(0, 1), len(0, 5);
    for (int t = 0; t < 50; ++t) {
        Word u, v;
        for (int i = len(rng); i > 0; --i) u.push_back(Gen(gen(rng)));
        for (int i = len(rng); i > 0; --i) v.push_back(Gen(gen(rng)));
        CHECK(a.word_degree(u + v) == a.word_degree(u) + a.word_degree(v));
    }
    CHECK(a.word_degree(Word{}) == 0);
}

TEST_CASE("apply_generator_map sign flips") {
    auto a = xy();
    std::vector<NcPoly> neg{parse("-x1", a), parse("-x2", a)};
    // even length word: unchanged
    CHECK(apply_generator_map(parse("x1*x2", a), neg, a) == parse("x1*x2", a));
    // identity images
    std::vector<NcPoly> id{parse("x1", a), parse("x2", a)};
    NcPoly f1 = parse("x1*x1*x2 - x2*x1*x1", a);
    CHECK(apply_generator_map(f1, id, a) == f1);
    // odd word length 3 forces a sign flip
    CHECK(apply_generator_map(f1, neg, a) == -f1);
    CHECK_THROWS_AS(apply_generator_map(f1, {parse("x1*x2", a), parse("x2", a)}, a), Error);
}

TEST_CASE("apply_generator_map multiplicative") {
    auto a = xy();
    std::mt19937 rng(31);
    std::vector<NcPoly> images{parse("x1 + 2*x2", a), parse("x2 - x1", a)};
    for (int t = 0; t < 30; ++t) {
        NcPoly p = random_poly(rng, a, 2), q = random_poly(rng, a, 1);
        CHECK(apply_generator_map(mul(p, q), images, a) ==
              mul(apply_generator_map(p, images, a), apply_generator_map(q, images, a)));
    }
}

TEST_CASE("print parse round trip") {
    auto a = xy();
    std::mt19937 rng(37);
    for (int t = 0; t < 60; ++t) {
        NcPoly p = random_poly(rng, a, 3);
        NcPoly q = parse(pretty_print(p, a), a);
        CHECK((p.is_zero() ? q.is_zero() : p == q));
    }
    CHECK(pretty_print(NcPoly(2), a) == "0");
}
}

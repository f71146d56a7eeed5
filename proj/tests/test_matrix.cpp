#include <random>

#include "doctest.h"
#include "gforge/matrix.hpp"

using namespace gforge;

namespace {

ScalarMatrix from_longs(const std::vector<std::vector<long>>& rows, Field f = {}) {
    ScalarMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size(), f);
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = Scalar(rows[i][j], f);
    return m;
}

}  // namespace

TEST_SUITE("matrix") {

TEST_CASE("rref dependent rows") {
    auto r = rref(from_longs({{1, 2}, {2, 4}}));
    CHECK(r.rank == 1);
    CHECK(r.pivots == std::vector<size_t>{0});
    CHECK(r.reduced.at(0, 0) == Scalar(1));
    CHECK(r.reduced.at(0, 1) == Scalar(2));
    CHECK(r.reduced.at(1, 0).is_zero());
}

TEST_CASE("rref identity and permutation") {
    auto id3 = ScalarMatrix::identity(3);
    auto r = rref(id3);
    CHECK(r.rank == 3);
    CHECK(r.reduced == id3);
    auto p = rref(from_longs({{0, 1}, {1, 0}}));
    CHECK(p.rank == 2);
    CHECK(p.reduced == ScalarMatrix::identity(2));
}

TEST_CASE("rref idempotence") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<long> d(-4, 4);
    for (int t = 0; t < 30; ++t) {
        ScalarMatrix m(4, 6);
        for (size_t i = 0; i < 4; ++i)
            for (size_t j = 0; j < 6; ++j) m.at(i, j) = Scalar(d(rng));
        auto r = rref(m);
        auto r2 = rref(r.reduced);
        CHECK(r2.reduced == r.reduced);
    }
}

TEST_CASE("kernel basis") {
    auto k1 = kernel_basis(from_longs({{1, 1}}));
    REQUIRE(k1.size() == 1);
    CHECK(k1[0][0] == Scalar(1));
    CHECK(k1[0][1] == Scalar(-1));
    CHECK(kernel_basis(ScalarMatrix::identity(2)).empty());
    CHECK(kernel_basis(ScalarMatrix(2, 3)).size() == 3);
}

TEST_CASE("solve") {
    auto s = solve(from_longs({{2}}), std::vector<Scalar>{Scalar(4)});
    REQUIRE(s.has_value());
    CHECK(s->particular == ScalarVec{Scalar(2)});
    CHECK(s->nullspace.empty());

    auto s2 = solve(from_longs({{1, 1}}), std::vector<Scalar>{Scalar(0)});
    REQUIRE(s2.has_value());
    CHECK(s2->particular == ScalarVec{Scalar(0), Scalar(0)});
    REQUIRE(s2->nullspace.size() == 1);
    CHECK(s2->nullspace[0] == ScalarVec{Scalar(1), Scalar(-1)});

    CHECK(!solve(from_longs({{0}}), std::vector<Scalar>{Scalar(1)}).has_value());
    CHECK_THROWS_AS(solve(from_longs({{1}}), std::vector<Scalar>{Scalar(1), Scalar(2)}),
                    Error);
}

TEST_CASE("solve exactness properties") {
    std::mt19937 rng(13);
    std::uniform_int_distribution<long> d(-5, 5);
    for (int t = 0; t < 25; ++t) {
        ScalarMatrix m(3, 5);
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = 0; j < 5; ++j) m.at(i, j) = Scalar(d(rng));
        ScalarVec x(5);
        for (auto& e : x) e = Scalar(d(rng));
        ScalarVec b = m.apply(x);
        auto s = solve(m, b);
        REQUIRE(s.has_value());
        CHECK(m.apply(s->particular) == b);
        for (const auto& v : s->nullspace) {
            auto mv = m.apply(v);
            for (const auto& e : mv) CHECK(e.is_zero());
        }
    }
}

TEST_CASE("invert") {
    // diag(4p^4, 4p^4) at p=1 inverts to diag(1/4, 1/4)
    auto inv = invert(from_longs({{4, 0}, {0, 4}}));
    REQUIRE(inv.has_value());
    CHECK(inv->at(0, 0) == Scalar(mpq_class(1, 4), {}));
    CHECK(inv->at(1, 1) == Scalar(mpq_class(1, 4), {}));
    CHECK(inv->at(0, 1).is_zero());

    auto id = invert(ScalarMatrix::identity(2));
    REQUIRE(id.has_value());
    CHECK(id->is_identity());

    CHECK(!invert(from_longs({{1, 1}, {1, 1}})).has_value());
    CHECK_THROWS_AS(invert(ScalarMatrix(2, 3)), Error);
}

TEST_CASE("invert round trip") {
    std::mt19937 rng(17);
    std::uniform_int_distribution<long> d(-5, 5);
    for (int t = 0; t < 20; ++t) {
        ScalarMatrix m(4, 4);
        for (size_t i = 0; i < 4; ++i)
            for (size_t j = 0; j < 4; ++j) m.at(i, j) = Scalar(d(rng));
        auto inv = invert(m);
        if (!inv) continue;
        CHECK((m * *inv).is_identity());
        CHECK((*inv * m).is_identity());
    }
}

TEST_CASE("solver reuse and free values") {
    ScalarMatrix m = from_longs({{1, 1, 0}, {0, 0, 1}});
    RrefSolver s(m);
    CHECK(s.rank() == 2);
    auto x0 = s.solve(std::vector<Scalar>{Scalar(3), Scalar(5)});
    REQUIRE(x0.has_value());
    CHECK(m.apply(*x0) == ScalarVec{Scalar(3), Scalar(5)});
    auto x1 = s.solve(std::vector<Scalar>{Scalar(3), Scalar(5)}, Scalar(1));
    REQUIRE(x1.has_value());
    CHECK((*x1)[1] == Scalar(1));  // free variable pinned to 1
    CHECK(m.apply(*x1) == ScalarVec{Scalar(3), Scalar(5)});
}

TEST_CASE("prime field elimination") {
    Field f5{5};
    auto m = from_longs({{2, 1}, {1, 1}}, f5);
    auto inv = invert(m);
    REQUIRE(inv.has_value());
    CHECK((m * *inv).is_identity());
}
}

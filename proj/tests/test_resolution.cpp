#include "doctest.h"
#include "gforge/resolution.hpp"
#include "oracles.hpp"
#include "testutil.hpp"

using namespace gforge;

namespace {

std::vector<std::vector<int>> shift_table(const FreeResolution& r) {
    std::vector<std::vector<int>> out;
    for (const auto& t : r.terms) out.push_back(t.shifts);
    return out;
}

}  // namespace

TEST_SUITE("resolution") {

TEST_CASE("down-up resolution matches the printed one") {
    auto A = testutil::down_up(6);
    auto res = minimal_resolution(A, 4, 6);
    auto sh = shift_table(res);
    REQUIRE(sh.size() >= 4);
    CHECK(sh[0] == std::vector<int>{0});
    CHECK(sh[1] == std::vector<int>{1, 1});
    CHECK(sh[2] == std::vector<int>{3, 3});
    CHECK(sh[3] == std::vector<int>{4});
    CHECK(res.terminated);
    CHECK(res.length == 3);
    CHECK(complex_property(res));
    CHECK(minimality_property(res));
    CHECK(exactness_property(res));
    CHECK(is_pure(res).pure);
}

TEST_CASE("polynomial line resolves in one step") {
    auto A = testutil::poly1(4);
    auto res = minimal_resolution(A, 2, 4);
    CHECK(res.terms[1].shifts == std::vector<int>{1});
    CHECK(res.terminated);
    CHECK(res.length == 1);
    CHECK(res.terms[2].rank() == 0);
    CHECK(exactness_property(res));
}

TEST_CASE("quantum plane is Koszul and pure") {
    for (long q : {2L, 3L}) {
        auto B = testutil::quantum_plane(4, q);
        auto res = minimal_resolution(B, 3, 4);
        CHECK(res.terms[1].shifts == std::vector<int>{1, 1});
        CHECK(res.terms[2].shifts == std::vector<int>{2});
        CHECK(res.terminated);
        CHECK(is_pure(res).pure);
        CHECK(complex_property(res));
        CHECK(exactness_property(res));
        CHECK(minimality_property(res));
    }
}

TEST_CASE("commutative plane Koszul complex") {
    auto P = testutil::poly2(5);
    auto res = minimal_resolution(P, 3, 5);
    CHECK(res.terms[1].shifts == std::vector<int>{1, 1});
    CHECK(res.terms[2].shifts == std::vector<int>{2});
    CHECK(res.terminated);
}

TEST_CASE("mixed syzygies are reported with a witness") {
    auto A = testutil::make_algebra({"x", "y"}, {"x*x", "x*y*y - y*y*x"}, 5);
    auto res = minimal_resolution(A, 2, 5);
    auto purity = is_pure(res);
    CHECK(!purity.pure);
    CHECK(purity.first_mixed == 2);
}

TEST_CASE("bound diagnostics") {
    auto A = testutil::down_up(6);
    CHECK_THROWS_AS(minimal_resolution(A, 3, 2), Error);   // relation degree 3 > D
    CHECK_THROWS_AS(minimal_resolution(A, 3, 10), Error);  // D beyond truncation
}

TEST_CASE("betti numbers agree with the reduced bar complex") {
    auto check_against_bar = [](const GradedAlgebra& A, int N, int D) {
        auto res = minimal_resolution(A, N, D);
        auto beta = oracles::bar_betti(A, N, D);
        for (int n = 0; n <= N; ++n) {
            std::vector<long> from_res(D + 1, 0);
            if (size_t(n) < res.terms.size())
                for (int s : res.terms[n].shifts)
                    if (s <= D) ++from_res[s];
            for (int d = 0; d <= D; ++d) CHECK(beta[n][d] == from_res[d]);
        }
    };
    check_against_bar(testutil::down_up(5), 3, 5);
    check_against_bar(testutil::quantum_plane(4, 2), 3, 4);
    check_against_bar(testutil::poly2(4), 3, 4);
    check_against_bar(testutil::make_algebra({"x", "y"}, {"x*x", "x*y*y - y*y*x"}, 5), 3, 5);
}

TEST_CASE("lifting the identity gives the identity chain map") {
    auto P = testutil::poly2(5);
    auto res = minimal_resolution(P, 2, 5);
    auto lift = lift_cocycle(res, 0, 0, 2, Scalar::zero(Field{}));
    for (int p = 0; p <= 2; ++p) {
        const auto& comp = lift.comps[p];
        REQUIRE(comp.size() == res.terms[p].rank());
        for (size_t g = 0; g < comp.size(); ++g)
            for (size_t row = 0; row < comp[g].size(); ++row) {
                if (row == g)
                    CHECK(comp[g][row] == P.one());
                else
                    CHECK(comp[g][row].is_zero());
            }
    }
}

TEST_CASE("lift commutes with the differentials up to the declared sign") {
    auto A = testutil::down_up(6);
    auto res = minimal_resolution(A, 3, 6);
    for (int i : {1, 2}) {
        for (size_t g = 0; g < res.terms[i].rank(); ++g) {
            auto lift = lift_cocycle(res, i, g, 3, Scalar::zero(Field{}));
            Scalar sign = (i % 2 == 0) ? Scalar(1) : Scalar(-1);
            for (int p = i + 1; p <= 3; ++p) {
                if (size_t(p) >= res.positions()) break;
                // d(theta(e)) == sign * theta(d(e)) for every generator e
                for (size_t gamma = 0; gamma < res.terms[p].rank(); ++gamma) {
                    PolyVec lhs = res.diffs[p - i - 1].apply(lift.comps[p][gamma]);
                    PolyVec dcol = res.diffs[p - 1].column(gamma);
                    PolyVec rhs = res.terms[p - 1 - i].zero_elem();
                    for (size_t b = 0; b < dcol.size(); ++b) {
                        if (dcol[b].is_zero()) continue;
                        for (size_t r = 0; r < rhs.size(); ++r) {
                            if (lift.comps[p - 1][b][r].is_zero()) continue;
                            rhs[r] += A.mul(dcol[b], lift.comps[p - 1][b][r]);
                        }
                    }
                    for (size_t r = 0; r < rhs.size(); ++r) {
                        NcPoly want = rhs[r].is_zero() ? rhs[r] : rhs[r].scaled(sign);
                        CHECK(((lhs[r].is_zero() && want.is_zero()) || lhs[r] == want));
                    }
                }
            }
        }
    }
}
}

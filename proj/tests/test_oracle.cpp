#include <doctest.h>

#include "detsolve/oracle.hpp"

using namespace detsolve;

namespace {

// expand string-free: build tiny systems directly
Slp xy_and_x_xminus1() {
    // (x1*x2, x1*(x1-1))
    SlpBuilder b(2);
    uint32_t x1 = b.input(0), x2 = b.input(1);
    b.output(b.mul(x1, x2));
    b.output(b.mul(x1, b.sub(x1, b.constant(1))));
    return b.take();
}

}  // namespace

TEST_CASE("monomial basis sizes are binomials") {
    CHECK(MonomialBasis::up_to(2, 3).size() == 10);
    CHECK(MonomialBasis::up_to(3, 2).size() == 10);
    CHECK(MonomialBasis::up_to(1, 5).size() == 6);
}

TEST_CASE("local multiplicity examples") {
    FpField F(101);
    MPolyRing R(F, 2);
    MPolyE x1 = R.var(0), x2 = R.var(1);
    SUBCASE("(X1, X2) is simple") {
        CHECK(local_multiplicity(F, {x1, x2}, 2, 2) == 1);
        CHECK(local_multiplicity(F, {x1, x2}, 2, 3) == 1);
    }
    SUBCASE("(X1^2, X2) has multiplicity 2") {
        CHECK(local_multiplicity(F, {R.mul(x1, x1), x2}, 2, 3) == 2);
        CHECK(local_multiplicity(F, {R.mul(x1, x1), x2}, 2, 4) == 2);
    }
    SUBCASE("(X1^2, X1 X2, X2^2) has multiplicity 3") {
        CHECK(local_multiplicity(F, {R.mul(x1, x1), R.mul(x1, x2), R.mul(x2, x2)}, 2,
                                 3) == 3);
    }
    SUBCASE("non-isolated origin keeps growing") {
        // V(x1 x2, x1(x1-1)) contains the line x1 = 0
        MPolyE f1 = R.mul(x1, x2);
        MPolyE f2 = R.mul(x1, R.sub(x1, R.one()));
        size_t prev = 0;
        for (uint32_t k = 1; k <= 6; ++k) {
            size_t cur = local_multiplicity(F, {f1, f2}, 2, k);
            CHECK(cur > prev);
            prev = cur;
        }
    }
}

TEST_CASE("expand_slp expands") {
    FpField F(101);
    SlpBuilder b(2);
    uint32_t x1 = b.input(0), x2 = b.input(1);
    b.output(b.mul(b.add(x1, x2), b.sub(x1, x2)));  // x1^2 - x2^2
    auto polys = expand_slp(F, b.take());
    REQUIRE(polys.size() == 1);
    CHECK(polys[0].terms.size() == 2);
    CHECK(polys[0].terms.at({2, 0}) == F.one());
    CHECK(polys[0].terms.at({0, 2}) == F.from_int(-1));
}

TEST_CASE("variety enumeration over F_11") {
    FpField F(11);
    SUBCASE("line union isolated point") {
        // 1x2 matrix (x1*x2, x1*(x1-1)): rank < 1 means both vanish
        Slp no_g;
        no_g.n_inputs = 2;
        auto pts = enumerate_variety(F, xy_and_x_xminus1(), 1, 2, no_g);
        // x1 = 0 (11 points on the line) plus (1, 0)
        CHECK(pts.size() == 12);
    }
    SUBCASE("with a side equation") {
        SlpBuilder g(2);
        g.output(g.sub(g.input(1), g.constant(3)));  // x2 = 3
        auto pts = enumerate_variety(F, xy_and_x_xminus1(), 1, 2, g.take());
        REQUIRE(pts.size() == 1);
        CHECK(pts[0][0] == F.zero());
        CHECK(pts[0][1] == F.from_int(3));
    }
    SUBCASE("budget guard") {
        FpField big(1009);
        SlpBuilder b(3);
        for (int i = 0; i < 3; ++i) b.output(b.input(static_cast<uint32_t>(i)));
        Slp no_g;
        no_g.n_inputs = 3;
        CHECK_THROWS_AS(enumerate_variety(big, b.take(), 1, 3, no_g, 1000000),
                        TooLargeError);
    }
}

#include <doctest.h>

#include <algorithm>
#include <set>

#include "detsolve/zdp.hpp"

using namespace detsolve;

namespace {

UPoly P(const FpField& F, std::initializer_list<int64_t> cs) {
    UPoly r;
    for (int64_t c : cs) r.push_back(F.from_int(c));
    poly_trim(r);
    return r;
}

Slp coordinate_system(std::initializer_list<int64_t> target) {
    // outputs (x_i - target_i)
    SlpBuilder b(static_cast<uint32_t>(target.size()));
    uint32_t i = 0;
    for (int64_t t : target) b.output(b.sub(b.input(i++), b.constant(t)));
    return b.take();
}

std::set<std::vector<uint64_t>> point_set(const FpField& F, const ZeroDimParam& r) {
    std::set<std::vector<uint64_t>> s;
    for (const auto& pt : zdp_rational_points(F, r)) {
        std::vector<uint64_t> raw;
        for (Fp c : pt) raw.push_back(c.v);
        s.insert(raw);
    }
    return s;
}

}  // namespace

TEST_CASE("from_points on a single point") {
    FpField F(101);
    auto r = zdp_from_points(F, {{F.from_int(1), F.from_int(2)}}, {F.one(), F.zero()});
    CHECK(r.w == P(F, {-1, 1}));
    CHECK(r.v[0] == P(F, {1}));
    CHECK(r.v[1] == P(F, {2}));
    CHECK(zdp_invariants_hold(F, r));
}

TEST_CASE("from_points on {1,2} with lambda = X1") {
    FpField F(101);
    auto r = zdp_from_points(F, {{F.from_int(1)}, {F.from_int(2)}}, {F.one()});
    CHECK(r.w == P(F, {2, -3, 1}));
    // v1(1) = 1*w'(1) = -1, v1(2) = 2*w'(2) = 2, so v1 = 3Y - 4
    CHECK(r.v[0] == P(F, {-4, 3}));
    CHECK(zdp_invariants_hold(F, r));
}

TEST_CASE("from_points of the empty set") {
    FpField F(101);
    auto r = zdp_from_points(F, {}, {F.one(), F.zero()});
    CHECK(r.w == P(F, {1}));
    CHECK(r.count() == 0);
    CHECK(zdp_invariants_hold(F, r));
}

TEST_CASE("from_points rejects colliding lambda values") {
    FpField F(101);
    CHECK_THROWS_AS(zdp_from_points(F, {{F.one(), F.one()}, {F.one(), F.from_int(2)}},
                                    {F.one(), F.zero()}),
                    NotSeparatingError);
}

TEST_CASE("residual examples") {
    FpField F(101);
    auto r = zdp_from_points(F, {{F.from_int(1), F.from_int(2)}}, {F.one(), F.zero()});
    SUBCASE("vanishing system") {
        CHECK(zdp_residual_is_zero(F, r, coordinate_system({1, 2})));
    }
    SUBCASE("non-vanishing system") {
        SlpBuilder b(2);
        b.output(b.input(0));
        CHECK(!zdp_residual_is_zero(F, r, b.take()));
    }
    SUBCASE("conjugate roots of Y^2 - 2 satisfy X1^2 - 2") {
        ZeroDimParam rr;
        rr.w = P(F, {-2, 0, 1});
        // lambda = X1, so v1 = Y w' mod w = 2Y^2 mod w = 4
        rr.v = {P(F, {4})};
        rr.lambda = {F.one()};
        REQUIRE(zdp_invariants_hold(F, rr));
        SlpBuilder b(1);
        b.output(b.sub(b.mul(b.input(0), b.input(0)), b.constant(2)));
        CHECK(zdp_residual_is_zero(F, rr, b.take()));
    }
}

TEST_CASE("split examples") {
    FpField F(101);
    auto r = zdp_from_points(F, {{F.from_int(1)}, {F.from_int(-1)}}, {F.one()});
    REQUIRE(r.w == P(F, {-1, 0, 1}));
    SUBCASE("split along Y - 1") {
        auto parts = zdp_split(F, r, P(F, {-1, 1}));
        REQUIRE(parts.size() == 2);
        CHECK(parts[0].w == P(F, {-1, 1}));
        CHECK(parts[1].w == P(F, {1, 1}));
        CHECK(zdp_invariants_hold(F, parts[0]));
        CHECK(zdp_invariants_hold(F, parts[1]));
        CHECK(parts[0].v[0] == P(F, {1}));
        CHECK(parts[1].v[0] == P(F, {-1}));
    }
    SUBCASE("coprime g leaves r alone") {
        auto parts = zdp_split(F, r, P(F, {-5, 1}));
        REQUIRE(parts.size() == 1);
        CHECK(parts[0].w == r.w);
    }
}

TEST_CASE("crt_combine examples and split round-trip") {
    FpField F(101);
    auto r1 = zdp_from_points(F, {{F.from_int(1), F.from_int(7)}}, {F.one(), F.zero()});
    auto r2 = zdp_from_points(F, {{F.from_int(2), F.from_int(9)}}, {F.one(), F.zero()});
    auto c = zdp_crt_combine(F, {r1, r2});
    CHECK(c.count() == 2);
    CHECK(zdp_invariants_hold(F, c));
    CHECK(point_set(F, c) ==
          std::set<std::vector<uint64_t>>{{1, 7}, {2, 9}});

    SUBCASE("combine of one piece is itself") {
        auto c1 = zdp_crt_combine(F, {r1});
        CHECK(c1.w == r1.w);
        CHECK(c1.v == r1.v);
    }
    SUBCASE("split then combine preserves the point set") {
        auto parts = zdp_split(F, c, P(F, {-1, 1}));
        REQUIRE(parts.size() == 2);
        auto back = zdp_crt_combine(F, parts);
        CHECK(point_set(F, back) == point_set(F, c));
    }
    SUBCASE("lambda mismatch is rejected") {
        auto r3 = zdp_from_points(F, {{F.from_int(3), F.from_int(1)}},
                                  {F.one(), F.one()});
        CHECK_THROWS_AS(zdp_crt_combine(F, {r1, r3}), LambdaMismatchError);
    }
    SUBCASE("shared roots are rejected") {
        CHECK_THROWS_AS(zdp_crt_combine(F, {r1, r1}), NotCoprimeError);
    }
}

TEST_CASE("combine of k random singletons has deg w = k and zero residual") {
    FpField F(101);
    Rng rng(2024);
    for (int it = 0; it < 200; ++it) {
        size_t k = 1 + rng.next_u64() % 5;
        std::vector<Fp> lambda = {rng.next_fp_nonzero(F), rng.next_fp_nonzero(F)};
        std::set<std::vector<uint64_t>> want;
        std::vector<ZeroDimParam> singles;
        std::set<uint64_t> lvals;
        bool sep = true;
        for (size_t i = 0; i < k; ++i) {
            std::vector<Fp> pt = {rng.next_fp(F), rng.next_fp(F)};
            Fp lv = F.add(F.mul(lambda[0], pt[0]), F.mul(lambda[1], pt[1]));
            if (!lvals.insert(lv.v).second) {
                sep = false;
                break;
            }
            want.insert({pt[0].v, pt[1].v});
            singles.push_back(zdp_from_points(F, {pt}, lambda));
        }
        if (!sep) continue;
        auto c = zdp_crt_combine(F, singles);
        CHECK(c.count() == want.size());
        CHECK(point_set(F, c) == want);
    }
}

TEST_CASE("reparametrize keeps the point set") {
    FpField F(101);
    std::vector<std::vector<Fp>> pts = {{F.from_int(3), F.from_int(4)},
                                        {F.from_int(5), F.from_int(6)},
                                        {F.from_int(7), F.from_int(2)}};
    auto r = zdp_from_points(F, pts, {F.one(), F.zero()});
    auto r2 = zdp_reparametrize(F, r, {F.from_int(2), F.from_int(11)});
    CHECK(zdp_invariants_hold(F, r2));
    CHECK(point_set(F, r2) == point_set(F, r));
    CHECK(r2.lambda[0] == F.from_int(2));
    SUBCASE("non-separating form is rejected") {
        // lambda = 0 collapses all three points
        CHECK_THROWS_AS(zdp_reparametrize(F, r, {F.zero(), F.zero()}),
                        NotSeparatingError);
    }
}

TEST_CASE("from_points round-trips point extraction for up to 8 points") {
    FpField F(1009);
    Rng rng(31);
    for (int it = 0; it < 100; ++it) {
        size_t k = 1 + rng.next_u64() % 8;
        std::set<std::vector<uint64_t>> want;
        std::vector<std::vector<Fp>> pts;
        while (pts.size() < k) {
            std::vector<Fp> pt = {rng.next_fp(F), rng.next_fp(F)};
            if (want.insert({pt[0].v, pt[1].v}).second) pts.push_back(pt);
        }
        std::vector<Fp> lambda = {rng.next_fp_nonzero(F), rng.next_fp_nonzero(F)};
        ZeroDimParam r;
        try {
            r = zdp_from_points(F, pts, lambda);
        } catch (const NotSeparatingError&) {
            continue;
        }
        CHECK(point_set(F, r) == want);
    }
}

#include <doctest.h>

#include "detsolve/rings.hpp"
#include "detsolve/upoly.hpp"

using namespace detsolve;

namespace {

UPoly P(const FpField& F, std::initializer_list<int64_t> cs) {
    UPoly r;
    for (int64_t c : cs) r.push_back(F.from_int(c));
    poly_trim(r);
    return r;
}

UPoly random_poly(const FpField& F, Rng& rng, int deg) {
    UPoly r;
    for (int i = 0; i <= deg; ++i) r.push_back(rng.next_fp(F));
    if (r.back().v == 0) r.back() = F.one();
    return r;
}

}  // namespace

TEST_CASE("divrem and gcd examples") {
    FpField F(101);
    // gcd(Y^2-1, Y-1) = Y-1
    CHECK(poly_gcd(F, P(F, {-1, 0, 1}), P(F, {-1, 1})) == P(F, {-1, 1}));
    // gcd(Y, 1) = 1
    CHECK(poly_gcd(F, P(F, {0, 1}), P(F, {1})) == P(F, {1}));
    // gcd((Y-2)^2 (Y-3), (Y-2)(Y-5)) = Y-2
    UPoly a = poly_mul(F, poly_mul(F, P(F, {-2, 1}), P(F, {-2, 1})), P(F, {-3, 1}));
    UPoly b = poly_mul(F, P(F, {-2, 1}), P(F, {-5, 1}));
    CHECK(poly_gcd(F, a, b) == P(F, {-2, 1}));
}

TEST_CASE("squarefree part") {
    FpField F(103);  // 103 = 3 mod 4
    CHECK(poly_squarefree_part(F, poly_mul(F, P(F, {-1, 1}), P(F, {-1, 1}))) ==
          P(F, {-1, 1}));
    CHECK(poly_squarefree_part(F, P(F, {1, 0, 1})) == P(F, {1, 0, 1}));
    CHECK(poly_squarefree_part(F, P(F, {0, 0, 0, 1})) == P(F, {0, 1}));
}

TEST_CASE("squarefree decomposition recombines") {
    FpField F;
    Rng rng(5);
    for (int it = 0; it < 50; ++it) {
        UPoly f = poly_one(F);
        int nf = 1 + static_cast<int>(rng.next_u64() % 3);
        for (int i = 0; i < nf; ++i) {
            UPoly lin = P(F, {static_cast<int64_t>(rng.next_u64() % 50), 1});
            int mult = 1 + static_cast<int>(rng.next_u64() % 3);
            for (int j = 0; j < mult; ++j) f = poly_mul(F, f, lin);
        }
        UPoly back = poly_one(F);
        for (auto& [s, m] : poly_squarefree_decomposition(F, f))
            for (int j = 0; j < m; ++j) back = poly_mul(F, back, s);
        CHECK(back == poly_make_monic(F, f));
    }
}

TEST_CASE("crt_pair examples") {
    FpField F(101);
    SUBCASE("two linear moduli give the interpolating identity") {
        auto [w, r] = crt_pair(F, P(F, {-1, 1}), {P(F, {1})}, P(F, {-2, 1}), {P(F, {2})});
        CHECK(w == P(F, {2, -3, 1}));
        CHECK(r[0] == P(F, {0, 1}));  // Y itself: Y=1 at 1, Y=2 at 2
    }
    SUBCASE("combining with modulus 1 is the identity") {
        auto [w, r] = crt_pair(F, P(F, {-1, 1}), {P(F, {7})}, P(F, {1}), {UPoly{}});
        CHECK(w == P(F, {-1, 1}));
        CHECK(r[0] == P(F, {7}));
    }
    SUBCASE("three-way fold matches direct evaluation") {
        UPoly w1 = P(F, {-1, 1}), w2 = P(F, {-2, 1}), w3 = P(F, {-3, 1});
        auto [w12, r12] = crt_pair(F, w1, {P(F, {10})}, w2, {P(F, {20})});
        auto [w, r] = crt_pair(F, w12, r12, w3, {P(F, {30})});
        CHECK(poly_deg(w) == 3);
        CHECK(poly_eval(F, r[0], F.from_int(1)) == F.from_int(10));
        CHECK(poly_eval(F, r[0], F.from_int(2)) == F.from_int(20));
        CHECK(poly_eval(F, r[0], F.from_int(3)) == F.from_int(30));
    }
    SUBCASE("not coprime") {
        CHECK_THROWS_AS(crt_pair(F, P(F, {-1, 1}), {UPoly{}}, P(F, {-1, 1}), {UPoly{}}),
                        NotCoprimeError);
    }
}

TEST_CASE("crt then reduction is the identity on random coprime moduli") {
    FpField F;
    Rng rng(99);
    for (int it = 0; it < 1000; ++it) {
        UPoly wa = poly_make_monic(F, random_poly(F, rng, 1 + rng.next_u64() % 3));
        UPoly wb = poly_make_monic(F, random_poly(F, rng, 1 + rng.next_u64() % 3));
        if (poly_deg(poly_gcd(F, wa, wb)) != 0) continue;
        UPoly ra = poly_mod(F, random_poly(F, rng, 4), wa);
        UPoly rb = poly_mod(F, random_poly(F, rng, 4), wb);
        auto [w, r] = crt_pair(F, wa, {ra}, wb, {rb});
        CHECK(poly_mod(F, r[0], wa) == ra);
        CHECK(poly_mod(F, r[0], wb) == rb);
        CHECK(w == poly_mul(F, wa, wb));
    }
}

TEST_CASE("rational reconstruction examples") {
    FpField F(101);
    SUBCASE("geometric series") {
        std::vector<Fp> f = {F.one(), F.one(), F.one(), F.one()};  // 1+T+T^2+T^3
        auto r = rational_reconstruct(F, f, 2);
        REQUIRE(r.has_value());
        CHECK(r->first == P(F, {1}));
        CHECK(r->second == P(F, {1, -1}));  // 1 - T
    }
    SUBCASE("constant") {
        std::vector<Fp> f = {F.from_int(3), F.zero()};
        auto r = rational_reconstruct(F, f, 1);
        REQUIRE(r.has_value());
        CHECK(r->first == P(F, {3}));
        CHECK(r->second == P(F, {1}));
    }
    SUBCASE("plain T") {
        std::vector<Fp> f = {F.zero(), F.one(), F.zero(), F.zero()};
        auto r = rational_reconstruct(F, f, 2);
        REQUIRE(r.has_value());
        CHECK(r->first == P(F, {0, 1}));
        CHECK(r->second == P(F, {1}));
    }
}

TEST_CASE("rational reconstruction round-trips random fractions") {
    FpField F;
    Rng rng(4242);
    int done = 0;
    for (int it = 0; it < 1000; ++it) {
        size_t e = 1 + rng.next_u64() % 4;
        UPoly num = random_poly(F, rng, static_cast<int>(rng.next_u64() % (e + 1)));
        UPoly den = random_poly(F, rng, static_cast<int>(rng.next_u64() % (e + 1)));
        den[0] = F.one();
        if (poly_deg(poly_gcd(F, num, den)) != 0) continue;
        // recovering an unknown (<=e, <=e) split needs 2e+1 terms; the
        // lifting pipeline always provides the extra coefficient
        size_t prec = 2 * e + 1;
        SeriesRing<FpField> S(F, prec);
        auto numS = num, denS = den;
        numS.resize(prec, F.zero());
        denS.resize(prec, F.zero());
        auto series = S.mul(numS, S.inv(denS));
        series.resize(prec, F.zero());
        auto r = rational_reconstruct(F, series, e);
        REQUIRE(r.has_value());
        CHECK(r->first == num);
        CHECK(r->second == den);
        ++done;
    }
    CHECK(done > 500);
}

TEST_CASE("poly_from_power_sums examples") {
    FpField F(101);
    SUBCASE("single root 5") {
        auto w = poly_from_power_sums(F, std::vector<Fp>{F.from_int(5)}, 1);
        CHECK(UPoly(w.begin(), w.end()) == P(F, {-5, 1}));
    }
    SUBCASE("roots 1 and 2") {
        auto w = poly_from_power_sums(F, {F.from_int(3), F.from_int(5)}, 2);
        CHECK(UPoly(w.begin(), w.end()) == P(F, {2, -3, 1}));
    }
    SUBCASE("all power sums zero") {
        auto w = poly_from_power_sums(F, {F.zero(), F.zero()}, 2);
        CHECK(UPoly(w.begin(), w.end()) == P(F, {0, 0, 1}));
    }
}

TEST_CASE("power sums invert poly_from_power_sums on random root multisets") {
    FpField F;
    Rng rng(31337);
    for (int it = 0; it < 1000; ++it) {
        size_t d = 1 + rng.next_u64() % 10;
        std::vector<Fp> roots(d);
        for (auto& r : roots) r = F.from_uint(rng.next_u64() % 50);
        std::vector<Fp> p(d, F.zero());
        for (size_t k = 1; k <= d; ++k)
            for (Fp r : roots) p[k - 1] = F.add(p[k - 1], F.pow(r, k));
        auto w = poly_from_power_sums(F, p, d);
        UPoly expect = poly_one(F);
        for (Fp r : roots) expect = poly_mul(F, expect, UPoly{F.neg(r), F.one()});
        CHECK(UPoly(w.begin(), w.end()) == expect);
        // and power_sums_of returns the sums again
        auto ps = power_sums_of(F, expect, d);
        for (size_t k = 1; k < d; ++k) CHECK(ps[k] == p[k - 1]);
    }
}

TEST_CASE("trace_mod sums over roots") {
    FpField F(101);
    // w = (Y-2)(Y-3), trace of a(Y) = a(2)+a(3)
    UPoly w = poly_mul(F, P(F, {-2, 1}), P(F, {-3, 1}));
    auto ps = power_sums_of(F, w, 2);
    UPoly a = P(F, {7, 5});
    CHECK(trace_mod(F, a, ps) ==
          F.add(poly_eval(F, a, F.from_int(2)), poly_eval(F, a, F.from_int(3))));
}

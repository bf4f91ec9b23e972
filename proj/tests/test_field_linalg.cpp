#include <doctest.h>

#include "detsolve/field.hpp"
#include "detsolve/linalg.hpp"

using namespace detsolve;

TEST_CASE("field basics over F_7") {
    FpField F(7);
    CHECK(F.inv(Fp{2}) == Fp{4});
    CHECK(F.inv(Fp{1}) == Fp{1});
    CHECK(F.inv(Fp{6}) == Fp{6});  // (-1)^2 = 1
    CHECK_THROWS_AS(F.inv(Fp{0}), ZeroInverseError);
    CHECK(F.from_int(-3) == Fp{4});
    CHECK(F.from_int(-7) == Fp{0});
}

TEST_CASE("default prime passes the primality check") {
    FpField F;  // throws if the hardcoded default were composite
    CHECK(F.prime() == kDefaultPrime);
    CHECK(FpField::is_prime(kDefaultPrime));
    CHECK(!FpField::is_prime(kDefaultPrime - 2));
    CHECK_THROWS(FpField(1ULL << 40));
}

TEST_CASE("inv is multiplicative on 1000 random pairs") {
    FpField F;
    Rng rng(12345);
    for (int i = 0; i < 1000; ++i) {
        Fp a = rng.next_fp_nonzero(F);
        Fp b = rng.next_fp_nonzero(F);
        CHECK(F.inv(F.mul(a, b)) == F.mul(F.inv(a), F.inv(b)));
        CHECK(F.mul(a, F.inv(a)) == F.one());
    }
}

TEST_CASE("counter rng is deterministic and fork gives independent streams") {
    Rng a(42), b(42);
    for (int i = 0; i < 16; ++i) CHECK(a.next_u64() == b.next_u64());
    Rng c = Rng(42).fork(1), d = Rng(42).fork(2);
    CHECK(c.next_u64() != d.next_u64());
}

TEST_CASE("solve_linear examples") {
    FpField F(7);
    SUBCASE("identity") {
        Mat<Fp> A(2, 2, F.zero());
        A.at(0, 0) = A.at(1, 1) = F.one();
        auto r = solve_linear(F, A, {Fp{3}, Fp{5}});
        REQUIRE(r.status == SolveStatus::Unique);
        CHECK(r.x == std::vector<Fp>{Fp{3}, Fp{5}});
    }
    SUBCASE("inconsistent") {
        Mat<Fp> A(2, 2, F.one());
        auto r = solve_linear(F, A, {Fp{0}, Fp{1}});
        CHECK(r.status == SolveStatus::Inconsistent);
    }
    SUBCASE("diagonal over F_7") {
        Mat<Fp> A(2, 2, F.zero());
        A.at(0, 0) = Fp{2};
        A.at(1, 1) = Fp{3};
        auto r = solve_linear(F, A, {F.one(), F.one()});
        REQUIRE(r.status == SolveStatus::Unique);
        CHECK(r.x == std::vector<Fp>{Fp{4}, Fp{5}});
        CHECK(mat_vec(F, A, r.x) == std::vector<Fp>{F.one(), F.one()});
    }
    SUBCASE("underdetermined") {
        Mat<Fp> A(1, 2, F.one());
        auto r = solve_linear(F, A, {Fp{1}});
        CHECK(r.status == SolveStatus::Underdetermined);
    }
}

TEST_CASE("nullspace examples") {
    FpField F(101);
    SUBCASE("zero matrix") {
        Mat<Fp> A(2, 2, F.zero());
        CHECK(nullspace(F, A).size() == 2);
    }
    SUBCASE("identity") {
        Mat<Fp> A(3, 3, F.zero());
        for (int i = 0; i < 3; ++i) A.at(i, i) = F.one();
        CHECK(nullspace(F, A).empty());
    }
    SUBCASE("rank one row") {
        Mat<Fp> A(1, 2, F.one());
        auto ns = nullspace(F, A);
        REQUIRE(ns.size() == 1);
        CHECK(F.add(ns[0][0], ns[0][1]) == F.zero());
        CHECK((ns[0][0] != F.zero() || ns[0][1] != F.zero()));
    }
}

TEST_CASE("rank examples") {
    FpField F(101);
    Mat<Fp> I(4, 4, F.zero());
    for (int i = 0; i < 4; ++i) I.at(i, i) = F.one();
    CHECK(rank(F, I) == 4);
    CHECK(rank(F, Mat<Fp>(3, 5, F.zero())) == 0);
    Mat<Fp> A(2, 2, F.zero());
    A.at(0, 0) = Fp{1};
    A.at(0, 1) = Fp{2};
    A.at(1, 0) = Fp{2};
    A.at(1, 1) = Fp{4};
    CHECK(rank(F, A) == 1);
}

TEST_CASE("random matrices: rank + nullity = n, solve round-trips") {
    FpField F;
    Rng rng(777);
    for (int iter = 0; iter < 1000; ++iter) {
        size_t rows = 1 + rng.next_u64() % 5, cols = 1 + rng.next_u64() % 5;
        Mat<Fp> A(rows, cols, F.zero());
        for (auto& e : A.a) e = (rng.next_u64() % 3 == 0) ? F.zero() : rng.next_fp(F);
        CHECK(rank(F, A) + nullspace(F, A).size() == cols);

        std::vector<Fp> x(cols);
        for (auto& e : x) e = rng.next_fp(F);
        std::vector<Fp> b = mat_vec(F, A, x);
        auto r = solve_linear(F, A, b);
        REQUIRE(r.status != SolveStatus::Inconsistent);
        if (r.status == SolveStatus::Unique) CHECK(mat_vec(F, A, r.x) == b);
        for (const auto& v : nullspace(F, A)) {
            auto z = mat_vec(F, A, v);
            for (Fp e : z) CHECK(e == F.zero());
        }
    }
}

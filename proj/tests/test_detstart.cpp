#include <doctest.h>

#include <set>

#include "detsolve/detstart.hpp"
#include "detsolve/oracle.hpp"
#include "detsolve/problem.hpp"

using namespace detsolve;

namespace {

DegreeProfile make_profile(size_t p, size_t q, size_t s,
                           std::vector<uint64_t> cdeg, std::vector<uint64_t> rdeg,
                           std::vector<uint64_t> gdeg = {}) {
    DegreeProfile pr;
    pr.p = p;
    pr.q = q;
    pr.s = s;
    pr.n = q - p + s + 1;
    pr.cdeg = std::move(cdeg);
    pr.rdeg = std::move(rdeg);
    pr.gdeg = std::move(gdeg);
    return pr;
}

}  // namespace

TEST_CASE("symmetric polynomial values from the worked examples") {
    CHECK(elem_sym(2, {2, 1, 5, 7}) == 73);
    CHECK(complete_sym(2, {2, 1, 5}) == 47);
    CHECK(complete_sym(2, {7, 7, 7}) == 294);
    CHECK(elem_sym(0, {3, 4}) == 1);
    CHECK(complete_sym(0, {9}) == 1);
    CHECK(elem_sym(3, {2, 2}) == 0);  // k > #values
}

TEST_CASE("bounds reproduce the two degree grids") {
    SUBCASE("column-light grid") {
        auto b = compute_bounds(make_profile(3, 4, 0, {2, 1, 5, 7}, {7, 7, 7}));
        CHECK(b.c == 73);
        CHECK(b.cprime == 294);
        CHECK(b.e == elem_sym(2, {3, 2, 6, 8}));
        CHECK(b.eprime == complete_sym(2, {8, 8, 8}));
    }
    SUBCASE("row-light grid") {
        auto b = compute_bounds(make_profile(3, 4, 0, {5, 5, 5, 5}, {2, 1, 5}));
        CHECK(b.cprime == 47);
        CHECK(b.c == elem_sym(2, {5, 5, 5, 5}));  // = 150
        CHECK(b.c == 150);
        CHECK(b.eprime == complete_sym(2, {3, 2, 6}));
    }
}

TEST_CASE("bounds on uniform and unit degrees") {
    SUBCASE("uniform degree d: c = binom(q, p-1) d^n for s = 0") {
        for (size_t p = 1; p <= 3; ++p)
            for (size_t q = p; q <= 5; ++q)
                for (uint64_t d = 1; d <= 3; ++d) {
                    size_t n = q - p + 1;
                    auto b = compute_bounds(make_profile(
                        p, q, 0, std::vector<uint64_t>(q, d),
                        std::vector<uint64_t>(p, d)));
                    BigInt binom = elem_sym(n, std::vector<uint64_t>(q, 1));
                    BigInt expect = binom;
                    for (size_t i = 0; i < n; ++i) expect *= d;
                    CHECK(b.c == expect);
                }
    }
    SUBCASE("all degrees 1, s = 0") {
        auto b = compute_bounds(make_profile(2, 4, 0, {1, 1, 1, 1}, {1, 1}));
        size_t n = 3;
        CHECK(b.c == elem_sym(n, {1, 1, 1, 1}));                  // binom(q, n)
        CHECK(b.e == elem_sym(n, {2, 2, 2, 2}));                  // binom(q,n) 2^n
        CHECK(b.e == b.c * (BigInt(1) << n));
    }
    SUBCASE("gamma factors multiply in") {
        auto b = compute_bounds(make_profile(1, 1, 1, {2}, {2}, {3}));
        CHECK(b.c == 3 * elem_sym(1, {2}));
        CHECK(b.cprime == 3 * complete_sym(1, {2}));
        CHECK(b.e == 4 * elem_sym(1, {3}));
        CHECK(b.eprime == 4 * complete_sym(1, {3}));
    }
}

TEST_CASE("profile validation") {
    CHECK_THROWS_AS(make_profile(2, 1, 0, {1}, {1, 1}).validate(),
                    InvalidProfileError);
    auto bad_n = make_profile(1, 2, 0, {1, 1}, {1});
    bad_n.n = 5;
    CHECK_THROWS_AS(bad_n.validate(), InvalidProfileError);
    CHECK_THROWS_AS(make_profile(1, 2, 0, {0, 1}, {1}).validate(),
                    InvalidProfileError);
    CHECK_THROWS_AS(make_profile(1, 1, 1, {1}, {1}, {0}).validate(),
                    InvalidProfileError);
    CHECK_NOTHROW(make_profile(2, 3, 0, {1, 2, 1}, {2, 2}).validate());
}

TEST_CASE("column start counts match the lemma") {
    FieldCtx ctx;
    SUBCASE("1x1 with degree 2 gives two start points") {
        auto spec = parse_problem("vars x1\nmatrix 1 1\nx1^2 - 3\n");
        Rng rng = ctx.rng(1);
        auto cs = build_column_start(ctx, spec.profile, spec.F, spec.G, rng);
        CHECK(cs.R0.count() == 2);
        CHECK(cs.L.size() == 1);
        CHECK(cs.L[0].size() == 2);
    }
    SUBCASE("1x2 all-linear gives one start point") {
        auto spec = parse_problem("vars x1 x2\nmatrix 1 2\nx1 + x2 | x1 - x2\n");
        Rng rng = ctx.rng(2);
        auto cs = build_column_start(ctx, spec.profile, spec.F, spec.G, rng);
        CHECK(cs.R0.count() == 1);
    }
    SUBCASE("2x3 all-linear gives three start points") {
        auto spec = parse_problem(
            "vars x1 x2\nmatrix 2 3\nx1 | x2 | x1 + x2\nx1 - x2 | x1 | x2\n");
        Rng rng = ctx.rng(3);
        auto cs = build_column_start(ctx, spec.profile, spec.F, spec.G, rng);
        CHECK(cs.R0.count() == 3);
        // B has s + binom(q, p) outputs
        CHECK(cs.B.outputs.size() == 3);
        CHECK(cs.B.n_inputs == 3);
    }
    SUBCASE("20 random profiles have exactly c start points") {
        Rng meta(99);
        int checked = 0;
        for (int it = 0; checked < 20 && it < 40; ++it) {
            size_t p = 1 + meta.next_u64() % 3;
            size_t q = p + meta.next_u64() % (6 - p);
            size_t s = meta.next_u64() % 2;
            size_t n = q - p + s + 1;
            std::vector<uint64_t> cdeg(q), rdeg(p, 1), gdeg(s);
            for (auto& d : cdeg) d = 1 + meta.next_u64() % 3;
            for (auto& d : gdeg) d = 1 + meta.next_u64() % 3;
            for (size_t i = 0; i < p; ++i)
                for (size_t j = 0; j < q; ++j) rdeg[i] = std::max(rdeg[i], cdeg[j]);
            auto prof = make_profile(p, q, s, cdeg, rdeg, gdeg);
            prof.validate();
            // generic F, G of the right degrees, as SLPs of random products
            Rng rng = meta.fork(static_cast<uint64_t>(it));
            SlpBuilder fb(static_cast<uint32_t>(n));
            std::vector<uint32_t> xs(n);
            for (size_t i = 0; i < n; ++i) xs[i] = fb.input(static_cast<uint32_t>(i));
            for (size_t i = 0; i < p; ++i)
                for (size_t j = 0; j < q; ++j) {
                    uint32_t acc = fb.constant(
                        static_cast<int64_t>(rng.next_u64() % 1000));
                    for (uint64_t k = 0; k < cdeg[j]; ++k) {
                        uint32_t lin = fb.constant(
                            static_cast<int64_t>(rng.next_u64() % 1000));
                        for (size_t l = 0; l < n; ++l)
                            lin = fb.add(lin,
                                         fb.mul(fb.constant(static_cast<int64_t>(
                                                    rng.next_u64() % 1000)),
                                                xs[l]));
                        acc = fb.mul(acc, lin);
                    }
                    fb.output(acc);
                }
            Slp Fslp = fb.take();
            SlpBuilder gb(static_cast<uint32_t>(n));
            std::vector<uint32_t> gxs(n);
            for (size_t i = 0; i < n; ++i) gxs[i] = gb.input(static_cast<uint32_t>(i));
            for (size_t i = 0; i < s; ++i) {
                uint32_t acc = gb.constant(1);
                for (uint64_t k = 0; k < gdeg[i]; ++k) {
                    uint32_t lin =
                        gb.constant(static_cast<int64_t>(rng.next_u64() % 1000));
                    for (size_t l = 0; l < n; ++l)
                        lin = gb.add(lin, gb.mul(gb.constant(static_cast<int64_t>(
                                                     rng.next_u64() % 1000)),
                                                 gxs[l]));
                    acc = gb.mul(acc, lin);
                }
                gb.output(acc);
            }
            Slp Gslp = gb.take();
            auto cs = build_column_start(ctx, prof, Fslp, Gslp, rng);
            CHECK(BigInt(cs.R0.count()) == compute_bounds(prof).c);
            ++checked;
        }
        CHECK(checked == 20);
    }
}

TEST_CASE("row start shapes") {
    FieldCtx ctx;
    Rng rng = ctx.rng(4);
    SUBCASE("p = q is diagonal") {
        auto spec = parse_problem("vars x1\nmatrix 2 2\nx1 | x1^2\nx1 | x1\n");
        auto rs = build_row_start(ctx, spec.profile, spec.F, spec.G, rng);
        CHECK(rs.N[0][1].empty());
        CHECK(rs.N[1][0].empty());
        CHECK(rs.N[0][0].size() == 2);  // rdeg_1 = 2
        CHECK(rs.N[1][1].size() == 1);
    }
    SUBCASE("p = 1 is a dense row with rdeg factors") {
        auto spec = parse_problem("vars x1 x2\nmatrix 1 2\nx1^2 | x2\n");
        auto rs = build_row_start(ctx, spec.profile, spec.F, spec.G, rng);
        REQUIRE(rs.N.size() == 1);
        CHECK(rs.N[0][0].size() == 2);
        CHECK(rs.N[0][1].size() == 2);
    }
}

TEST_CASE("row_degree_diagonal counts match S_k") {
    FieldCtx ctx;
    const FpField& F = ctx.field;
    SUBCASE("2x2 diagonal with unit degrees: 2 points") {
        Rng rng = ctx.rng(11);
        std::vector<std::vector<LinearFormProduct>> N(2,
                                                      std::vector<LinearFormProduct>(2));
        for (size_t i = 0; i < 2; ++i) {
            LinearForm f;
            f.c0 = rng.next_fp(F);
            f.coef = {rng.next_fp(F)};
            N[i][i] = {f};
        }
        std::vector<Fp> lambda = {rng.next_fp(F)};
        auto r = row_degree_diagonal(ctx, N, 1, lambda, rng);
        CHECK(r.count() == 2);
    }
    SUBCASE("1x2 with degree 2: S_2(2) = 4 points") {
        std::vector<std::vector<LinearFormProduct>> N(1);
        N[0].resize(2);
        Rng r2 = ctx.rng(13);
        for (size_t j = 0; j < 2; ++j) {
            for (int k = 0; k < 2; ++k) {
                LinearForm f;
                f.c0 = r2.next_fp(F);
                f.coef = {r2.next_fp(F), r2.next_fp(F)};
                N[0][j].push_back(f);
            }
        }
        std::vector<Fp> lambda = {r2.next_fp(F), r2.next_fp(F)};
        auto r = row_degree_diagonal(ctx, N, 2, lambda, r2);
        CHECK(r.count() == 4);
    }
    SUBCASE("2x3 with unit degrees: S_2(1,1) = 3 points") {
        Rng rng = ctx.rng(14);
        std::vector<std::vector<LinearFormProduct>> N(2,
                                                      std::vector<LinearFormProduct>(3));
        for (size_t i = 0; i < 2; ++i)
            for (size_t j : {i, size_t{2}}) {
                LinearForm f;
                f.c0 = rng.next_fp(F);
                f.coef = {rng.next_fp(F), rng.next_fp(F)};
                N[i][j] = {f};
            }
        std::vector<Fp> lambda = {rng.next_fp(F), rng.next_fp(F)};
        auto r = row_degree_diagonal(ctx, N, 2, lambda, rng);
        CHECK(r.count() == 3);
    }
    SUBCASE("20 seeded diagonal instances hit S_n exactly") {
        Rng meta(1234);
        for (int it = 0; it < 20; ++it) {
            size_t p = 1 + meta.next_u64() % 3;
            size_t n = 1 + meta.next_u64() % 3;
            size_t q = n + p - 1;
            std::vector<uint64_t> alpha(p);
            for (auto& a : alpha) a = 1 + meta.next_u64() % 3;
            Rng rng = meta.fork(static_cast<uint64_t>(it));
            std::vector<std::vector<LinearFormProduct>> N(
                p, std::vector<LinearFormProduct>(q));
            for (size_t i = 0; i < p; ++i) {
                auto draw = [&] {
                    LinearFormProduct prod(alpha[i]);
                    for (auto& f : prod) {
                        f.c0 = rng.next_fp(F);
                        f.coef.resize(n);
                        for (auto& c : f.coef) c = rng.next_fp(F);
                    }
                    return prod;
                };
                N[i][i] = draw();
                for (size_t j = p; j < q; ++j) N[i][j] = draw();
            }
            std::vector<Fp> lambda(n);
            for (auto& c : lambda) c = rng.next_fp(F);
            auto r = row_degree_diagonal(ctx, N, n, lambda, rng);
            CHECK(BigInt(r.count()) == complete_sym(n, alpha));
        }
    }
}

TEST_CASE("column_degree end-to-end") {
    FieldCtx ctx;
    SUBCASE("1x2 (x1^2, x2^2): multiplicity-4 origin is isolated, not simple") {
        auto spec = parse_problem("vars x1 x2\nmatrix 1 2\nx1^2 | x2^2\n");
        Rng rng = ctx.rng(21);
        SolveStats st;
        auto iso = column_degree(ctx, spec.F, spec.G, spec.profile, false, rng, &st);
        CHECK(iso.count() == 1);
        CHECK(zdp_contains_point(ctx.field, iso, {ctx.field.zero(), ctx.field.zero()}));
        Rng rng2 = ctx.rng(22);
        auto simp = column_degree(ctx, spec.F, spec.G, spec.profile, true, rng2, &st);
        CHECK(simp.count() == 0);
    }
    SUBCASE("embedded line: only the off-line point survives") {
        auto spec = parse_problem("vars x1 x2\nmatrix 1 2\nx1*x2 | x1*(x1 - 1)\n");
        Rng rng = ctx.rng(23);
        auto iso = column_degree(ctx, spec.F, spec.G, spec.profile, false, rng);
        CHECK(iso.count() == 1);
        CHECK(zdp_contains_point(ctx.field, iso, {ctx.field.one(), ctx.field.zero()}));
    }
}

TEST_CASE("column and row modes agree against the oracle over F_1009") {
    FieldCtx ctx(1009, 7);
    const FpField& F = ctx.field;
    auto spec = parse_problem(
        "vars x1 x2\nmatrix 2 3\nx1 + x2 + 1 | x1 - x2 | 2*x1 + 3\n"
        "x1 + 2*x2 | x2 + 5 | x1 + x2 + 7\n");
    Rng rc = ctx.rng(31), rr = ctx.rng(32);
    auto col = column_degree(ctx, spec.F, spec.G, spec.profile, false, rc);
    auto row = row_degree(ctx, spec.F, spec.G, spec.profile, false, rr);
    CHECK(col.count() == 3);
    CHECK(col.count() == row.count());

    // same point set over the closure: restate both through one form
    std::vector<Fp> shared = {F.from_int(3), F.from_int(17)};
    auto col2 = zdp_reparametrize(F, col, shared);
    auto row2 = zdp_reparametrize(F, row, shared);
    CHECK(col2.w == row2.w);
    CHECK(col2.v == row2.v);

    // rational output points are contained in the exhaustive scan
    auto oracle = enumerate_variety(F, spec.F, 2, 3, spec.G);
    std::set<std::vector<uint64_t>> oset;
    for (auto& pt : oracle) oset.insert({pt[0].v, pt[1].v});
    auto rat = zdp_rational_points(F, col);
    CHECK(rat.size() == oset.size());  // all scan points are isolated here
    for (auto& pt : rat) CHECK(oset.count({pt[0].v, pt[1].v}) == 1);
}

TEST_CASE("embedded line vs oracle: containment with a larger scan") {
    FieldCtx ctx(101, 5);
    const FpField& F = ctx.field;
    auto spec = parse_problem("vars x1 x2\nmatrix 1 2\nx1*x2 | x1*(x1 - 1)\n");
    Rng rng = ctx.rng(61);
    auto iso = column_degree(ctx, spec.F, spec.G, spec.profile, false, rng);
    REQUIRE(iso.count() == 1);
    auto oracle = enumerate_variety(F, spec.F, 1, 2, spec.G);
    CHECK(oracle.size() == 102);  // the line x1 = 0 plus (1, 0)
    std::set<std::vector<uint64_t>> oset;
    for (auto& pt : oracle) oset.insert({pt[0].v, pt[1].v});
    for (auto& pt : zdp_rational_points(F, iso))
        CHECK(oset.count({pt[0].v, pt[1].v}) == 1);
    CHECK(zdp_contains_point(F, iso, {F.one(), F.zero()}));
}

TEST_CASE("row_degree on a univariate quadratic") {
    FieldCtx ctx(1009, 3);
    auto spec = parse_problem("vars x1\nmatrix 1 1\nx1^2 - 3\n");
    Rng rng = ctx.rng(41);
    auto out = row_degree(ctx, spec.F, spec.G, spec.profile, false, rng);
    CHECK(out.count() == 2);
    // residual against the target
    CHECK(zdp_residual_is_zero(ctx.field, out, spec.F));
}

TEST_CASE("degree preservation of start minors on tiny instances") {
    // every p-minor of the start SLP has total degree sum of the column
    // degrees (column mode): expand symbolically and check
    FieldCtx ctx;
    auto spec = parse_problem("vars x1 x2\nmatrix 2 3\nx1^2 | x2 | x1\nx1 | x2 | x2\n");
    Rng rng = ctx.rng(51);
    auto cs = build_column_start(ctx, spec.profile, spec.F, spec.G, rng);
    Slp B0 = slp_specialize_input(cs.B, 0, 0);  // start system at T = 0
    auto polys = expand_slp(ctx.field, B0);
    auto subsets = column_subsets(3, 2);
    REQUIRE(polys.size() == subsets.size());
    for (size_t k = 0; k < subsets.size(); ++k) {
        uint64_t want = spec.profile.cdeg[subsets[k][0]] + spec.profile.cdeg[subsets[k][1]];
        uint32_t got = 0;
        for (const auto& [e, c] : polys[k].terms)
            got = std::max(got, e[0] + e[1]);
        CHECK(got == want);
    }
}

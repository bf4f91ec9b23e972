#include "detsolve/homotopy.hpp"

#include <deque>

namespace detsolve {

namespace {

// coefficient of a quotient-ring series, zero-padded
const UPoly& qcoeff(const QSeries& s, size_t t) {
    static const UPoly kZero;
    return t < s.size() ? s[t] : kZero;
}

QSeries embed_series(const FpSeries& fs) {
    QSeries r(fs.size());
    for (size_t t = 0; t < fs.size(); ++t)
        if (fs[t].v != 0) r[t] = UPoly{fs[t]};
    return r;
}

LiftedBranch reduce_branch(const FpField& F, const LiftedBranch& b, const UPoly& mod) {
    LiftedBranch r;
    r.w0 = mod;
    r.eq_subset = b.eq_subset;
    r.prec = b.prec;
    r.x.resize(b.x.size());
    for (size_t i = 0; i < b.x.size(); ++i) {
        r.x[i].resize(b.x[i].size());
        for (size_t t = 0; t < b.x[i].size(); ++t)
            r.x[i][t] = poly_mod(F, b.x[i][t], mod);
    }
    return r;
}

}  // namespace

std::vector<LiftedBranch> homotopy_decompose(const FpField& F, const ZeroDimParam& R0,
                                             const Slp& B) {
    const size_t n = B.n_inputs - 1;
    const size_t m = B.outputs.size();
    Slp jac = slp_jacobian(B);

    std::vector<LiftedBranch> out;
    std::deque<ZeroDimParam> work;
    work.push_back(R0);
    while (!work.empty()) {
        ZeroDimParam r = std::move(work.front());
        work.pop_front();
        if (r.empty()) continue;
        QuotRing A(F, r.w);
        try {
            std::vector<UPoly> xs = zdp_coordinates(F, r);
            std::vector<UPoly> in(n + 1);
            for (size_t i = 0; i < n; ++i) in[1 + i] = xs[i];
            auto vals = slp_eval(jac, A, std::span<const UPoly>(in));
            for (size_t j = 0; j < m; ++j)
                if (!A.is_zero(vals[j]))
                    throw RetryError(RetryError::Kind::ResidualNonzero,
                                     "start points do not cancel the start system");

            Mat<UPoly> J(m, n, A.zero());
            for (size_t i = 0; i < m; ++i)
                for (size_t j = 0; j < n; ++j)
                    J.at(i, j) = vals[m + i * (n + 1) + 1 + j];

            // column-by-column elimination with row selection; pivots must
            // be invertible on the whole branch, zero divisors split it
            std::vector<size_t> sel;
            std::vector<bool> used(m, false);
            for (size_t col = 0; col < n; ++col) {
                size_t piv = m;
                for (size_t i = 0; i < m; ++i) {
                    if (!used[i] && !A.is_zero(J.at(i, col))) {
                        piv = i;
                        break;
                    }
                }
                if (piv == m)
                    throw RetryError(RetryError::Kind::NoInvertibleMinor,
                                     "start Jacobian is singular on a branch");
                UPoly pinv = A.inv(J.at(piv, col));
                used[piv] = true;
                sel.push_back(piv);
                for (size_t i = 0; i < m; ++i) {
                    if (used[i] || A.is_zero(J.at(i, col))) continue;
                    UPoly f = A.mul(J.at(i, col), pinv);
                    for (size_t j = col; j < n; ++j)
                        J.at(i, j) = A.sub(J.at(i, j), A.mul(f, J.at(piv, j)));
                }
            }
            std::sort(sel.begin(), sel.end());

            LiftedBranch b;
            b.w0 = r.w;
            b.eq_subset = std::move(sel);
            b.prec = 1;
            b.x.resize(n);
            for (size_t i = 0; i < n; ++i) b.x[i] = QSeries{xs[i]};
            out.push_back(std::move(b));
        } catch (const ZeroDivisorError& zd) {
            for (auto& piece : zdp_split(F, r, zd.factor)) work.push_back(std::move(piece));
        }
    }
    return out;
}

void homotopy_lift(const FpField& F, LiftedBranch& br, const Slp& B,
                   size_t target_prec) {
    const size_t n = B.n_inputs - 1;
    QuotRing A(F, br.w0);
    Slp Bsel = slp_restrict_outputs(
        B, std::vector<size_t>(br.eq_subset.begin(), br.eq_subset.end()));
    Slp Bjac = slp_jacobian(Bsel);

    size_t cur = br.prec;
    while (cur < target_prec) {
        cur = std::min(2 * cur, target_prec);
        SeriesRing<QuotRing> S(A, cur);
        std::vector<QSeries> in(n + 1);
        in[0] = S.t();
        for (size_t i = 0; i < n; ++i) in[1 + i] = br.x[i];
        auto vals = slp_eval(Bjac, S, std::span<const QSeries>(in));

        Mat<QSeries> J(n, n, S.zero());
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) J.at(i, j) = vals[n + i * (n + 1) + 1 + j];
        std::vector<QSeries> rhs(vals.begin(), vals.begin() + n);
        auto sol = solve_linear(S, J, rhs);
        if (sol.status != SolveStatus::Unique)
            throw RetryError(RetryError::Kind::NoInvertibleMinor,
                             "Jacobian lost invertibility while lifting");
        for (size_t i = 0; i < n; ++i) br.x[i] = S.sub(br.x[i], sol.x[i]);
    }
    br.prec = cur;

    // every output of B must vanish on the lifted branch
    SeriesRing<QuotRing> S(A, target_prec);
    std::vector<QSeries> in(n + 1);
    in[0] = S.t();
    for (size_t i = 0; i < n; ++i) in[1 + i] = br.x[i];
    for (const QSeries& v : slp_eval(B, S, std::span<const QSeries>(in)))
        if (!S.is_zero(v))
            throw RetryError(RetryError::Kind::ResidualNonzero,
                             "a homotopy equation does not vanish on a lifted branch");
}

SeriesParam homotopy_merge_and_parametrize(const FpField& F, const ZeroDimParam& R0,
                                           const std::vector<LiftedBranch>& branches,
                                           size_t prec) {
    const size_t n = R0.n();
    const size_t d = R0.count();

    // CRT-merge the branch coordinates into K[Y]/<R0.w>, coefficient-wise
    UPoly curW;
    std::vector<UPoly> res;  // layout: i * prec + t
    bool first = true;
    for (const LiftedBranch& b : branches) {
        std::vector<UPoly> rb(n * prec);
        for (size_t i = 0; i < n; ++i)
            for (size_t t = 0; t < prec; ++t) rb[i * prec + t] = qcoeff(b.x[i], t);
        if (first) {
            curW = b.w0;
            res = std::move(rb);
            first = false;
        } else {
            auto [w, r] = crt_pair(F, curW, res, b.w0, rb);
            curW = std::move(w);
            res = std::move(r);
        }
    }
    if (curW != R0.w)
        throw std::logic_error("branch moduli do not multiply back to w0");

    QuotRing L(F, R0.w);
    SeriesRing<QuotRing> S(L, prec);
    std::vector<QSeries> X(n);
    for (size_t i = 0; i < n; ++i) {
        X[i].assign(prec, UPoly{});
        for (size_t t = 0; t < prec; ++t) X[i][t] = res[i * prec + t];
    }

    QSeries lam = S.zero();
    for (size_t i = 0; i < n; ++i) {
        QSeries scaled(X[i].size());
        for (size_t t = 0; t < X[i].size(); ++t)
            scaled[t] = poly_scale(F, R0.lambda[i], X[i][t]);
        lam = S.add(lam, scaled);
    }

    std::vector<Fp> psums = power_sums_of(F, R0.w, d);
    SeriesRing<FpField> C(F, prec);
    auto trace_series = [&](const QSeries& q) {
        FpSeries r(prec, F.zero());
        for (size_t t = 0; t < prec; ++t) r[t] = trace_mod(F, qcoeff(q, t), psums);
        return r;
    };

    std::vector<FpSeries> p(d);
    QSeries pw = S.one();
    for (size_t k = 1; k <= d; ++k) {
        pw = S.mul(pw, lam);
        p[k - 1] = trace_series(pw);
    }

    SeriesParam sp;
    sp.d = d;
    sp.w = poly_from_power_sums(C, p, d);

    // the fiber at T = 0 must be the start parametrization itself
    for (size_t j = 0; j <= d; ++j) {
        Fp c0 = sp.w[j].empty() ? F.zero() : sp.w[j][0];
        Fp expect = j < R0.w.size() ? R0.w[j] : F.zero();
        if (c0 != expect)
            throw RetryError(RetryError::Kind::Degenerate,
                             "moving parametrization does not specialize to the start");
    }

    sp.v.assign(n, std::vector<FpSeries>(d));
    QSeries horner = S.one();
    for (size_t j = d; j-- > 0;) {
        for (size_t i = 0; i < n; ++i)
            sp.v[i][j] = trace_series(S.mul(X[i], horner));
        if (j > 0) horner = S.add(S.mul(lam, horner), embed_series(sp.w[j]));
    }
    return sp;
}

RatParam homotopy_rational_reconstruct(const FpField& F, const SeriesParam& sp,
                                       uint64_t e) {
    auto reconstruct = [&](const FpSeries& s) -> RatCoeff {
        auto r = rational_reconstruct(F, s, static_cast<size_t>(e));
        if (!r)
            throw RetryError(RetryError::Kind::ReconstructFailed,
                             "no rational function matches a lifted coefficient");
        return {r->first, r->second};
    };
    RatParam rp;
    rp.d = sp.d;
    rp.w.resize(sp.d + 1);
    for (size_t j = 0; j < sp.d; ++j) rp.w[j] = reconstruct(sp.w[j]);
    rp.w[sp.d] = {poly_one(F), poly_one(F)};
    rp.v.assign(sp.v.size(), {});
    for (size_t i = 0; i < sp.v.size(); ++i) {
        rp.v[i].resize(sp.d);
        for (size_t j = 0; j < sp.d; ++j) rp.v[i][j] = reconstruct(sp.v[i][j]);
    }
    return rp;
}

ZeroDimParam homotopy_limit_at_one(const FpField& F, const RatParam& rp,
                                   const std::vector<Fp>& lambda) {
    const size_t d = rp.d;
    const size_t n = rp.v.size();
    if (d == 0) return zdp_empty(F, n, lambda);

    // common denominator, then joint primitive part: the specialization
    // argument needs the whole tuple (w, v_1, ..., v_n) cleared at once
    UPoly D = poly_one(F);
    auto fold_lcm = [&](const UPoly& den) {
        UPoly g = poly_gcd(F, D, den);
        D = poly_mul(F, D, *poly_div_exact(F, den, g));
    };
    for (const RatCoeff& c : rp.w) fold_lcm(c.den);
    for (const auto& vi : rp.v)
        for (const RatCoeff& c : vi) fold_lcm(c.den);

    std::vector<UPoly> P(d + 1);
    std::vector<std::vector<UPoly>> Q(n, std::vector<UPoly>(d));
    for (size_t j = 0; j <= d; ++j)
        P[j] = poly_mul(F, rp.w[j].num, *poly_div_exact(F, D, rp.w[j].den));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < d; ++j)
            Q[i][j] = poly_mul(F, rp.v[i][j].num, *poly_div_exact(F, D, rp.v[i][j].den));

    UPoly content;
    for (const UPoly& c : P) content = poly_gcd(F, content, c);
    for (const auto& vi : Q)
        for (const UPoly& c : vi) content = poly_gcd(F, content, c);
    if (poly_deg(content) > 0) {
        for (UPoly& c : P) c = *poly_div_exact(F, c, content);
        for (auto& vi : Q)
            for (UPoly& c : vi) c = *poly_div_exact(F, c, content);
    }

    Fp one = F.one();
    UPoly wbar(d + 1, F.zero());
    for (size_t j = 0; j <= d; ++j) wbar[j] = poly_eval(F, P[j], one);
    poly_trim(wbar);
    if (wbar.empty())
        throw RetryError(RetryError::Kind::Degenerate,
                         "cleared parametrization vanishes at T = 1");
    if (poly_deg(wbar) == 0) return zdp_empty(F, n, lambda);

    Fp sinv = F.inv(wbar.back());
    UPoly wbar_monic = poly_scale(F, sinv, wbar);
    std::vector<UPoly> Vbar(n);
    for (size_t i = 0; i < n; ++i) {
        UPoly vi(d, F.zero());
        for (size_t j = 0; j < d; ++j) vi[j] = poly_eval(F, Q[i][j], one);
        poly_trim(vi);
        Vbar[i] = poly_scale(F, sinv, vi);
    }

    // multiplicity strata: on S_m, paths collide m-fold onto each limit
    auto strata = poly_squarefree_decomposition(F, wbar_monic);
    UPoly w1 = poly_one(F);
    for (const auto& [S_m, m] : strata) w1 = poly_mul(F, w1, S_m);

    UPoly curW;
    std::vector<UPoly> xi;
    bool first = true;
    for (const auto& [S_m, m] : strata) {
        UPoly Sm_pow = poly_one(F);
        for (int t = 0; t < m - 1; ++t) Sm_pow = poly_mul(F, Sm_pow, S_m);
        UPoly Am = *poly_div_exact(F, wbar_monic, Sm_pow);
        UPoly denom = poly_scale(F, F.from_int(m), poly_mod(F, poly_derivative(F, Am), S_m));
        UPoly denom_inv;
        try {
            denom_inv = poly_invmod(F, denom, S_m);
        } catch (const ZeroDivisorError&) {
            throw RetryError(RetryError::Kind::Degenerate,
                             "stratum normalization is singular");
        }
        std::vector<UPoly> res(n);
        for (size_t i = 0; i < n; ++i) {
            auto Bi = poly_div_exact(F, Vbar[i], Sm_pow);
            if (!Bi)
                throw RetryError(RetryError::Kind::Degenerate,
                                 "numerator misses the expected collision order");
            res[i] = poly_mulmod(F, poly_mod(F, *Bi, S_m), denom_inv, S_m);
        }
        if (first) {
            curW = S_m;
            xi = std::move(res);
            first = false;
        } else {
            auto [w, r] = crt_pair(F, curW, xi, S_m, res);
            curW = std::move(w);
            xi = std::move(r);
        }
    }

    ZeroDimParam out;
    out.w = w1;
    out.lambda = lambda;
    out.v.resize(n);
    UPoly w1d = poly_derivative(F, w1);
    for (size_t i = 0; i < n; ++i) out.v[i] = poly_mulmod(F, xi[i], w1d, w1);
    if (!zdp_invariants_hold(F, out))
        throw RetryError(RetryError::Kind::Degenerate,
                         "limit parametrization violates the lambda relation");
    return out;
}

namespace {

// Dynamic-evaluation filter over the limit parametrization: keep the
// factors whose points pass `verdict`, splitting on zero divisors.
template <class Verdict>
ZeroDimParam filter_branches(const FpField& F, const ZeroDimParam& R1,
                             const Slp& target, Verdict verdict) {
    std::deque<ZeroDimParam> work;
    std::vector<ZeroDimParam> kept;
    work.push_back(R1);
    while (!work.empty()) {
        ZeroDimParam r = std::move(work.front());
        work.pop_front();
        if (r.empty()) continue;
        try {
            QuotRing A(F, r.w);
            std::vector<UPoly> xs = zdp_coordinates(F, r);
            for (const UPoly& val : slp_eval(target, A, std::span<const UPoly>(xs)))
                if (!A.is_zero(val))
                    throw RetryError(RetryError::Kind::Degenerate,
                                     "limit point fails the target equations");
            if (verdict(A, xs)) kept.push_back(std::move(r));
        } catch (const ZeroDivisorError& zd) {
            for (auto& piece : zdp_split(F, r, zd.factor))
                work.push_back(std::move(piece));
        }
    }
    if (kept.empty()) return zdp_empty(F, R1.n(), R1.lambda);
    return zdp_crt_combine(F, kept);
}

}  // namespace

ZeroDimParam homotopy_attempt(const FpField& F, const HomotopyInstance& inst,
                              bool simple_filter) {
    const size_t n = inst.n_vars();
    if (inst.R0.empty()) return inst.R0;
    if (inst.R0.count() > inst.c)
        throw RetryError(RetryError::Kind::CountMismatch,
                         "start cardinality exceeds the bound c");

    const size_t prec = 2 * static_cast<size_t>(inst.e) + 1;

    std::deque<LiftedBranch> todo;
    for (auto& b : homotopy_decompose(F, inst.R0, inst.B)) todo.push_back(std::move(b));
    std::vector<LiftedBranch> lifted;
    while (!todo.empty()) {
        LiftedBranch b = std::move(todo.front());
        todo.pop_front();
        try {
            homotopy_lift(F, b, inst.B, prec);
            lifted.push_back(std::move(b));
        } catch (const ZeroDivisorError& zd) {
            UPoly d = poly_gcd(F, b.w0, zd.factor);
            UPoly s = *poly_div_exact(F, b.w0, d);
            todo.push_back(reduce_branch(F, b, d));
            todo.push_back(reduce_branch(F, b, s));
        }
    }

    SeriesParam sp = homotopy_merge_and_parametrize(F, inst.R0, lifted, prec);
    RatParam rp = homotopy_rational_reconstruct(F, sp, inst.e);
    ZeroDimParam R1 = homotopy_limit_at_one(F, rp, inst.R0.lambda);
    if (R1.count() > inst.c)
        throw RetryError(RetryError::Kind::Degenerate,
                         "limit fiber exceeds the multiplicity bound");

    Slp B1 = slp_specialize_input(inst.B, 0, 1);
    ZeroDimParam result;
    if (simple_filter) {
        Slp jac = slp_jacobian(B1);
        const size_t m = B1.outputs.size();
        result = filter_branches(
            F, R1, B1, [&](const QuotRing& A, const std::vector<UPoly>& xs) {
                auto vals = slp_eval(jac, A, std::span<const UPoly>(xs));
                Mat<UPoly> J(m, n, A.zero());
                for (size_t i = 0; i < m; ++i)
                    for (size_t j = 0; j < n; ++j) J.at(i, j) = vals[m + i * n + j];
                return rank(A, std::move(J)) == n;
            });
    } else {
        Slp translated = slp_translate_inputs(B1);
        result = filter_branches(
            F, R1, B1, [&](const QuotRing& A, const std::vector<UPoly>& xs) {
                return dual_space_bounded(A, translated, xs,
                                          static_cast<size_t>(inst.c));
            });
    }

    if (!zdp_residual_is_zero(F, result, B1))
        throw RetryError(RetryError::Kind::Degenerate,
                         "filtered output fails the residual check");
    return result;
}

namespace {

ZeroDimParam run_with_lambda_retries(const FieldCtx& ctx, const HomotopyInstance& inst,
                                     Rng& rng, bool simple_filter) {
    HomotopyInstance cur = inst;
    int attempts = 0;
    for (; attempts <= ctx.retry_budget; ++attempts) {
        try {
            return homotopy_attempt(ctx.field, cur, simple_filter);
        } catch (const RetryError& e) {
            if (e.kind != RetryError::Kind::Degenerate &&
                e.kind != RetryError::Kind::ReconstructFailed)
                throw;
            // pick a fresh separating form and restate R0 through it
            bool replaced = false;
            for (int t = 0; t < ctx.retry_budget && !replaced; ++t) {
                std::vector<Fp> lam(inst.R0.n());
                for (auto& c : lam) c = rng.next_fp(ctx.field);
                try {
                    cur.R0 = zdp_reparametrize(ctx.field, inst.R0, std::move(lam));
                    replaced = true;
                } catch (const NotSeparatingError&) {
                }
            }
            if (!replaced) throw ExhaustedError(attempts);
        }
    }
    throw ExhaustedError(attempts);
}

}  // namespace

ZeroDimParam homotopy_run_isolated(const FieldCtx& ctx, const HomotopyInstance& inst,
                                   Rng& rng) {
    return run_with_lambda_retries(ctx, inst, rng, false);
}

bool jacobian_full_rank_everywhere(const FpField& F, const ZeroDimParam& r,
                                   const Slp& system) {
    const size_t n = system.n_inputs;
    const size_t m = system.outputs.size();
    Slp jac = slp_jacobian(system);
    std::deque<ZeroDimParam> work;
    work.push_back(r);
    while (!work.empty()) {
        ZeroDimParam piece = std::move(work.front());
        work.pop_front();
        if (piece.empty()) continue;
        try {
            QuotRing A(F, piece.w);
            std::vector<UPoly> xs = zdp_coordinates(F, piece);
            auto vals = slp_eval(jac, A, std::span<const UPoly>(xs));
            Mat<UPoly> J(m, n, A.zero());
            for (size_t i = 0; i < m; ++i)
                for (size_t j = 0; j < n; ++j) J.at(i, j) = vals[m + i * n + j];
            if (rank(A, std::move(J)) != n) return false;
        } catch (const ZeroDivisorError& zd) {
            for (auto& p : zdp_split(F, piece, zd.factor)) work.push_back(std::move(p));
        }
    }
    return true;
}

ZeroDimParam homotopy_run_simple(const FieldCtx& ctx, const HomotopyInstance& inst,
                                 Rng& rng) {
    return run_with_lambda_retries(ctx, inst, rng, true);
}

}  // namespace detsolve

#include "detsolve/detstart.hpp"

#include <algorithm>
#include <set>

namespace detsolve {

void DegreeProfile::validate() const {
    if (p == 0 || q == 0 || p > q)
        throw InvalidProfileError("matrix shape requires 1 <= p <= q");
    if (n != q - p + s + 1)
        throw InvalidProfileError("variable count must satisfy n = q - p + s + 1");
    if (cdeg.size() != q || rdeg.size() != p || gdeg.size() != s)
        throw InvalidProfileError("degree lists do not match the problem shape");
    for (size_t j = 0; j < q; ++j)
        if (cdeg[j] == 0)
            throw InvalidProfileError(
                "column " + std::to_string(j + 1) +
                " of F has degree 0; a constant column can be removed by row "
                "operations (discarding it and the row of its nonzero entry) "
                "before solving");
    for (size_t i = 0; i < p; ++i)
        if (rdeg[i] == 0)
            throw InvalidProfileError(
                "row " + std::to_string(i + 1) +
                " of F has degree 0; a constant row can be removed by column "
                "operations before solving");
    for (size_t i = 0; i < s; ++i)
        if (gdeg[i] == 0)
            throw InvalidProfileError(
                "side equation " + std::to_string(i + 1) +
                " is a constant: the system is either inconsistent or the "
                "equation can be dropped");
}

BigInt elem_sym(size_t k, const std::vector<uint64_t>& vals) {
    if (k > vals.size()) return 0;
    std::vector<BigInt> e(k + 1);
    e[0] = 1;
    for (uint64_t v : vals)
        for (size_t i = std::min(k, vals.size()); i >= 1; --i)
            e[i] += BigInt(v) * e[i - 1];
    return e[k];
}

BigInt complete_sym(size_t k, const std::vector<uint64_t>& vals) {
    if (vals.empty()) return k == 0 ? 1 : 0;
    std::vector<BigInt> h(k + 1);
    h[0] = 1;
    for (uint64_t v : vals)
        for (size_t i = 1; i <= k; ++i) h[i] += BigInt(v) * h[i - 1];
    return h[k];
}

SolveBounds compute_bounds(const DegreeProfile& profile) {
    BigInt gprod = 1, gprod1 = 1;
    for (uint64_t g : profile.gdeg) {
        gprod *= g;
        gprod1 *= g + 1;
    }
    std::vector<uint64_t> c1(profile.cdeg), r1(profile.rdeg);
    for (auto& v : c1) ++v;
    for (auto& v : r1) ++v;
    size_t k = profile.n - profile.s;
    SolveBounds b;
    b.c = gprod * elem_sym(k, profile.cdeg);
    b.cprime = gprod * complete_sym(k, profile.rdeg);
    b.e = gprod1 * elem_sym(k, c1);
    b.eprime = gprod1 * complete_sym(k, r1);
    return b;
}

Fp linear_form_eval(const FpField& F, const LinearForm& f, const std::vector<Fp>& x) {
    Fp r = f.c0;
    for (size_t i = 0; i < f.coef.size(); ++i) r = F.add(r, F.mul(f.coef[i], x[i]));
    return r;
}

uint32_t emit_linear_form(SlpBuilder& b, const LinearForm& f,
                          const std::vector<uint32_t>& xslots) {
    uint32_t acc = b.constant(static_cast<int64_t>(f.c0.v));
    for (size_t i = 0; i < f.coef.size(); ++i) {
        if (f.coef[i].v == 0) continue;
        acc = b.add(acc, b.mul(b.constant(static_cast<int64_t>(f.coef[i].v)), xslots[i]));
    }
    return acc;
}

uint32_t emit_form_product(SlpBuilder& b, const LinearFormProduct& prod,
                           const std::vector<uint32_t>& xslots) {
    if (prod.empty()) return b.constant(0);
    uint32_t acc = emit_linear_form(b, prod[0], xslots);
    for (size_t k = 1; k < prod.size(); ++k)
        acc = b.mul(acc, emit_linear_form(b, prod[k], xslots));
    return acc;
}

namespace {

LinearForm random_form(const FpField& F, Rng& rng, size_t n) {
    LinearForm f;
    f.c0 = rng.next_fp(F);
    f.coef.resize(n);
    for (auto& c : f.coef) c = rng.next_fp(F);
    return f;
}

LinearFormProduct random_product(const FpField& F, Rng& rng, size_t n, uint64_t deg) {
    LinearFormProduct p(deg);
    for (auto& f : p) f = random_form(F, rng, n);
    return p;
}

// mixed-radix counter; an empty radix vector yields exactly one tuple
bool next_tuple(std::vector<size_t>& t, const std::vector<size_t>& radix) {
    for (size_t i = 0; i < t.size(); ++i) {
        if (++t[i] < radix[i]) return true;
        t[i] = 0;
    }
    return false;
}

uint64_t to_u64(const BigInt& v, const char* what) {
    if (v < 0 || v > BigInt(1) << 40)
        throw std::range_error(std::string(what) + " is out of tractable range");
    return v.convert_to<uint64_t>();
}

// solve the k affine forms for the trailing k of the n variables,
// returning X_{n-k+j} as affine forms in the leading n-k variables
std::vector<LinearForm> eliminate_trailing(const FpField& F,
                                           const std::vector<LinearForm>& forms,
                                           size_t n) {
    const size_t k = forms.size();
    Mat<Fp> M(k, k, F.zero());
    for (size_t j = 0; j < k; ++j)
        for (size_t c = 0; c < k; ++c) M.at(j, c) = forms[j].coef[n - k + c];
    // invert via k unit solves
    std::vector<std::vector<Fp>> Minv(k);
    for (size_t c = 0; c < k; ++c) {
        std::vector<Fp> rhs(k, F.zero());
        rhs[c] = F.one();
        auto sol = solve_linear(F, M, rhs);
        if (sol.status != SolveStatus::Unique)
            throw RetryError(RetryError::Kind::RankDeficientBranch,
                             "trailing-variable block is singular");
        Minv[c] = sol.x;  // column c of M^{-1}
    }
    std::vector<LinearForm> out(k);
    for (size_t j = 0; j < k; ++j) {
        out[j].c0 = F.zero();
        out[j].coef.assign(n - k, F.zero());
        for (size_t c = 0; c < k; ++c) {
            Fp m = Minv[c][j];  // (M^{-1})[j][c]
            out[j].c0 = F.sub(out[j].c0, F.mul(m, forms[c].c0));
            for (size_t l = 0; l < n - k; ++l)
                out[j].coef[l] = F.sub(out[j].coef[l], F.mul(m, forms[c].coef[l]));
        }
    }
    return out;
}

// substitute trailing-variable expressions into a form over n variables,
// producing a form over n-k variables
LinearForm substitute_form(const FpField& F, const LinearForm& f,
                           const std::vector<LinearForm>& tail, size_t n) {
    const size_t k = tail.size();
    LinearForm r;
    r.c0 = f.c0;
    r.coef.assign(n - k, F.zero());
    for (size_t l = 0; l < n - k; ++l) r.coef[l] = f.coef[l];
    for (size_t j = 0; j < k; ++j) {
        Fp c = f.coef[n - k + j];
        if (F.is_zero(c)) continue;
        r.c0 = F.add(r.c0, F.mul(c, tail[j].c0));
        for (size_t l = 0; l < n - k; ++l)
            r.coef[l] = F.add(r.coef[l], F.mul(c, tail[j].coef[l]));
    }
    return r;
}

LinearFormProduct substitute_product(const FpField& F, const LinearFormProduct& p,
                                     const std::vector<LinearForm>& tail, size_t n) {
    LinearFormProduct r(p.size());
    for (size_t i = 0; i < p.size(); ++i) r[i] = substitute_form(F, p[i], tail, n);
    return r;
}

// numerators for coordinates appended through affine expressions in the
// existing ones: v_new = f.c0 * w' + sum f.coef_l * v_l mod w
ZeroDimParam extend_coordinates(const FpField& F, const ZeroDimParam& r,
                                const std::vector<LinearForm>& tail, size_t n_total) {
    ZeroDimParam out;
    out.w = r.w;
    out.v = r.v;
    out.lambda = r.lambda;
    out.lambda.resize(n_total, F.zero());
    UPoly wd = poly_mod(F, poly_derivative(F, r.w), r.w);
    for (const LinearForm& f : tail) {
        UPoly v = poly_scale(F, f.c0, wd);
        for (size_t l = 0; l < f.coef.size(); ++l)
            v = poly_add(F, v, poly_scale(F, f.coef[l], r.v[l]));
        out.v.push_back(poly_mod(F, v, r.w));
    }
    return out;
}

// rank-n check of the Jacobian of B(0, .) at an explicit start point
void check_point_regularity(const FpField& F, const Slp& jacB,
                            const std::vector<Fp>& pt, size_t n, size_t m) {
    std::vector<Fp> in(n + 1, F.zero());
    for (size_t i = 0; i < n; ++i) in[1 + i] = pt[i];
    auto vals = slp_eval(jacB, F, std::span<const Fp>(in));
    Mat<Fp> J(m, n, F.zero());
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < n; ++j) J.at(i, j) = vals[m + i * (n + 1) + 1 + j];
    if (rank(F, J) != n)
        throw RetryError(RetryError::Kind::RankDeficientBranch,
                         "start point with rank-deficient Jacobian");
}

// blended program over (T, X): side equations (1-T) a_i + T g_i followed
// by the p-minors of (1-T) S + T F, S given entry-wise
Slp build_blend(const DegreeProfile& prof, const Slp& F_slp, const Slp& G_slp,
                const std::vector<std::vector<LinearFormProduct>>& S_entries,
                const std::vector<std::vector<int64_t>>& S_scalars,
                const std::vector<LinearFormProduct>& K) {
    const size_t n = prof.n;
    SlpBuilder b(static_cast<uint32_t>(n + 1));
    uint32_t T = b.input(0);
    uint32_t one_minus_T = b.sub(b.constant(1), T);
    std::vector<uint32_t> xslots(n);
    for (size_t i = 0; i < n; ++i) xslots[i] = b.input(static_cast<uint32_t>(1 + i));

    std::vector<uint32_t> gouts, fouts;
    if (prof.s > 0) gouts = b.splice(G_slp, xslots);
    fouts = b.splice(F_slp, xslots);

    for (size_t i = 0; i < prof.s; ++i) {
        uint32_t ai = emit_form_product(b, K[i], xslots);
        b.output(b.add(b.mul(one_minus_T, ai), b.mul(T, gouts[i])));
    }
    for (size_t i = 0; i < prof.p; ++i) {
        for (size_t j = 0; j < prof.q; ++j) {
            uint32_t start;
            if (S_entries[i][j].empty()) {
                start = b.constant(0);
            } else {
                start = emit_form_product(b, S_entries[i][j], xslots);
                if (S_scalars[i][j] != 1)
                    start = b.mul(b.constant(S_scalars[i][j]), start);
            }
            uint32_t target = fouts[i * prof.q + j];
            b.output(b.add(b.mul(one_minus_T, start), b.mul(T, target)));
        }
    }
    return slp_minors(b.take(), prof.p, prof.q, prof.s);
}

}  // namespace

ColumnStart build_column_start(const FieldCtx& ctx, const DegreeProfile& profile,
                               const Slp& F_slp, const Slp& G_slp, Rng& rng) {
    const FpField& F = ctx.field;
    const size_t n = profile.n, s = profile.s, q = profile.q, p = profile.p;
    if (F.prime() <= q)
        throw InvalidProfileError("field too small for the Vandermonde start matrix");

    ColumnStart cs;
    cs.K.resize(s);
    for (size_t i = 0; i < s; ++i) cs.K[i] = random_product(F, rng, n, profile.gdeg[i]);
    cs.L.resize(q);
    for (size_t j = 0; j < q; ++j) cs.L[j] = random_product(F, rng, n, profile.cdeg[j]);

    // enumerate V(A): one linear solve per (u, column subset, factor choice)
    std::vector<std::vector<Fp>> points;
    std::vector<size_t> uradix(profile.gdeg.begin(), profile.gdeg.end());
    std::vector<size_t> u(s, 0);
    do {
        for (const auto& js : column_subsets(q, n - s)) {
            std::vector<size_t> vradix(n - s);
            for (size_t k = 0; k < n - s; ++k) vradix[k] = profile.cdeg[js[k]];
            std::vector<size_t> v(n - s, 0);
            do {
                Mat<Fp> A(n, n, F.zero());
                std::vector<Fp> rhs(n, F.zero());
                for (size_t i = 0; i < s; ++i) {
                    const LinearForm& f = cs.K[i][u[i]];
                    for (size_t l = 0; l < n; ++l) A.at(i, l) = f.coef[l];
                    rhs[i] = F.neg(f.c0);
                }
                for (size_t k = 0; k < n - s; ++k) {
                    const LinearForm& f = cs.L[js[k]][v[k]];
                    for (size_t l = 0; l < n; ++l) A.at(s + k, l) = f.coef[l];
                    rhs[s + k] = F.neg(f.c0);
                }
                auto sol = solve_linear(F, A, rhs);
                if (sol.status != SolveStatus::Unique)
                    throw RetryError(RetryError::Kind::RankDeficientBranch,
                                     "singular start branch system");
                points.push_back(std::move(sol.x));
            } while (next_tuple(v, vradix));
        }
    } while (next_tuple(u, uradix));

    BigInt expected = compute_bounds(profile).c;
    if (BigInt(points.size()) != expected)
        throw RetryError(RetryError::Kind::CountMismatch,
                         "column start cardinality differs from its bound");
    {
        std::set<std::vector<uint64_t>> distinct;
        for (const auto& pt : points) {
            std::vector<uint64_t> raw(pt.size());
            for (size_t i = 0; i < pt.size(); ++i) raw[i] = pt[i].v;
            distinct.insert(std::move(raw));
        }
        if (distinct.size() != points.size())
            throw RetryError(RetryError::Kind::CountMismatch,
                             "column start produced coinciding points");
    }

    // Vandermonde scalars (j+1)^(i+1) on column j, row i
    std::vector<std::vector<LinearFormProduct>> entries(
        p, std::vector<LinearFormProduct>(q));
    std::vector<std::vector<int64_t>> scalars(p, std::vector<int64_t>(q, 1));
    for (size_t i = 0; i < p; ++i)
        for (size_t j = 0; j < q; ++j) {
            entries[i][j] = cs.L[j];
            scalars[i][j] =
                static_cast<int64_t>(F.pow(F.from_uint(j + 1), i + 1).v);
        }
    cs.B = build_blend(profile, F_slp, G_slp, entries, scalars, cs.K);

    // separating form, retried locally; then C3(0) at every start point
    bool built = false;
    for (int t = 0; t < ctx.retry_budget && !built; ++t) {
        std::vector<Fp> lambda(n);
        for (auto& c : lambda) c = rng.next_fp(F);
        try {
            cs.R0 = zdp_from_points(F, points, std::move(lambda));
            built = true;
        } catch (const NotSeparatingError&) {
        }
    }
    if (!built)
        throw RetryError(RetryError::Kind::Degenerate,
                         "no separating form found for the start points");

    Slp jacB = slp_jacobian(cs.B);
    for (const auto& pt : points)
        check_point_regularity(F, jacB, pt, n, cs.B.outputs.size());
    return cs;
}

RowStart build_row_start(const FieldCtx& ctx, const DegreeProfile& profile,
                         const Slp& F_slp, const Slp& G_slp, Rng& rng) {
    const FpField& F = ctx.field;
    const size_t n = profile.n, s = profile.s, q = profile.q, p = profile.p;
    RowStart rs;
    rs.K.resize(s);
    for (size_t i = 0; i < s; ++i) rs.K[i] = random_product(F, rng, n, profile.gdeg[i]);
    rs.N.assign(p, std::vector<LinearFormProduct>(q));
    for (size_t i = 0; i < p; ++i) {
        rs.N[i][i] = random_product(F, rng, n, profile.rdeg[i]);
        for (size_t j = p; j < q; ++j)
            rs.N[i][j] = random_product(F, rng, n, profile.rdeg[i]);
    }
    std::vector<std::vector<int64_t>> scalars(p, std::vector<int64_t>(q, 1));
    rs.B = build_blend(profile, F_slp, G_slp, rs.N, scalars, rs.K);
    return rs;
}

ZeroDimParam row_degree_diagonal(const FieldCtx& ctx,
                                 const std::vector<std::vector<LinearFormProduct>>& N,
                                 size_t n_vars, const std::vector<Fp>& lambda_target,
                                 Rng& rng, int depth) {
    const FpField& F = ctx.field;
    const size_t p = N.size();
    const size_t q = N.empty() ? 0 : N[0].size();
    if (n_vars != q - p + 1)
        throw std::logic_error("diagonal start shape violates n = q - p + 1");

    std::vector<ZeroDimParam> pieces;
    uint64_t branch_label = 0;

    size_t kmax = std::min(n_vars >= 1 ? n_vars - 1 : 0, p);
    for (size_t kappa = 1; kappa <= kmax; ++kappa) {
        for (const auto& rows : column_subsets(p, kappa)) {
            std::vector<size_t> rradix(kappa);
            for (size_t k = 0; k < kappa; ++k) rradix[k] = N[rows[k]][rows[k]].size();
            std::vector<size_t> rsel(kappa, 0);
            do {
                ++branch_label;
                std::vector<LinearForm> cancel(kappa);
                for (size_t k = 0; k < kappa; ++k)
                    cancel[k] = N[rows[k]][rows[k]][rsel[k]];
                std::vector<LinearForm> tail = eliminate_trailing(F, cancel, n_vars);

                // dense kappa x (q - p) submatrix, substituted
                DegreeProfile sub;
                sub.p = kappa;
                sub.q = q - p;
                sub.s = 0;
                sub.n = n_vars - kappa;
                sub.rdeg.resize(kappa);
                SlpBuilder sb(static_cast<uint32_t>(sub.n));
                std::vector<uint32_t> xs(sub.n);
                for (size_t i = 0; i < sub.n; ++i)
                    xs[i] = sb.input(static_cast<uint32_t>(i));
                for (size_t k = 0; k < kappa; ++k) {
                    sub.rdeg[k] = N[rows[k]][rows[k]].size();
                    for (size_t j = p; j < q; ++j) {
                        LinearFormProduct sp =
                            substitute_product(F, N[rows[k]][j], tail, n_vars);
                        sb.output(emit_form_product(sb, sp, xs));
                    }
                }
                sub.cdeg.assign(sub.q, *std::max_element(sub.rdeg.begin(),
                                                         sub.rdeg.end()));
                Slp sub_slp = sb.take();
                Slp empty_g;
                empty_g.n_inputs = static_cast<uint32_t>(sub.n);

                Rng sub_rng = rng.fork(branch_label);
                ZeroDimParam rz = row_degree(ctx, sub_slp, empty_g, sub, true,
                                             sub_rng, nullptr, depth + 1);
                ZeroDimParam ext = extend_coordinates(F, rz, tail, n_vars);
                try {
                    pieces.push_back(zdp_reparametrize(F, ext, lambda_target));
                } catch (const NotSeparatingError&) {
                    throw RetryError(RetryError::Kind::Degenerate,
                                     "target form does not separate a branch");
                }
            } while (next_tuple(rsel, rradix));
        }
    }

    if (n_vars <= p) {
        // fully determined points from length-n row subsequences
        std::vector<std::vector<Fp>> pts;
        for (const auto& rows : column_subsets(p, n_vars)) {
            std::vector<size_t> rradix(n_vars);
            for (size_t k = 0; k < n_vars; ++k) rradix[k] = N[rows[k]][rows[k]].size();
            std::vector<size_t> rsel(n_vars, 0);
            do {
                std::vector<LinearForm> cancel(n_vars);
                for (size_t k = 0; k < n_vars; ++k)
                    cancel[k] = N[rows[k]][rows[k]][rsel[k]];
                std::vector<LinearForm> tail = eliminate_trailing(F, cancel, n_vars);
                std::vector<Fp> pt(n_vars);
                for (size_t j = 0; j < n_vars; ++j) pt[j] = tail[j].c0;
                pts.push_back(std::move(pt));
            } while (next_tuple(rsel, rradix));
        }
        if (!pts.empty()) {
            try {
                pieces.push_back(zdp_from_points(F, pts, lambda_target));
            } catch (const NotSeparatingError&) {
                throw RetryError(RetryError::Kind::Degenerate,
                                 "target form does not separate the point branch");
            } catch (const std::invalid_argument&) {
                throw RetryError(RetryError::Kind::CountMismatch,
                                 "coinciding fully-determined start points");
            }
        }
    }

    if (pieces.empty()) return zdp_empty(F, n_vars, lambda_target);
    try {
        return zdp_crt_combine(F, pieces);
    } catch (const NotCoprimeError&) {
        throw RetryError(RetryError::Kind::Degenerate,
                         "row-start branches are not disjoint");
    }
}

namespace {

ZeroDimParam run_instance(const FieldCtx& ctx, const Slp& B, ZeroDimParam R0,
                          uint64_t c, uint64_t e, bool simple, Rng& rng) {
    HomotopyInstance inst;
    inst.B = B;
    inst.R0 = std::move(R0);
    inst.c = c;
    inst.e = e;
    return simple ? homotopy_run_simple(ctx, inst, rng)
                  : homotopy_run_isolated(ctx, inst, rng);
}

}  // namespace

ZeroDimParam column_degree(const FieldCtx& ctx, const Slp& F_slp, const Slp& G_slp,
                           const DegreeProfile& profile, bool simple, Rng& rng,
                           SolveStats* stats) {
    profile.validate();
    SolveBounds bd = compute_bounds(profile);
    uint64_t c = to_u64(bd.c, "column bound c");
    uint64_t e = to_u64(bd.e, "column curve bound e");
    int attempts = 0;
    for (; attempts <= ctx.retry_budget; ++attempts) {
        Rng arng = rng.fork(static_cast<uint64_t>(attempts));
        try {
            ColumnStart start = build_column_start(ctx, profile, F_slp, G_slp, arng);
            return run_instance(ctx, start.B, start.R0, c, e, simple, arng);
        } catch (const RetryError&) {
            if (stats) ++stats->retries;
        } catch (const ExhaustedError&) {
            if (stats) ++stats->retries;
        }
    }
    throw ExhaustedError(attempts);
}

ZeroDimParam row_degree(const FieldCtx& ctx, const Slp& F_slp, const Slp& G_slp,
                        const DegreeProfile& profile, bool simple, Rng& rng,
                        SolveStats* stats, int depth) {
    profile.validate();
    const FpField& F = ctx.field;
    const size_t n = profile.n, s = profile.s;
    SolveBounds bd = compute_bounds(profile);
    uint64_t cprime = to_u64(bd.cprime, "row bound c'");
    uint64_t eprime = to_u64(bd.eprime, "row curve bound e'");

    int attempts = 0;
    for (; attempts <= ctx.retry_budget; ++attempts) {
        Rng arng = rng.fork(0x520000 + static_cast<uint64_t>(attempts));
        try {
            RowStart rs = build_row_start(ctx, profile, F_slp, G_slp, arng);
            std::vector<Fp> lambda(n);
            for (auto& c : lambda) c = arng.next_fp(F);

            std::vector<ZeroDimParam> pieces;
            std::vector<size_t> uradix(profile.gdeg.begin(), profile.gdeg.end());
            std::vector<size_t> u(s, 0);
            uint64_t ulabel = 0;
            do {
                ++ulabel;
                Rng urng = arng.fork(ulabel);
                if (s == 0) {
                    pieces.push_back(
                        row_degree_diagonal(ctx, rs.N, n, lambda, urng, depth));
                } else {
                    std::vector<LinearForm> mu(s);
                    for (size_t i = 0; i < s; ++i) mu[i] = rs.K[i][u[i]];
                    std::vector<LinearForm> tail = eliminate_trailing(F, mu, n);
                    std::vector<std::vector<LinearFormProduct>> Nu(
                        rs.N.size(), std::vector<LinearFormProduct>(rs.N[0].size()));
                    for (size_t i = 0; i < rs.N.size(); ++i)
                        for (size_t j = 0; j < rs.N[i].size(); ++j)
                            Nu[i][j] = substitute_product(F, rs.N[i][j], tail, n);
                    std::vector<Fp> sub_lambda(n - s);
                    for (auto& c : sub_lambda) c = urng.next_fp(F);
                    ZeroDimParam rd =
                        row_degree_diagonal(ctx, Nu, n - s, sub_lambda, urng, depth);
                    ZeroDimParam ext = extend_coordinates(F, rd, tail, n);
                    try {
                        pieces.push_back(zdp_reparametrize(F, ext, lambda));
                    } catch (const NotSeparatingError&) {
                        throw RetryError(RetryError::Kind::Degenerate,
                                         "shared form does not separate a u-branch");
                    }
                }
            } while (next_tuple(u, uradix));

            ZeroDimParam R0;
            try {
                R0 = pieces.empty() ? zdp_empty(F, n, lambda)
                                    : zdp_crt_combine(F, pieces);
            } catch (const NotCoprimeError&) {
                throw RetryError(RetryError::Kind::Degenerate,
                                 "u-branches of the row start are not disjoint");
            }
            if (BigInt(R0.count()) != bd.cprime)
                throw RetryError(RetryError::Kind::CountMismatch,
                                 "row start cardinality differs from its bound");
            return run_instance(ctx, rs.B, std::move(R0), cprime, eprime, simple,
                                arng);
        } catch (const RetryError&) {
            if (stats) ++stats->retries;
        } catch (const ExhaustedError&) {
            if (stats) ++stats->retries;
        }
    }
    throw ExhaustedError(attempts);
}

}  // namespace detsolve

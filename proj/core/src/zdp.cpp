#include "detsolve/zdp.hpp"

#include <algorithm>

namespace detsolve {

ZeroDimParam zdp_empty(const FpField& F, size_t n, std::vector<Fp> lambda) {
    ZeroDimParam r;
    r.w = poly_one(F);
    r.v.assign(n, UPoly{});
    r.lambda = std::move(lambda);
    return r;
}

bool zdp_invariants_hold(const FpField& F, const ZeroDimParam& r) {
    if (r.w.empty() || r.w.back() != F.one()) return false;
    if (r.lambda.size() != r.v.size()) return false;
    int d = poly_deg(r.w);
    if (d > 0 && poly_deg(poly_gcd(F, r.w, poly_derivative(F, r.w))) != 0) return false;
    for (const UPoly& vi : r.v)
        if (poly_deg(vi) >= d) return false;
    // lambda(v) = Y w' mod w
    UPoly acc;
    for (size_t i = 0; i < r.v.size(); ++i)
        acc = poly_add(F, acc, poly_scale(F, r.lambda[i], r.v[i]));
    UPoly rhs = poly_mod(F, poly_mul(F, UPoly{F.zero(), F.one()}, poly_derivative(F, r.w)),
                         r.w);
    return poly_mod(F, poly_sub(F, acc, rhs), r.w).empty();
}

ZeroDimParam zdp_from_points(const FpField& F,
                             const std::vector<std::vector<Fp>>& points,
                             std::vector<Fp> lambda) {
    const size_t n = lambda.size();
    ZeroDimParam r;
    r.lambda = lambda;
    if (points.empty()) return zdp_empty(F, n, std::move(lambda));

    std::vector<Fp> ys(points.size());
    for (size_t k = 0; k < points.size(); ++k) {
        if (points[k].size() != n)
            throw std::invalid_argument("point arity does not match lambda");
        Fp y = F.zero();
        for (size_t i = 0; i < n; ++i) y = F.add(y, F.mul(lambda[i], points[k][i]));
        ys[k] = y;
    }
    for (size_t a = 0; a < ys.size(); ++a)
        for (size_t b = a + 1; b < ys.size(); ++b) {
            if (ys[a] == ys[b]) {
                if (points[a] == points[b])
                    throw std::invalid_argument("duplicate point");
                throw NotSeparatingError();
            }
        }

    UPoly w = poly_one(F);
    for (Fp y : ys) w = poly_mul(F, w, UPoly{F.neg(y), F.one()});
    r.w = w;
    r.v.assign(n, UPoly{});
    for (size_t k = 0; k < points.size(); ++k) {
        // w / (Y - y_k), synthetic division
        UPoly quo = *poly_div_exact(F, w, UPoly{F.neg(ys[k]), F.one()});
        for (size_t i = 0; i < n; ++i)
            r.v[i] = poly_add(F, r.v[i], poly_scale(F, points[k][i], quo));
    }
    if (!zdp_invariants_hold(F, r))
        throw std::logic_error("from_points: invariant violated");
    return r;
}

std::vector<UPoly> zdp_coordinates(const FpField& F, const ZeroDimParam& r) {
    QuotRing A(F, r.w);
    UPoly wdinv = A.inv(A.embed(poly_derivative(F, r.w)));
    std::vector<UPoly> xs(r.v.size());
    for (size_t i = 0; i < r.v.size(); ++i) xs[i] = A.mul(A.embed(r.v[i]), wdinv);
    return xs;
}

std::vector<UPoly> zdp_residual(const FpField& F, const ZeroDimParam& r,
                                const Slp& system) {
    QuotRing A(F, r.w);
    if (r.empty()) return std::vector<UPoly>(system.outputs.size());
    std::vector<UPoly> xs = zdp_coordinates(F, r);
    return slp_eval(system, A, std::span<const UPoly>(xs));
}

bool zdp_residual_is_zero(const FpField& F, const ZeroDimParam& r, const Slp& system) {
    for (const UPoly& e : zdp_residual(F, r, system))
        if (!e.empty()) return false;
    return true;
}

std::vector<ZeroDimParam> zdp_split(const FpField& F, const ZeroDimParam& r,
                                    const UPoly& g) {
    UPoly d = poly_gcd(F, r.w, poly_mod(F, g, r.w));
    if (poly_deg(d) <= 0 || poly_deg(d) == poly_deg(r.w)) return {r};
    UPoly s = *poly_div_exact(F, r.w, d);

    ZeroDimParam on_d, on_s;
    on_d.w = d;
    on_s.w = s;
    on_d.lambda = on_s.lambda = r.lambda;
    UPoly sinv_mod_d = poly_invmod(F, poly_mod(F, s, d), d);
    UPoly dinv_mod_s = poly_invmod(F, poly_mod(F, d, s), s);
    for (const UPoly& vi : r.v) {
        on_d.v.push_back(poly_mulmod(F, poly_mod(F, vi, d), sinv_mod_d, d));
        on_s.v.push_back(poly_mulmod(F, poly_mod(F, vi, s), dinv_mod_s, s));
    }
    if (!zdp_invariants_hold(F, on_d) || !zdp_invariants_hold(F, on_s))
        throw std::logic_error("split: invariant violated");
    return {on_d, on_s};
}

ZeroDimParam zdp_crt_combine(const FpField& F, const std::vector<ZeroDimParam>& rs) {
    std::vector<const ZeroDimParam*> parts;
    for (const auto& r : rs)
        if (!r.empty()) parts.push_back(&r);
    if (parts.empty()) {
        if (rs.empty()) throw std::invalid_argument("crt_combine of nothing");
        return rs.front();
    }
    for (const auto* r : parts)
        if (r->lambda != parts.front()->lambda) throw LambdaMismatchError();

    ZeroDimParam acc = *parts.front();
    for (size_t k = 1; k < parts.size(); ++k) {
        const ZeroDimParam& b = *parts[k];
        // residues of the combined numerators: v = v_a * w_b mod w_a,
        // v = v_b * w_a mod w_b (the w'-normalization of the union)
        std::vector<UPoly> ra(acc.v.size()), rb(b.v.size());
        for (size_t i = 0; i < acc.v.size(); ++i) {
            ra[i] = poly_mulmod(F, acc.v[i], poly_mod(F, b.w, acc.w), acc.w);
            rb[i] = poly_mulmod(F, b.v[i], poly_mod(F, acc.w, b.w), b.w);
        }
        auto [w, v] = crt_pair(F, acc.w, ra, b.w, rb);
        acc.w = std::move(w);
        acc.v = std::move(v);
    }
    if (!zdp_invariants_hold(F, acc))
        throw std::logic_error("crt_combine: invariant violated");
    return acc;
}

ZeroDimParam zdp_reparametrize(const FpField& F, const ZeroDimParam& r,
                               std::vector<Fp> lambda_new) {
    const size_t d = r.count();
    if (d == 0) return zdp_empty(F, r.n(), std::move(lambda_new));

    QuotRing A(F, r.w);
    std::vector<UPoly> xs = zdp_coordinates(F, r);
    UPoly lam;
    for (size_t i = 0; i < xs.size(); ++i)
        lam = A.add(lam, A.embed(poly_scale(F, lambda_new[i], xs[i])));

    std::vector<Fp> psums = power_sums_of(F, r.w, d);
    std::vector<Fp> p(d);
    UPoly pw = A.one();
    for (size_t k = 1; k <= d; ++k) {
        pw = A.mul(pw, lam);
        p[k - 1] = trace_mod(F, pw, psums);
    }
    std::vector<Fp> wn = poly_from_power_sums(F, p, d);
    UPoly w_new(wn.begin(), wn.end());
    poly_trim(w_new);
    if (poly_deg(w_new) != static_cast<int>(d)) throw NotSeparatingError();
    if (poly_deg(poly_gcd(F, w_new, poly_derivative(F, w_new))) != 0)
        throw NotSeparatingError();

    // v_i = sum_j Trace(x_i * c_j(lam)) Y^j with the Horner tail
    // c_{d-1} = 1, c_{j-1} = w_j + lam * c_j.
    ZeroDimParam out;
    out.w = w_new;
    out.lambda = std::move(lambda_new);
    out.v.assign(r.n(), UPoly(d, F.zero()));
    UPoly c = A.one();
    for (size_t j = d; j-- > 0;) {
        for (size_t i = 0; i < r.n(); ++i)
            out.v[i][j] = trace_mod(F, A.mul(A.embed(xs[i]), c), psums);
        if (j > 0) {
            UPoly next = A.mul(lam, c);
            next = A.add(next, A.from_fp(w_new[j]));
            c = std::move(next);
        }
    }
    for (auto& vi : out.v) poly_trim(vi);
    if (!zdp_invariants_hold(F, out)) throw NotSeparatingError();
    return out;
}

bool zdp_contains_point(const FpField& F, const ZeroDimParam& r,
                        const std::vector<Fp>& pt) {
    if (pt.size() != r.n()) return false;
    Fp y = F.zero();
    for (size_t i = 0; i < pt.size(); ++i) y = F.add(y, F.mul(r.lambda[i], pt[i]));
    if (!F.is_zero(poly_eval(F, r.w, y))) return false;
    Fp wd = poly_eval(F, poly_derivative(F, r.w), y);
    for (size_t i = 0; i < pt.size(); ++i)
        if (poly_eval(F, r.v[i], y) != F.mul(pt[i], wd)) return false;
    return true;
}

std::vector<std::vector<Fp>> zdp_rational_points(const FpField& F, const ZeroDimParam& r) {
    if (F.prime() > 10000000)
        throw std::invalid_argument("rational point scan is for small oracle primes");
    std::vector<std::vector<Fp>> pts;
    if (r.empty()) return pts;
    UPoly wd = poly_derivative(F, r.w);
    for (uint64_t t = 0; t < F.prime(); ++t) {
        Fp tau{t};
        if (!F.is_zero(poly_eval(F, r.w, tau))) continue;
        Fp winv = F.inv(poly_eval(F, wd, tau));
        std::vector<Fp> pt(r.n());
        for (size_t i = 0; i < r.n(); ++i)
            pt[i] = F.mul(poly_eval(F, r.v[i], tau), winv);
        pts.push_back(std::move(pt));
    }
    return pts;
}

}  // namespace detsolve

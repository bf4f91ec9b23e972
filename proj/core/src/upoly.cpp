#include "detsolve/upoly.hpp"

#include "detsolve/rings.hpp"

namespace detsolve {

void poly_trim(UPoly& a) {
    while (!a.empty() && a.back().v == 0) a.pop_back();
}

UPoly poly_one(const FpField& F) { return {F.one()}; }

UPoly poly_monomial(const FpField& F, Fp c, size_t k) {
    if (F.is_zero(c)) return {};
    UPoly r(k + 1, F.zero());
    r[k] = c;
    return r;
}

UPoly poly_add(const FpField& F, const UPoly& a, const UPoly& b) {
    UPoly r(std::max(a.size(), b.size()), F.zero());
    for (size_t i = 0; i < r.size(); ++i) {
        Fp x = i < a.size() ? a[i] : F.zero();
        Fp y = i < b.size() ? b[i] : F.zero();
        r[i] = F.add(x, y);
    }
    poly_trim(r);
    return r;
}

UPoly poly_sub(const FpField& F, const UPoly& a, const UPoly& b) {
    UPoly r(std::max(a.size(), b.size()), F.zero());
    for (size_t i = 0; i < r.size(); ++i) {
        Fp x = i < a.size() ? a[i] : F.zero();
        Fp y = i < b.size() ? b[i] : F.zero();
        r[i] = F.sub(x, y);
    }
    poly_trim(r);
    return r;
}

UPoly poly_neg(const FpField& F, const UPoly& a) {
    UPoly r(a.size(), F.zero());
    for (size_t i = 0; i < a.size(); ++i) r[i] = F.neg(a[i]);
    return r;
}

UPoly poly_mul(const FpField& F, const UPoly& a, const UPoly& b) {
    if (a.empty() || b.empty()) return {};
    UPoly r(a.size() + b.size() - 1, F.zero());
    for (size_t i = 0; i < a.size(); ++i) {
        if (F.is_zero(a[i])) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    poly_trim(r);
    return r;
}

UPoly poly_scale(const FpField& F, Fp c, const UPoly& a) {
    if (F.is_zero(c)) return {};
    UPoly r(a.size(), F.zero());
    for (size_t i = 0; i < a.size(); ++i) r[i] = F.mul(c, a[i]);
    return r;
}

Fp poly_eval(const FpField& F, const UPoly& a, Fp x) {
    Fp r = F.zero();
    for (size_t i = a.size(); i-- > 0;) r = F.add(F.mul(r, x), a[i]);
    return r;
}

UPoly poly_derivative(const FpField& F, const UPoly& a) {
    if (a.size() <= 1) return {};
    UPoly r(a.size() - 1, F.zero());
    for (size_t i = 1; i < a.size(); ++i)
        r[i - 1] = F.mul(F.from_uint(static_cast<uint64_t>(i)), a[i]);
    poly_trim(r);
    return r;
}

std::pair<UPoly, UPoly> poly_divrem(const FpField& F, const UPoly& a, const UPoly& b) {
    if (b.empty()) throw std::invalid_argument("polynomial division by zero");
    if (a.size() < b.size()) return {{}, a};
    UPoly rem = a;
    UPoly quo(a.size() - b.size() + 1, F.zero());
    Fp lcinv = F.inv(b.back());
    for (size_t shift = quo.size(); shift-- > 0;) {
        Fp c = F.mul(rem[shift + b.size() - 1], lcinv);
        if (F.is_zero(c)) continue;
        quo[shift] = c;
        for (size_t j = 0; j < b.size(); ++j)
            rem[shift + j] = F.sub(rem[shift + j], F.mul(c, b[j]));
    }
    rem.resize(b.size() - 1);
    poly_trim(rem);
    poly_trim(quo);
    return {quo, rem};
}

std::optional<UPoly> poly_div_exact(const FpField& F, const UPoly& a, const UPoly& b) {
    auto [q, r] = poly_divrem(F, a, b);
    if (!r.empty()) return std::nullopt;
    return q;
}

UPoly poly_make_monic(const FpField& F, const UPoly& a) {
    if (a.empty() || a.back() == F.one()) return a;
    return poly_scale(F, F.inv(a.back()), a);
}

UPoly poly_gcd(const FpField& F, UPoly a, UPoly b) {
    while (!b.empty()) {
        UPoly r = poly_mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return poly_make_monic(F, a);
}

XgcdResult poly_xgcd(const FpField& F, const UPoly& a, const UPoly& b) {
    UPoly r0 = a, r1 = b;
    UPoly u0 = poly_one(F), u1;
    UPoly v0, v1 = poly_one(F);
    while (!r1.empty()) {
        auto [q, r] = poly_divrem(F, r0, r1);
        UPoly u2 = poly_sub(F, u0, poly_mul(F, q, u1));
        UPoly v2 = poly_sub(F, v0, poly_mul(F, q, v1));
        r0 = std::move(r1);
        r1 = std::move(r);
        u0 = std::move(u1);
        u1 = std::move(u2);
        v0 = std::move(v1);
        v1 = std::move(v2);
    }
    if (!r0.empty() && r0.back() != F.one()) {
        Fp c = F.inv(r0.back());
        r0 = poly_scale(F, c, r0);
        u0 = poly_scale(F, c, u0);
        v0 = poly_scale(F, c, v0);
    }
    return {r0, u0, v0};
}

UPoly poly_invmod(const FpField& F, const UPoly& a, const UPoly& w) {
    UPoly ar = poly_mod(F, a, w);
    if (ar.empty()) {
        // a = 0 mod w: no factor to split on, the element is zero everywhere
        throw ZeroInverseError();
    }
    XgcdResult x = poly_xgcd(F, ar, w);
    if (poly_deg(x.g) > 0) throw ZeroDivisorError(x.g);
    return poly_mod(F, x.u, w);
}

UPoly poly_mulmod(const FpField& F, const UPoly& a, const UPoly& b, const UPoly& w) {
    return poly_mod(F, poly_mul(F, a, b), w);
}

UPoly poly_squarefree_part(const FpField& F, const UPoly& a) {
    if (a.empty()) throw std::invalid_argument("squarefree part of zero");
    if (poly_deg(a) == 0) return poly_one(F);
    UPoly g = poly_gcd(F, a, poly_derivative(F, a));
    UPoly sf = *poly_div_exact(F, a, g);
    return poly_make_monic(F, sf);
}

std::vector<std::pair<UPoly, int>> poly_squarefree_decomposition(const FpField& F,
                                                                 const UPoly& a) {
    // Yun's algorithm; valid since char >> deg(a).
    std::vector<std::pair<UPoly, int>> out;
    UPoly f = poly_make_monic(F, a);
    if (poly_deg(f) <= 0) return out;
    UPoly fp = poly_derivative(F, f);
    UPoly g = poly_gcd(F, f, fp);
    UPoly c = *poly_div_exact(F, f, g);
    UPoly d = poly_sub(F, *poly_div_exact(F, fp, g), poly_derivative(F, c));
    int m = 1;
    while (poly_deg(c) > 0) {
        UPoly s = poly_gcd(F, c, d);
        if (poly_deg(s) > 0) out.emplace_back(s, m);
        c = *poly_div_exact(F, c, s);
        d = poly_sub(F, *poly_div_exact(F, d, s), poly_derivative(F, c));
        ++m;
    }
    return out;
}

std::pair<UPoly, std::vector<UPoly>> crt_pair(const FpField& F, const UPoly& wa,
                                              const std::vector<UPoly>& ra,
                                              const UPoly& wb,
                                              const std::vector<UPoly>& rb) {
    if (ra.size() != rb.size()) throw std::invalid_argument("crt residue count mismatch");
    if (poly_deg(wa) == 0) return {wb, rb};
    if (poly_deg(wb) == 0) return {wa, ra};
    XgcdResult x = poly_xgcd(F, wa, wb);
    if (poly_deg(x.g) != 0) throw NotCoprimeError();
    // x.u * wa = 1 mod wb
    UPoly w = poly_mul(F, wa, wb);
    std::vector<UPoly> r(ra.size());
    for (size_t i = 0; i < ra.size(); ++i) {
        UPoly diff = poly_mod(F, poly_sub(F, rb[i], ra[i]), wb);
        UPoly lift = poly_mulmod(F, diff, x.u, wb);
        r[i] = poly_add(F, ra[i], poly_mul(F, wa, lift));
    }
    return {w, r};
}

std::optional<std::pair<UPoly, UPoly>> rational_reconstruct(const FpField& F,
                                                            const std::vector<Fp>& f,
                                                            size_t e) {
    if (f.size() < 2 * e)
        throw std::invalid_argument("series precision below 2e");
    // A (deg<=e)/(deg<=e) fraction has 2e+1 unknowns; use the extra
    // coefficient when the caller lifted one past 2e, so the marginal
    // case deg num = deg den = e is determined too.
    size_t prec = std::min(f.size(), 2 * e + 1);
    UPoly r0 = poly_monomial(F, F.one(), prec);
    UPoly r1(f.begin(), f.begin() + prec);
    poly_trim(r1);
    UPoly v0, v1 = poly_one(F);
    while (poly_deg(r1) > static_cast<int>(e)) {
        auto [q, r] = poly_divrem(F, r0, r1);
        UPoly v2 = poly_sub(F, v0, poly_mul(F, q, v1));
        r0 = std::move(r1);
        r1 = std::move(r);
        v0 = std::move(v1);
        v1 = std::move(v2);
    }
    UPoly num = r1, den = v1;
    if (den.empty() || F.is_zero(den.front())) return std::nullopt;
    UPoly g = poly_gcd(F, num, den);
    if (poly_deg(g) > 0) {
        num = *poly_div_exact(F, num, g);
        den = *poly_div_exact(F, den, g);
    }
    Fp c = F.inv(den.front());
    num = poly_scale(F, c, num);
    den = poly_scale(F, c, den);
    if (poly_deg(num) > static_cast<int>(e) || poly_deg(den) > static_cast<int>(e))
        return std::nullopt;
    return std::make_pair(num, den);
}

std::vector<Fp> power_sums_of(const FpField& F, const UPoly& w, size_t k) {
    int d = poly_deg(w);
    if (d < 0 || w.back() != F.one())
        throw std::invalid_argument("power sums need a monic polynomial");
    std::vector<Fp> p(k, F.zero());
    if (k == 0) return p;
    p[0] = F.from_int(d);
    size_t du = static_cast<size_t>(d);
    for (size_t j = 1; j < k; ++j) {
        Fp acc = F.zero();
        if (j <= du) {
            for (size_t i = 1; i < j; ++i)
                acc = F.add(acc, F.mul(w[du - i], p[j - i]));
            acc = F.add(acc, F.mul(F.from_uint(j), w[du - j]));
        } else {
            for (size_t i = 1; i <= du; ++i)
                acc = F.add(acc, F.mul(w[du - i], p[j - i]));
        }
        p[j] = F.neg(acc);
    }
    return p;
}

Fp trace_mod(const FpField& F, const UPoly& a, const std::vector<Fp>& psums) {
    Fp r = F.zero();
    for (size_t i = 0; i < a.size(); ++i) r = F.add(r, F.mul(a[i], psums[i]));
    return r;
}

}  // namespace detsolve

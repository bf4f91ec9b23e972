#ifndef DETSOLVE_UPOLY_HPP
#define DETSOLVE_UPOLY_HPP

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "detsolve/field.hpp"

namespace detsolve {

// Univariate polynomial over F_p, coefficients low to high degree.
// Canonical form has no trailing zero; the zero polynomial is empty.
using UPoly = std::vector<Fp>;

struct NotCoprimeError : std::runtime_error {
    NotCoprimeError() : std::runtime_error("moduli are not coprime") {}
};

void poly_trim(UPoly& a);
inline int poly_deg(const UPoly& a) { return static_cast<int>(a.size()) - 1; }
inline bool poly_is_zero(const UPoly& a) { return a.empty(); }
UPoly poly_one(const FpField& F);
UPoly poly_monomial(const FpField& F, Fp c, size_t k);

UPoly poly_add(const FpField& F, const UPoly& a, const UPoly& b);
UPoly poly_sub(const FpField& F, const UPoly& a, const UPoly& b);
UPoly poly_neg(const FpField& F, const UPoly& a);
UPoly poly_mul(const FpField& F, const UPoly& a, const UPoly& b);
UPoly poly_scale(const FpField& F, Fp c, const UPoly& a);
Fp poly_eval(const FpField& F, const UPoly& a, Fp x);
UPoly poly_derivative(const FpField& F, const UPoly& a);

// Quotient and remainder; requires b != 0 (leading coefficient is
// invertible since F_p is a field).
std::pair<UPoly, UPoly> poly_divrem(const FpField& F, const UPoly& a, const UPoly& b);
inline UPoly poly_mod(const FpField& F, const UPoly& a, const UPoly& b) {
    return poly_divrem(F, a, b).second;
}
// Exact division; nullopt if the remainder is nonzero.
std::optional<UPoly> poly_div_exact(const FpField& F, const UPoly& a, const UPoly& b);

UPoly poly_make_monic(const FpField& F, const UPoly& a);
UPoly poly_gcd(const FpField& F, UPoly a, UPoly b);  // monic
// g = gcd(a,b) monic, with u*a + v*b = g.
struct XgcdResult {
    UPoly g, u, v;
};
XgcdResult poly_xgcd(const FpField& F, const UPoly& a, const UPoly& b);

// Inverse of a modulo w. On failure the discovered nontrivial monic
// factor of w is reported through ZeroDivisorError (declared in
// rings.hpp); callers running dynamic evaluation split on it.
UPoly poly_invmod(const FpField& F, const UPoly& a, const UPoly& w);
UPoly poly_mulmod(const FpField& F, const UPoly& a, const UPoly& b, const UPoly& w);

UPoly poly_squarefree_part(const FpField& F, const UPoly& a);
// Yun decomposition: returns (S_m, m) with a = lc * prod S_m^m, the S_m
// monic squarefree and pairwise coprime. Requires char > deg(a).
std::vector<std::pair<UPoly, int>> poly_squarefree_decomposition(const FpField& F,
                                                                 const UPoly& a);

// Chinese remaindering of residue vectors: combined w = w_a*w_b and each
// returned residue is congruent to r_a[i] mod w_a and r_b[i] mod w_b.
// Throws NotCoprimeError when gcd(w_a, w_b) != 1.
std::pair<UPoly, std::vector<UPoly>> crt_pair(const FpField& F, const UPoly& wa,
                                              const std::vector<UPoly>& ra,
                                              const UPoly& wb,
                                              const std::vector<UPoly>& rb);

// Cauchy/Pade reconstruction from a series known mod T^{2e}: returns
// (num, den) with deg num <= e, deg den <= e, den(0) = 1 and
// den*f = num mod T^{2e}; nullopt when no such pair exists.
std::optional<std::pair<UPoly, UPoly>> rational_reconstruct(const FpField& F,
                                                            const std::vector<Fp>& f,
                                                            size_t e);

// Power sums p_0..p_{k-1} of the roots of monic w, via Newton identities.
// p_j = Trace(Y^j mod w), the basis of trace computations in K[Y]/<w>.
std::vector<Fp> power_sums_of(const FpField& F, const UPoly& w, size_t k);

// Trace of a modulo monic w, given precomputed power sums of w.
Fp trace_mod(const FpField& F, const UPoly& a, const std::vector<Fp>& psums);

// Monic degree-d polynomial whose root power sums are p_1..p_d, over any
// coefficient ring (used with F_p and with truncated series). Requires
// characteristic > d. Coefficients returned low to high in Y.
template <class R>
std::vector<typename R::Elem> poly_from_power_sums(const R& ring,
                                                   const std::vector<typename R::Elem>& p,
                                                   size_t d) {
    using E = typename R::Elem;
    // e[k] = elementary symmetric of degree k; k e_k = sum (-1)^{i-1} e_{k-i} p_i
    std::vector<E> e(d + 1, ring.zero());
    e[0] = ring.one();
    for (size_t k = 1; k <= d; ++k) {
        E acc = ring.zero();
        bool plus = true;
        for (size_t i = 1; i <= k; ++i) {
            E term = ring.mul(e[k - i], p[i - 1]);
            acc = plus ? ring.add(acc, term) : ring.sub(acc, term);
            plus = !plus;
        }
        e[k] = ring.mul(acc, ring.inv(ring.from_int(static_cast<int64_t>(k))));
    }
    // w(Y) = sum_k (-1)^k e_k Y^{d-k}
    std::vector<E> w(d + 1, ring.zero());
    for (size_t k = 0; k <= d; ++k) {
        E v = e[k];
        if (k % 2 == 1) v = ring.neg(v);
        w[d - k] = v;
    }
    return w;
}

}  // namespace detsolve

#endif

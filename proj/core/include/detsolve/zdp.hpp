#ifndef DETSOLVE_ZDP_HPP
#define DETSOLVE_ZDP_HPP

#include <stdexcept>
#include <vector>

#include "detsolve/rings.hpp"
#include "detsolve/slp.hpp"
#include "detsolve/upoly.hpp"

namespace detsolve {

struct NotSeparatingError : std::runtime_error {
    NotSeparatingError() : std::runtime_error("linear form does not separate the points") {}
};
struct LambdaMismatchError : std::runtime_error {
    LambdaMismatchError() : std::runtime_error("parametrizations carry different linear forms") {}
};

// Kronecker-style encoding of a finite point set: w monic squarefree,
// numerators v_i of degree < deg w, and a linear form lambda with
// lambda(v_1,...,v_n) = Y w' mod w. The points are
// (v_1(t)/w'(t), ..., v_n(t)/w'(t)) over the roots t of w.
struct ZeroDimParam {
    UPoly w;
    std::vector<UPoly> v;
    std::vector<Fp> lambda;

    size_t n() const { return v.size(); }
    size_t count() const { return w.empty() ? 0 : static_cast<size_t>(poly_deg(w)); }
    bool empty() const { return count() == 0; }
};

ZeroDimParam zdp_empty(const FpField& F, size_t n, std::vector<Fp> lambda);

// All invariants: monic squarefree w, deg v_i < deg w, lambda relation.
bool zdp_invariants_hold(const FpField& F, const ZeroDimParam& r);

// Interpolation from explicit rational points; throws NotSeparatingError
// when two points share a lambda value.
ZeroDimParam zdp_from_points(const FpField& F,
                             const std::vector<std::vector<Fp>>& points,
                             std::vector<Fp> lambda);

// Coordinates as elements of K[Y]/<w>, i.e. x_i = v_i * (w')^{-1} mod w.
std::vector<UPoly> zdp_coordinates(const FpField& F, const ZeroDimParam& r);

// Outputs of `system` evaluated at the parametrized points, reduced mod
// w; the all-zero vector certifies Z(r) is contained in the zero set.
std::vector<UPoly> zdp_residual(const FpField& F, const ZeroDimParam& r,
                                const Slp& system);
bool zdp_residual_is_zero(const FpField& F, const ZeroDimParam& r, const Slp& system);

// Partition along gcd(w, g): pieces where g vanishes / is invertible.
std::vector<ZeroDimParam> zdp_split(const FpField& F, const ZeroDimParam& r,
                                    const UPoly& g);

// Disjoint union of parametrizations sharing lambda, pairwise coprime w.
ZeroDimParam zdp_crt_combine(const FpField& F, const std::vector<ZeroDimParam>& rs);

// Re-express the same point set through a new linear form (traces of the
// multiplication-by-lambda endomorphism); throws NotSeparatingError when
// the new form collides on the point set.
ZeroDimParam zdp_reparametrize(const FpField& F, const ZeroDimParam& r,
                               std::vector<Fp> lambda_new);

// Points with coordinates in F_p itself, found by scanning the roots of
// w; meant for small oracle primes only.
std::vector<std::vector<Fp>> zdp_rational_points(const FpField& F, const ZeroDimParam& r);

// Membership of one rational point, by direct evaluation.
bool zdp_contains_point(const FpField& F, const ZeroDimParam& r,
                        const std::vector<Fp>& pt);

}  // namespace detsolve

#endif

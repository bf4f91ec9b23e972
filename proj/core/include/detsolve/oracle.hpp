#ifndef DETSOLVE_ORACLE_HPP
#define DETSOLVE_ORACLE_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "detsolve/field.hpp"
#include "detsolve/slp.hpp"

namespace detsolve {

// Brute-force references for the test suite. Everything here works on
// expanded polynomials and exhaustive scans, deliberately independent of
// the dual-space and homotopy machinery it is used to check.

struct TooLargeError : std::runtime_error {
    TooLargeError() : std::runtime_error("oracle enumeration budget exceeded") {}
};

// Expanded multivariate polynomial: exponent vector -> coefficient.
struct MPolyE {
    std::map<std::vector<uint32_t>, Fp> terms;
};

// Ring context over expanded polynomials; evaluating an SLP at the
// variables expands it.
class MPolyRing {
public:
    using Elem = MPolyE;

    MPolyRing(const FpField& F, size_t n_vars) : F_(&F), n_(n_vars) {}

    Elem zero() const { return {}; }
    Elem one() const { return from_int(1); }
    Elem from_int(int64_t c) const;
    Elem var(size_t i) const;
    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem neg(const Elem& a) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem inv(const Elem&) const { throw std::logic_error("no division on polynomials"); }
    bool is_zero(const Elem& a) const { return a.terms.empty(); }

    size_t n_vars() const { return n_; }

private:
    const FpField* F_;
    size_t n_;
};

// Expand the outputs of an SLP (no parameters).
std::vector<MPolyE> expand_slp(const FpField& F, const Slp& s);

// All monomials in n variables of total degree <= d, graded order.
struct MonomialBasis {
    size_t n = 0;
    uint32_t maxdeg = 0;
    std::vector<std::vector<uint32_t>> monomials;
    std::map<std::vector<uint32_t>, size_t> index;

    static MonomialBasis up_to(size_t n, uint32_t d);
    size_t size() const { return monomials.size(); }
};

// nu_k of the sequence in the stabilization criterion: the dimension of
// K[X]/(<polys> + m^k) supported at the origin, computed from the rank
// of the truncated multiples of the generators (a Macaulay-style
// matrix). The origin is isolated iff nu stabilizes.
size_t local_multiplicity(const FpField& F, const std::vector<MPolyE>& polys,
                          size_t n_vars, uint32_t k);

// Exhaustive scan of F_p^n for rank(F(x)) < p and G(x) = 0. fmat has
// p*q outputs (row-major); budget caps p^n.
std::vector<std::vector<Fp>> enumerate_variety(const FpField& F, const Slp& fmat,
                                               size_t p, size_t q, const Slp& gsys,
                                               uint64_t budget = 3000000);

}  // namespace detsolve

#endif

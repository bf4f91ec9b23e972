#ifndef DETSOLVE_HOMOTOPY_HPP
#define DETSOLVE_HOMOTOPY_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "detsolve/localdim.hpp"
#include "detsolve/zdp.hpp"

namespace detsolve {

// Recoverable failures of one homotopy attempt. Degenerate-flavoured
// kinds are retried with a fresh separating form; the others signal a
// bad random start system and propagate to the start-system builder.
struct RetryError : std::runtime_error {
    enum class Kind {
        NoInvertibleMinor,
        ResidualNonzero,
        Degenerate,
        ReconstructFailed,
        CountMismatch,
        RankDeficientBranch,
    };
    Kind kind;
    RetryError(Kind k, const char* what) : std::runtime_error(what), kind(k) {}
};

struct ExhaustedError : std::runtime_error {
    int attempts;
    explicit ExhaustedError(int n)
        : std::runtime_error("retry budget exhausted"), attempts(n) {}
};

// A deformation B(T,X) with solved start fiber B(0,.) = Z(R0), the
// multiplicity bound c of any fiber's isolated points, and the degree
// bound e on the one-dimensional part of V(B).
struct HomotopyInstance {
    Slp B;  // n+1 inputs, T first; m >= n outputs
    ZeroDimParam R0;
    uint64_t c = 0;
    uint64_t e = 0;

    size_t n_vars() const { return B.n_inputs - 1; }
};

using FpSeries = std::vector<Fp>;   // element of K[[T]] mod T^prec
using QSeries = std::vector<UPoly>; // element of (K[Y]/<w>)[[T]] mod T^prec

// One start branch: a factor of R0.w together with n selected equations
// whose Jacobian is invertible on the branch, and the coordinate series
// being lifted.
struct LiftedBranch {
    UPoly w0;
    std::vector<size_t> eq_subset;
    std::vector<QSeries> x;  // n coordinates, constant terms = start point
    size_t prec = 1;
};

// Parametrization over K[[T]]: w(T,Y) monic of degree d in Y with series
// coefficients, plus the n numerator polynomials in Y.
struct SeriesParam {
    size_t d = 0;
    std::vector<FpSeries> w;               // d+1 coefficients, w[d] = 1
    std::vector<std::vector<FpSeries>> v;  // n x d coefficients
};

// The same with coefficients reconstructed as reduced fractions in T
// (denominators normalized to constant term 1).
struct RatCoeff {
    UPoly num, den;
};
struct RatParam {
    size_t d = 0;
    std::vector<RatCoeff> w;
    std::vector<std::vector<RatCoeff>> v;
};

// Split R0 into branches carrying an invertible n x n Jacobian minor of
// B(0, .); dynamic evaluation splits on zero divisors.
std::vector<LiftedBranch> homotopy_decompose(const FpField& F, const ZeroDimParam& R0,
                                             const Slp& B);

// Newton-lift one branch to the target precision (doubling steps) and
// verify that every output of B vanishes on it mod (T^prec, w).
// ZeroDivisorError escapes to the caller, which splits and re-lifts.
void homotopy_lift(const FpField& F, LiftedBranch& branch, const Slp& B,
                   size_t target_prec);

// CRT-merge the lifted branches over K[Y]/<R0.w> and rebuild the moving
// parametrization (w(T,Y), v_i(T,Y)) through traces of powers of the
// lifted linear form; then reconstruct every coefficient as a fraction.
SeriesParam homotopy_merge_and_parametrize(const FpField& F, const ZeroDimParam& R0,
                                           const std::vector<LiftedBranch>& branches,
                                           size_t prec);
RatParam homotopy_rational_reconstruct(const FpField& F, const SeriesParam& sp,
                                       uint64_t e);

// Limits of the bounded solution paths at T = 1, as a parametrization
// sharing lambda. Implements the cleared-denominator specialization with
// multiplicity strata; failures report Degenerate and the caller picks a
// fresh lambda.
ZeroDimParam homotopy_limit_at_one(const FpField& F, const RatParam& rp,
                                   const std::vector<Fp>& lambda);

// Full pipeline, isolated-point filter (dual-space test with mu = c).
// Single attempt; throws RetryError on recoverable failure.
ZeroDimParam homotopy_attempt(const FpField& F, const HomotopyInstance& inst,
                              bool simple_filter);

// Attempt with an internal separating-form retry loop: Degenerate
// failures re-randomize lambda (reparametrizing R0) up to retry_budget.
ZeroDimParam homotopy_run_isolated(const FieldCtx& ctx, const HomotopyInstance& inst,
                                   Rng& rng);
ZeroDimParam homotopy_run_simple(const FieldCtx& ctx, const HomotopyInstance& inst,
                                 Rng& rng);

// True iff the Jacobian of the n-input system has rank n at every point
// of the parametrization (dynamic evaluation over the factors).
bool jacobian_full_rank_everywhere(const FpField& F, const ZeroDimParam& r,
                                   const Slp& system);

}  // namespace detsolve

#endif

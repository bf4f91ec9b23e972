#ifndef DETSOLVE_DETSTART_HPP
#define DETSOLVE_DETSTART_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "detsolve/homotopy.hpp"

namespace detsolve {

using BigInt = boost::multiprecision::cpp_int;

struct InvalidProfileError : std::runtime_error {
    explicit InvalidProfileError(const std::string& what) : std::runtime_error(what) {}
};

// Shape and degree data of one determinantal problem: a p x q matrix,
// s side equations, n = q - p + s + 1 variables.
struct DegreeProfile {
    size_t p = 0, q = 0, s = 0, n = 0;
    std::vector<uint64_t> cdeg;  // q column degrees
    std::vector<uint64_t> rdeg;  // p row degrees
    std::vector<uint64_t> gdeg;  // s side-equation degrees

    void validate() const;
};

// E_k, elementary symmetric polynomial of the values.
BigInt elem_sym(size_t k, const std::vector<uint64_t>& vals);
// S_k, complete homogeneous symmetric polynomial of the values.
BigInt complete_sym(size_t k, const std::vector<uint64_t>& vals);

// c / c' bound the isolated points (column/row profile); e / e' bound the
// degree of the homotopy curve.
struct SolveBounds {
    BigInt c, cprime, e, eprime;
};
SolveBounds compute_bounds(const DegreeProfile& profile);

// Affine linear form c0 + sum coef_i X_i.
struct LinearForm {
    Fp c0;
    std::vector<Fp> coef;
};
using LinearFormProduct = std::vector<LinearForm>;

// Start data for the column-degree homotopy: the Vandermonde-scaled
// column products L, the side products K, the enumerated start
// parametrization, and the blended program B(T,X).
struct ColumnStart {
    std::vector<LinearFormProduct> L;  // one product per column
    std::vector<LinearFormProduct> K;  // one product per side equation
    ZeroDimParam R0;
    Slp B;
};

ColumnStart build_column_start(const FieldCtx& ctx, const DegreeProfile& profile,
                               const Slp& F_slp, const Slp& G_slp, Rng& rng);

// Start data for the row-degree homotopy: N has a diagonal block and
// dense columns p+1..q; entry (i,j) carries rdeg_i linear factors.
struct RowStart {
    std::vector<std::vector<LinearFormProduct>> N;  // p x q, empty = structural zero
    std::vector<LinearFormProduct> K;
    Slp B;
};

RowStart build_row_start(const FieldCtx& ctx, const DegreeProfile& profile,
                         const Slp& F_slp, const Slp& G_slp, Rng& rng);

// Solve V_p(N) for an N-shaped matrix (s = 0) by the recursive branch
// enumeration: eliminate diagonal factors, recurse on dense submatrices,
// re-add coordinates and combine. Output uses lambda_target.
ZeroDimParam row_degree_diagonal(const FieldCtx& ctx,
                                 const std::vector<std::vector<LinearFormProduct>>& N,
                                 size_t n_vars, const std::vector<Fp>& lambda_target,
                                 Rng& rng, int depth = 0);

struct SolveStats {
    int retries = 0;
};

// Column-degree pipeline: start construction + homotopy, retried with
// fresh randomness up to the context budget.
ZeroDimParam column_degree(const FieldCtx& ctx, const Slp& F_slp, const Slp& G_slp,
                           const DegreeProfile& profile, bool simple, Rng& rng,
                           SolveStats* stats = nullptr);

// Row-degree pipeline (recursive start construction).
ZeroDimParam row_degree(const FieldCtx& ctx, const Slp& F_slp, const Slp& G_slp,
                        const DegreeProfile& profile, bool simple, Rng& rng,
                        SolveStats* stats = nullptr, int depth = 0);

// Shared helpers, exposed for tests.
Fp linear_form_eval(const FpField& F, const LinearForm& f, const std::vector<Fp>& x);
uint32_t emit_linear_form(SlpBuilder& b, const LinearForm& f,
                          const std::vector<uint32_t>& xslots);
uint32_t emit_form_product(SlpBuilder& b, const LinearFormProduct& prod,
                           const std::vector<uint32_t>& xslots);

}  // namespace detsolve

#endif

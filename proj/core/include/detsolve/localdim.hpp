#ifndef DETSOLVE_LOCALDIM_HPP
#define DETSOLVE_LOCALDIM_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "detsolve/linalg.hpp"
#include "detsolve/rings.hpp"
#include "detsolve/slp.hpp"

namespace detsolve {

struct NotARootError : std::runtime_error {
    NotARootError() : std::runtime_error("point is not a root of the system") {}
};

// Triangular basis of (a stage of) the local dual space at the origin.
// M[k].at(i,j) holds lambda^{(k)}_{i+1,j+1}, the coefficients of
// X_k . beta_{i+1} = sum_{j<i} lambda^{(k)}_{i+1,j+1} beta_{j+1}; the
// matrices are strictly lower triangular and pairwise commute.
// beta_1 is evaluation at the origin, encoded by (beta_i(1)) = e_1.
template <class R>
struct DualBasis {
    size_t n = 0;
    std::vector<Mat<typename R::Elem>> M;  // n matrices, s x s
    std::vector<size_t> block_sizes;       // e_1 < e_2 < ...

    size_t size() const { return M.empty() ? 0 : M[0].rows; }

    static DualBasis initial(const R& ring, size_t n_vars) {
        DualBasis b;
        b.n = n_vars;
        b.M.assign(n_vars, Mat<typename R::Elem>(1, 1, ring.zero()));
        b.block_sizes = {1};
        return b;
    }
};

// beta_i(h_r) for all basis functionals and all outputs of prog:
// evaluate prog on the commuting multiplication matrices and read the
// action on e_1. `params` are the coordinates of the expansion point
// (prog is the translated system); `zero_after` truncates inputs
// X_{k+1},...,X_n to zero for the divided-difference equations.
template <class R>
Mat<typename R::Elem> eval_duals(const R& ring, const DualBasis<R>& basis,
                                 const Slp& prog,
                                 const std::vector<typename R::Elem>& params,
                                 size_t zero_after = SIZE_MAX) {
    using E = typename R::Elem;
    const size_t s = basis.size();
    MatAlg<R> alg(ring, s);
    std::vector<Mat<E>> inputs(basis.n, alg.zero());
    for (size_t k = 0; k < basis.n; ++k)
        if (k < zero_after) inputs[k] = basis.M[k];
    std::vector<Mat<E>> mp;
    mp.reserve(params.size());
    for (const E& p : params) {
        Mat<E> pm = alg.zero();
        for (size_t i = 0; i < s; ++i) pm.at(i, i) = p;
        mp.push_back(std::move(pm));
    }
    auto outs = slp_eval(prog, alg, std::span<const Mat<E>>(inputs),
                         std::span<const Mat<E>>(mp));
    Mat<E> res(s, outs.size(), ring.zero());
    for (size_t r = 0; r < outs.size(); ++r)
        for (size_t i = 0; i < s; ++i) res.at(i, r) = outs[r].at(i, 0);
    return res;
}

enum class ExtendStatus { Extended, Stable, ExceededBound };

namespace localdim_detail {

// Incremental row basis used to quotient the nullspace of the candidate
// system by the lambda-vectors of functionals already found. Stored rows
// are normalized and keyed by their leading column, so reducing a vector
// strictly advances its leading index.
template <class R>
class RowReducer {
public:
    explicit RowReducer(const R& ring) : ring_(&ring) {}

    // Reduces v against the rows seen so far; if a nonzero residue is
    // left it joins the basis and the call returns the residue.
    std::optional<std::vector<typename R::Elem>> insert(
        std::vector<typename R::Elem> v) {
        using E = typename R::Elem;
        while (true) {
            size_t lead = v.size();
            for (size_t j = 0; j < v.size(); ++j) {
                if (!ring_->is_zero(v[j])) {
                    lead = j;
                    break;
                }
            }
            if (lead == v.size()) return std::nullopt;
            auto it = rows_.find(lead);
            if (it == rows_.end()) {
                E pinv = ring_->inv(v[lead]);
                for (size_t j = lead; j < v.size(); ++j) v[j] = ring_->mul(pinv, v[j]);
                rows_.emplace(lead, v);
                return v;
            }
            const std::vector<E>& row = it->second;
            E c = v[lead];
            for (size_t j = lead; j < v.size(); ++j)
                v[j] = ring_->sub(v[j], ring_->mul(c, row[j]));
        }
    }

private:
    const R* ring_;
    std::map<size_t, std::vector<typename R::Elem>> rows_;
};

}  // namespace localdim_detail

// One step of the dual-space iteration. Builds the homogeneous system in
// the n*e unknowns lambda^{(k)}_j: commutation constraints for each pair
// k < k', plus one equation per generator with coefficients
// (X_k^{-1} . beta_i)(c_j(X_1,...,X_k,0,...,0)) obtained through the
// divided-difference transform. The nullspace is quotiented by the span
// of the vectors of the known functionals beta_2..beta_e; the residue
// classes are the next generation.
template <class R>
ExtendStatus dualbasis_extend(const R& ring, DualBasis<R>& basis,
                              const Slp& translated_system,
                              const std::vector<typename R::Elem>& params,
                              size_t mu) {
    using E = typename R::Elem;
    const size_t n = basis.n;
    const size_t e = basis.size();
    const size_t m = translated_system.outputs.size();
    const size_t cols = n * e;

    size_t comm_rows = e * (n * (n - 1) / 2);
    Mat<E> T(comm_rows + m, cols, ring.zero());
    size_t row = 0;
    for (size_t k = 0; k < n; ++k) {
        for (size_t kp = k + 1; kp < n; ++kp) {
            for (size_t r = 0; r < e; ++r) {
                for (size_t j = 0; j < e; ++j) {
                    T.at(row, k * e + j) = basis.M[kp].at(j, r);
                    T.at(row, kp * e + j) = ring.neg(basis.M[k].at(j, r));
                }
                ++row;
            }
        }
    }
    for (size_t k = 0; k < n; ++k) {
        Slp dd = slp_divided_difference(translated_system, static_cast<uint32_t>(k));
        Mat<E> D = eval_duals(ring, basis, dd, params, k + 1);
        for (size_t j = 0; j < m; ++j)
            for (size_t i = 0; i < e; ++i)
                T.at(row + j, k * e + i) = ring.add(T.at(row + j, k * e + i), D.at(i, j));
    }

    auto null = nullspace(ring, std::move(T));

    localdim_detail::RowReducer<R> red(ring);
    for (size_t i = 1; i < e; ++i) {
        std::vector<E> known(cols, ring.zero());
        for (size_t k = 0; k < n; ++k)
            for (size_t j = 0; j < e; ++j) known[k * e + j] = basis.M[k].at(i, j);
        red.insert(std::move(known));
    }
    std::vector<std::vector<E>> fresh;
    for (auto& v : null) {
        auto residue = red.insert(std::move(v));
        if (residue) fresh.push_back(std::move(*residue));
    }

    if (fresh.empty()) return ExtendStatus::Stable;
    size_t snew = e + fresh.size();
    if (snew > mu) return ExtendStatus::ExceededBound;

    for (size_t k = 0; k < n; ++k) {
        Mat<E> Mk(snew, snew, ring.zero());
        for (size_t i = 0; i < e; ++i)
            for (size_t j = 0; j < e; ++j) Mk.at(i, j) = basis.M[k].at(i, j);
        for (size_t t = 0; t < fresh.size(); ++t)
            for (size_t j = 0; j < e; ++j) Mk.at(e + t, j) = fresh[t][k * e + j];
        basis.M[k] = std::move(Mk);
    }
    basis.block_sizes.push_back(snew);
    return ExtendStatus::Extended;
}

// Decides whether the point bound to `params` is isolated in the zero
// set of the system, under the promise that its multiplicity is at most
// mu if it is isolated. `translated_system` must compute C(X + x) with x
// passed through params; over a quotient ring the test covers all points
// of a parametrization at once and zero-divisor splits propagate to the
// caller.
template <class R>
bool dual_space_bounded(const R& ring, const Slp& translated_system,
                        const std::vector<typename R::Elem>& params, size_t mu) {
    if (mu == 0) throw std::invalid_argument("multiplicity bound must be >= 1");
    DualBasis<R> basis = DualBasis<R>::initial(ring, translated_system.n_inputs);
    while (true) {
        switch (dualbasis_extend(ring, basis, translated_system, params, mu)) {
            case ExtendStatus::Stable: return true;
            case ExtendStatus::ExceededBound: return false;
            case ExtendStatus::Extended: break;
        }
    }
}

// Point version over the base field; asserts membership first.
inline bool is_isolated(const FpField& F, const Slp& system, const std::vector<Fp>& x,
                        size_t mu) {
    auto vals = slp_eval(system, F, std::span<const Fp>(x));
    for (Fp val : vals)
        if (!F.is_zero(val)) throw NotARootError();
    Slp translated = slp_translate_inputs(system);
    return dual_space_bounded(F, translated, x, mu);
}

}  // namespace detsolve

#endif

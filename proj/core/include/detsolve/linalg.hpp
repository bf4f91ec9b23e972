#ifndef DETSOLVE_LINALG_HPP
#define DETSOLVE_LINALG_HPP

#include <cstddef>
#include <vector>

#include "detsolve/field.hpp"

namespace detsolve {

template <class E>
struct Mat {
    size_t rows = 0, cols = 0;
    std::vector<E> a;

    Mat() = default;
    Mat(size_t r, size_t c, E fill = E{}) : rows(r), cols(c), a(r * c, fill) {}

    E& at(size_t i, size_t j) { return a[i * cols + j]; }
    const E& at(size_t i, size_t j) const { return a[i * cols + j]; }
};

enum class SolveStatus { Unique, Inconsistent, Underdetermined };

template <class E>
struct SolveResult {
    SolveStatus status;
    std::vector<E> x;  // valid iff status == Unique
};

// Dense Gaussian elimination over any commutative ring context that can
// invert the pivots it is handed. Pivots are chosen deterministically
// (first nonzero entry in the current column, scanning down) so runs are
// reproducible. Over quotient rings a nonzero pivot may still be a zero
// divisor; the ring's inv() then throws and the caller splits.
//
// Ring requirements: Elem, zero(), one(), add, sub, mul, neg, inv, is_zero.

namespace linalg_detail {

// Pivot admissibility: rings can veto entries that are nonzero but not
// safely invertible at this layer (a series with constant term zero).
template <class R>
bool pivot_candidate(const R& ring, const typename R::Elem& e) {
    if constexpr (requires { ring.pivot_ok(e); })
        return ring.pivot_ok(e);
    else
        return !ring.is_zero(e);
}

// In-place reduced row echelon form of [rows x cols]; returns pivot
// column indices in order.
template <class R>
std::vector<size_t> rref(const R& ring, Mat<typename R::Elem>& m) {
    using E = typename R::Elem;
    std::vector<size_t> pivots;
    size_t prow = 0;
    for (size_t col = 0; col < m.cols && prow < m.rows; ++col) {
        size_t sel = m.rows;
        for (size_t i = prow; i < m.rows; ++i) {
            if (pivot_candidate(ring, m.at(i, col))) {
                sel = i;
                break;
            }
        }
        if (sel == m.rows) continue;
        if (sel != prow) {
            for (size_t j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(prow, j));
        }
        E pinv = ring.inv(m.at(prow, col));
        for (size_t j = col; j < m.cols; ++j) m.at(prow, j) = ring.mul(pinv, m.at(prow, j));
        for (size_t i = 0; i < m.rows; ++i) {
            if (i == prow || ring.is_zero(m.at(i, col))) continue;
            E f = m.at(i, col);
            for (size_t j = col; j < m.cols; ++j)
                m.at(i, j) = ring.sub(m.at(i, j), ring.mul(f, m.at(prow, j)));
        }
        pivots.push_back(col);
        ++prow;
    }
    return pivots;
}

}  // namespace linalg_detail

template <class R>
size_t rank(const R& ring, Mat<typename R::Elem> m) {
    return linalg_detail::rref(ring, m).size();
}

// Basis of ker(A) (right nullspace), each vector of length A.cols.
template <class R>
std::vector<std::vector<typename R::Elem>> nullspace(const R& ring,
                                                     Mat<typename R::Elem> m) {
    using E = typename R::Elem;
    std::vector<size_t> pivots = linalg_detail::rref(ring, m);
    std::vector<bool> is_pivot(m.cols, false);
    for (size_t c : pivots) is_pivot[c] = true;

    std::vector<std::vector<E>> basis;
    for (size_t free = 0; free < m.cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<E> v(m.cols, ring.zero());
        v[free] = ring.one();
        for (size_t k = 0; k < pivots.size(); ++k)
            v[pivots[k]] = ring.neg(m.at(k, free));
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class R>
SolveResult<typename R::Elem> solve_linear(const R& ring,
                                           const Mat<typename R::Elem>& A,
                                           const std::vector<typename R::Elem>& b) {
    using E = typename R::Elem;
    Mat<E> aug(A.rows, A.cols + 1, ring.zero());
    for (size_t i = 0; i < A.rows; ++i) {
        for (size_t j = 0; j < A.cols; ++j) aug.at(i, j) = A.at(i, j);
        aug.at(i, A.cols) = b[i];
    }
    std::vector<size_t> pivots = linalg_detail::rref(ring, aug);
    if (!pivots.empty() && pivots.back() == A.cols)
        return {SolveStatus::Inconsistent, {}};
    if (pivots.size() < A.cols) return {SolveStatus::Underdetermined, {}};
    std::vector<E> x(A.cols, ring.zero());
    for (size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = aug.at(k, A.cols);
    return {SolveStatus::Unique, std::move(x)};
}

template <class R>
std::vector<typename R::Elem> mat_vec(const R& ring, const Mat<typename R::Elem>& A,
                                      const std::vector<typename R::Elem>& x) {
    std::vector<typename R::Elem> y(A.rows, ring.zero());
    for (size_t i = 0; i < A.rows; ++i)
        for (size_t j = 0; j < A.cols; ++j)
            y[i] = ring.add(y[i], ring.mul(A.at(i, j), x[j]));
    return y;
}

}  // namespace detsolve

#endif

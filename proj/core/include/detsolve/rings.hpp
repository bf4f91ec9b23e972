#ifndef DETSOLVE_RINGS_HPP
#define DETSOLVE_RINGS_HPP

#include <stdexcept>
#include <vector>

#include "detsolve/field.hpp"
#include "detsolve/linalg.hpp"
#include "detsolve/upoly.hpp"

namespace detsolve {

// Raised when a quotient-ring inversion meets a zero divisor. Carries
// the discovered monic nontrivial factor of the modulus; dynamic
// evaluation drivers split the parametrization on it and replay.
struct ZeroDivisorError : std::runtime_error {
    UPoly factor;
    explicit ZeroDivisorError(UPoly f)
        : std::runtime_error("zero divisor in quotient ring"), factor(std::move(f)) {}
};

// K[Y]/<w> for monic w. Elements are canonical representatives of
// degree < deg w.
class QuotRing {
public:
    using Elem = UPoly;

    QuotRing(const FpField& F, UPoly w) : F_(&F), w_(std::move(w)) {}

    const FpField& field() const { return *F_; }
    const UPoly& modulus() const { return w_; }
    size_t dim() const { return w_.size() - 1; }  // deg w

    Elem zero() const { return {}; }
    Elem one() const { return dim() == 0 ? Elem{} : Elem{F_->one()}; }
    Elem from_int(int64_t x) const { return embed(UPoly{F_->from_int(x)}); }
    Elem from_fp(Fp c) const { return embed(UPoly{c}); }
    Elem embed(UPoly a) const {
        poly_trim(a);
        if (poly_deg(a) >= poly_deg(w_)) a = poly_mod(*F_, a, w_);
        return a;
    }

    Elem add(const Elem& a, const Elem& b) const { return poly_add(*F_, a, b); }
    Elem sub(const Elem& a, const Elem& b) const { return poly_sub(*F_, a, b); }
    Elem neg(const Elem& a) const { return poly_neg(*F_, a); }
    Elem mul(const Elem& a, const Elem& b) const { return poly_mulmod(*F_, a, b, w_); }
    Elem inv(const Elem& a) const {
        if (dim() == 0) return {};  // trivial ring
        return poly_invmod(*F_, a, w_);
    }
    bool is_zero(const Elem& a) const { return a.empty(); }
    bool pivot_ok(const Elem& a) const { return !a.empty(); }

private:
    const FpField* F_;
    UPoly w_;  // monic
};

// Truncated power series B[[T]] mod T^prec over a base ring B.
// Coefficient vectors may be shorter than prec (implicit zeros).
template <class B>
class SeriesRing {
public:
    using Base = B;
    using Elem = std::vector<typename B::Elem>;

    SeriesRing(const B& base, size_t prec) : base_(&base), prec_(prec) {}

    const B& base() const { return *base_; }
    size_t prec() const { return prec_; }

    Elem zero() const { return {}; }
    Elem one() const { return Elem{base_->one()}; }
    Elem from_int(int64_t x) const { return Elem{base_->from_int(x)}; }
    Elem from_base(typename B::Elem c) const { return Elem{std::move(c)}; }
    // The series T itself.
    Elem t() const {
        if (prec_ < 2) return {};
        return Elem{base_->zero(), base_->one()};
    }

    typename B::Elem coeff(const Elem& a, size_t i) const {
        return i < a.size() ? a[i] : base_->zero();
    }

    Elem add(const Elem& a, const Elem& b) const {
        Elem r(std::max(a.size(), b.size()), base_->zero());
        for (size_t i = 0; i < r.size(); ++i)
            r[i] = base_->add(coeff(a, i), coeff(b, i));
        return r;
    }
    Elem sub(const Elem& a, const Elem& b) const {
        Elem r(std::max(a.size(), b.size()), base_->zero());
        for (size_t i = 0; i < r.size(); ++i)
            r[i] = base_->sub(coeff(a, i), coeff(b, i));
        return r;
    }
    Elem neg(const Elem& a) const {
        Elem r(a.size(), base_->zero());
        for (size_t i = 0; i < a.size(); ++i) r[i] = base_->neg(a[i]);
        return r;
    }
    Elem mul(const Elem& a, const Elem& b) const {
        if (a.empty() || b.empty()) return {};
        size_t n = std::min(prec_, a.size() + b.size() - 1);
        Elem r(n, base_->zero());
        for (size_t i = 0; i < a.size() && i < n; ++i)
            for (size_t j = 0; j < b.size() && i + j < n; ++j)
                r[i + j] = base_->add(r[i + j], base_->mul(a[i], b[j]));
        return r;
    }
    // Requires an invertible constant term; the base ring's inv reports
    // zero divisors where applicable.
    Elem inv(const Elem& a) const {
        typename B::Elem u0 = base_->inv(coeff(a, 0));
        Elem r(prec_, base_->zero());
        r[0] = u0;
        for (size_t k = 1; k < prec_; ++k) {
            typename B::Elem acc = base_->zero();
            size_t imax = std::min(k, a.empty() ? size_t{0} : a.size() - 1);
            for (size_t i = 1; i <= imax; ++i)
                acc = base_->add(acc, base_->mul(a[i], r[k - i]));
            r[k] = base_->neg(base_->mul(u0, acc));
        }
        return r;
    }
    bool is_zero(const Elem& a) const {
        for (const auto& c : a)
            if (!base_->is_zero(c)) return false;
        return true;
    }
    bool pivot_ok(const Elem& a) const {
        if (a.empty()) return false;
        if constexpr (requires(const B& b, const typename B::Elem& e) { b.pivot_ok(e); })
            return base_->pivot_ok(a[0]);
        else
            return !base_->is_zero(a[0]);
    }

    Elem truncate(Elem a, size_t k) const {
        if (a.size() > k) a.resize(k);
        return a;
    }

private:
    const B* base_;
    size_t prec_;
};

// s x s matrices over a base ring, as a ring context for evaluating
// straight-line programs on commuting multiplication matrices.
template <class B>
class MatAlg {
public:
    using Elem = Mat<typename B::Elem>;

    MatAlg(const B& base, size_t s) : base_(&base), s_(s) {}

    const B& base() const { return *base_; }
    size_t dim() const { return s_; }

    Elem zero() const { return Elem(s_, s_, base_->zero()); }
    Elem one() const {
        Elem m(s_, s_, base_->zero());
        for (size_t i = 0; i < s_; ++i) m.at(i, i) = base_->one();
        return m;
    }
    Elem from_int(int64_t x) const {
        Elem m(s_, s_, base_->zero());
        for (size_t i = 0; i < s_; ++i) m.at(i, i) = base_->from_int(x);
        return m;
    }
    Elem add(const Elem& a, const Elem& b) const {
        Elem r(s_, s_, base_->zero());
        for (size_t i = 0; i < s_ * s_; ++i) r.a[i] = base_->add(a.a[i], b.a[i]);
        return r;
    }
    Elem sub(const Elem& a, const Elem& b) const {
        Elem r(s_, s_, base_->zero());
        for (size_t i = 0; i < s_ * s_; ++i) r.a[i] = base_->sub(a.a[i], b.a[i]);
        return r;
    }
    Elem neg(const Elem& a) const {
        Elem r(s_, s_, base_->zero());
        for (size_t i = 0; i < s_ * s_; ++i) r.a[i] = base_->neg(a.a[i]);
        return r;
    }
    Elem mul(const Elem& a, const Elem& b) const {
        Elem r(s_, s_, base_->zero());
        for (size_t i = 0; i < s_; ++i)
            for (size_t k = 0; k < s_; ++k) {
                const auto& aik = a.at(i, k);
                if (base_->is_zero(aik)) continue;
                for (size_t j = 0; j < s_; ++j)
                    r.at(i, j) = base_->add(r.at(i, j), base_->mul(aik, b.at(k, j)));
            }
        return r;
    }
    Elem inv(const Elem&) const {
        throw std::logic_error("matrix-algebra inversion not supported");
    }
    bool is_zero(const Elem& a) const {
        for (const auto& c : a.a)
            if (!base_->is_zero(c)) return false;
        return true;
    }

private:
    const B* base_;
    size_t s_;
};

// Dual numbers K[eps]/<eps^2>; test support for derivative transforms.
class DualRing {
public:
    struct Elem {
        Fp a, b;  // a + eps*b
    };

    explicit DualRing(const FpField& F) : F_(&F) {}

    Elem zero() const { return {F_->zero(), F_->zero()}; }
    Elem one() const { return {F_->one(), F_->zero()}; }
    Elem from_int(int64_t x) const { return {F_->from_int(x), F_->zero()}; }
    Elem make(Fp a, Fp b) const { return {a, b}; }
    Elem add(const Elem& x, const Elem& y) const {
        return {F_->add(x.a, y.a), F_->add(x.b, y.b)};
    }
    Elem sub(const Elem& x, const Elem& y) const {
        return {F_->sub(x.a, y.a), F_->sub(x.b, y.b)};
    }
    Elem neg(const Elem& x) const { return {F_->neg(x.a), F_->neg(x.b)}; }
    Elem mul(const Elem& x, const Elem& y) const {
        return {F_->mul(x.a, y.a),
                F_->add(F_->mul(x.a, y.b), F_->mul(x.b, y.a))};
    }
    Elem inv(const Elem& x) const {
        Fp ia = F_->inv(x.a);
        return {ia, F_->neg(F_->mul(F_->mul(ia, ia), x.b))};
    }
    bool is_zero(const Elem& x) const { return F_->is_zero(x.a) && F_->is_zero(x.b); }

private:
    const FpField* F_;
};

}  // namespace detsolve

#endif

#include "detsolve/oracle.hpp"

#include "detsolve/linalg.hpp"

namespace detsolve {

MPolyE MPolyRing::from_int(int64_t c) const {
    MPolyE r;
    Fp v = F_->from_int(c);
    if (!F_->is_zero(v)) r.terms[std::vector<uint32_t>(n_, 0)] = v;
    return r;
}

MPolyE MPolyRing::var(size_t i) const {
    MPolyE r;
    std::vector<uint32_t> e(n_, 0);
    e[i] = 1;
    r.terms[e] = F_->one();
    return r;
}

MPolyE MPolyRing::add(const Elem& a, const Elem& b) const {
    MPolyE r = a;
    for (const auto& [e, c] : b.terms) {
        auto it = r.terms.find(e);
        if (it == r.terms.end()) {
            r.terms[e] = c;
        } else {
            it->second = F_->add(it->second, c);
            if (F_->is_zero(it->second)) r.terms.erase(it);
        }
    }
    return r;
}

MPolyE MPolyRing::neg(const Elem& a) const {
    MPolyE r;
    for (const auto& [e, c] : a.terms) r.terms[e] = F_->neg(c);
    return r;
}

MPolyE MPolyRing::sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }

MPolyE MPolyRing::mul(const Elem& a, const Elem& b) const {
    MPolyE r;
    for (const auto& [ea, ca] : a.terms)
        for (const auto& [eb, cb] : b.terms) {
            std::vector<uint32_t> e(n_);
            for (size_t k = 0; k < n_; ++k) e[k] = ea[k] + eb[k];
            Fp prod = F_->mul(ca, cb);
            auto it = r.terms.find(e);
            if (it == r.terms.end()) {
                if (!F_->is_zero(prod)) r.terms[e] = prod;
            } else {
                it->second = F_->add(it->second, prod);
                if (F_->is_zero(it->second)) r.terms.erase(it);
            }
        }
    return r;
}

std::vector<MPolyE> expand_slp(const FpField& F, const Slp& s) {
    MPolyRing R(F, s.n_inputs);
    std::vector<MPolyE> vars;
    for (size_t i = 0; i < s.n_inputs; ++i) vars.push_back(R.var(i));
    return slp_eval(s, R, std::span<const MPolyE>(vars));
}

MonomialBasis MonomialBasis::up_to(size_t n, uint32_t d) {
    MonomialBasis b;
    b.n = n;
    b.maxdeg = d;
    if (n == 0) return b;
    for (uint32_t total = 0; total <= d; ++total) {
        // compositions of `total` into n parts
        std::vector<uint32_t> e(n, 0);
        e[0] = total;
        while (true) {
            b.index[e] = b.monomials.size();
            b.monomials.push_back(e);
            size_t i = 0;
            while (i < n && e[i] == 0) ++i;
            if (i + 1 >= n) break;
            uint32_t head = e[i];
            e[i] = 0;
            e[i + 1] += 1;
            e[0] = head - 1;
        }
    }
    return b;
}

size_t local_multiplicity(const FpField& F, const std::vector<MPolyE>& polys,
                          size_t n_vars, uint32_t k) {
    if (k == 0) return 0;
    MonomialBasis basis = MonomialBasis::up_to(n_vars, k - 1);
    std::vector<std::vector<Fp>> rows;
    for (const MPolyE& c : polys) {
        for (const auto& mono : basis.monomials) {
            // x^mono * c, truncated past degree k-1
            std::vector<Fp> row(basis.size(), F.zero());
            bool nonzero = false;
            for (const auto& [e, coef] : c.terms) {
                std::vector<uint32_t> shifted(n_vars);
                uint32_t total = 0;
                for (size_t i = 0; i < n_vars; ++i) {
                    shifted[i] = e[i] + mono[i];
                    total += shifted[i];
                }
                if (total > k - 1) continue;
                row[basis.index.at(shifted)] = coef;
                nonzero = true;
            }
            if (nonzero) rows.push_back(std::move(row));
        }
    }
    Mat<Fp> m(rows.size(), basis.size(), F.zero());
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < basis.size(); ++j) m.at(i, j) = rows[i][j];
    return basis.size() - rank(F, m);
}

std::vector<std::vector<Fp>> enumerate_variety(const FpField& F, const Slp& fmat,
                                               size_t p, size_t q, const Slp& gsys,
                                               uint64_t budget) {
    const size_t n = fmat.n_inputs;
    uint64_t total = 1;
    for (size_t i = 0; i < n; ++i) {
        if (total > budget / F.prime()) throw TooLargeError();
        total *= F.prime();
    }
    if (total > budget) throw TooLargeError();

    std::vector<std::vector<Fp>> found;
    std::vector<Fp> x(n, F.zero());
    for (uint64_t idx = 0; idx < total; ++idx) {
        uint64_t t = idx;
        for (size_t i = 0; i < n; ++i) {
            x[i] = Fp{t % F.prime()};
            t /= F.prime();
        }
        bool ok = true;
        if (!gsys.outputs.empty()) {
            auto gv = slp_eval(gsys, F, std::span<const Fp>(x));
            for (Fp v : gv)
                if (!F.is_zero(v)) {
                    ok = false;
                    break;
                }
        }
        if (!ok) continue;
        auto fv = slp_eval(fmat, F, std::span<const Fp>(x));
        Mat<Fp> m(p, q, F.zero());
        for (size_t i = 0; i < p * q; ++i) m.a[i] = fv[i];
        if (rank(F, m) < p) found.push_back(x);
    }
    return found;
}

}  // namespace detsolve

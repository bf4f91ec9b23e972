#include "detsolve/slp.hpp"

#include <algorithm>

namespace detsolve {

void Slp::validate() const {
    for (size_t i = 0; i < instrs.size(); ++i) {
        const SlpInstr& it = instrs[i];
        switch (it.op) {
            case SlpOp::Input:
                if (it.a >= n_inputs) throw std::logic_error("slp: input index out of range");
                break;
            case SlpOp::Param:
                if (it.a >= n_params) throw std::logic_error("slp: param index out of range");
                break;
            case SlpOp::Const: break;
            case SlpOp::Add:
            case SlpOp::Sub:
            case SlpOp::Mul:
                if (it.a >= i || it.b >= i) throw std::logic_error("slp: operand after use");
                break;
        }
    }
    for (uint32_t o : outputs)
        if (o >= instrs.size()) throw std::logic_error("slp: output slot out of range");
}

uint32_t SlpBuilder::input(uint32_t i) {
    auto it = input_cache_.find(i);
    if (it != input_cache_.end()) return it->second;
    uint32_t s = emit({SlpOp::Input, i, 0, 0});
    input_cache_[i] = s;
    return s;
}

uint32_t SlpBuilder::param(uint32_t i) {
    auto it = param_cache_.find(i);
    if (it != param_cache_.end()) return it->second;
    uint32_t s = emit({SlpOp::Param, i, 0, 0});
    param_cache_[i] = s;
    return s;
}

uint32_t SlpBuilder::constant(int64_t c) {
    auto it = const_cache_.find(c);
    if (it != const_cache_.end()) return it->second;
    uint32_t s = emit({SlpOp::Const, 0, 0, c});
    const_cache_[c] = s;
    return s;
}

std::vector<uint32_t> SlpBuilder::splice(const Slp& prog,
                                         const std::vector<uint32_t>& input_slots) {
    if (input_slots.size() != prog.n_inputs)
        throw std::invalid_argument("splice: input slot count mismatch");
    std::vector<uint32_t> val(prog.instrs.size());
    for (size_t i = 0; i < prog.instrs.size(); ++i) {
        const SlpInstr& it = prog.instrs[i];
        switch (it.op) {
            case SlpOp::Input: val[i] = input_slots[it.a]; break;
            case SlpOp::Param: val[i] = param(it.a); break;
            case SlpOp::Const: val[i] = constant(it.cval); break;
            case SlpOp::Add: val[i] = add(val[it.a], val[it.b]); break;
            case SlpOp::Sub: val[i] = sub(val[it.a], val[it.b]); break;
            case SlpOp::Mul: val[i] = mul(val[it.a], val[it.b]); break;
        }
    }
    std::vector<uint32_t> outs;
    outs.reserve(prog.outputs.size());
    for (uint32_t o : prog.outputs) outs.push_back(val[o]);
    return outs;
}

uint32_t SlpBuilder::pow(uint32_t a, uint64_t k) {
    if (k == 0) return constant(1);
    uint32_t acc = 0;
    bool have = false;
    uint32_t sq = a;
    while (k) {
        if (k & 1) {
            acc = have ? mul(acc, sq) : sq;
            have = true;
        }
        k >>= 1;
        if (k) sq = mul(sq, sq);
    }
    return acc;
}

namespace {

// Builder wrapper that tracks which slots are the literal constants 0/1,
// so transforms can skip trivial algebra instead of bloating programs.
class ZeroAwareBuilder {
public:
    explicit ZeroAwareBuilder(uint32_t n_inputs, uint32_t n_params)
        : b_(n_inputs, n_params) {}

    uint32_t zero() { return constant(0); }
    uint32_t one() { return constant(1); }
    bool is_zero(uint32_t s) const { return s == zero_slot_; }

    uint32_t input(uint32_t i) { return b_.input(i); }
    uint32_t param(uint32_t i) { return b_.param(i); }
    uint32_t constant(int64_t c) {
        uint32_t s = b_.constant(c);
        if (c == 0) zero_slot_ = s;
        return s;
    }
    uint32_t add(uint32_t a, uint32_t b) {
        if (is_zero(a)) return b;
        if (is_zero(b)) return a;
        return b_.add(a, b);
    }
    uint32_t sub(uint32_t a, uint32_t b) {
        if (is_zero(b)) return a;
        return b_.sub(a, b);
    }
    uint32_t mul(uint32_t a, uint32_t b) {
        if (is_zero(a) || is_zero(b)) return constant(0);
        return b_.mul(a, b);
    }
    void output(uint32_t s) { b_.output(s); }
    Slp take() { return b_.take(); }

private:
    SlpBuilder b_;
    uint32_t zero_slot_ = UINT32_MAX;
};

}  // namespace

Slp slp_jacobian(const Slp& prog) {
    const uint32_t n = prog.n_inputs;
    ZeroAwareBuilder out(n, prog.n_params);
    std::vector<uint32_t> val(prog.instrs.size());
    // deriv[i*n + k] = slot of d(slot i)/dX_k
    std::vector<uint32_t> der(prog.instrs.size() * n);

    uint32_t z = out.constant(0);
    for (size_t i = 0; i < prog.instrs.size(); ++i) {
        const SlpInstr& it = prog.instrs[i];
        uint32_t* di = &der[i * n];
        switch (it.op) {
            case SlpOp::Input:
                val[i] = out.input(it.a);
                for (uint32_t k = 0; k < n; ++k) di[k] = (k == it.a) ? out.one() : z;
                break;
            case SlpOp::Param:
                val[i] = out.param(it.a);
                for (uint32_t k = 0; k < n; ++k) di[k] = z;
                break;
            case SlpOp::Const:
                val[i] = out.constant(it.cval);
                for (uint32_t k = 0; k < n; ++k) di[k] = z;
                break;
            case SlpOp::Add:
                val[i] = out.add(val[it.a], val[it.b]);
                for (uint32_t k = 0; k < n; ++k)
                    di[k] = out.add(der[it.a * n + k], der[it.b * n + k]);
                break;
            case SlpOp::Sub:
                val[i] = out.sub(val[it.a], val[it.b]);
                for (uint32_t k = 0; k < n; ++k)
                    di[k] = out.sub(der[it.a * n + k], der[it.b * n + k]);
                break;
            case SlpOp::Mul:
                val[i] = out.mul(val[it.a], val[it.b]);
                for (uint32_t k = 0; k < n; ++k) {
                    uint32_t t1 = out.mul(val[it.a], der[it.b * n + k]);
                    uint32_t t2 = out.mul(der[it.a * n + k], val[it.b]);
                    di[k] = out.add(t1, t2);
                }
                break;
        }
    }
    for (uint32_t o : prog.outputs) out.output(val[o]);
    for (uint32_t o : prog.outputs)
        for (uint32_t k = 0; k < n; ++k) out.output(der[o * n + k]);
    Slp r = out.take();
    r.validate();
    return r;
}

Slp slp_divided_difference(const Slp& prog, uint32_t k) {
    if (k >= prog.n_inputs)
        throw std::invalid_argument("divided difference: variable out of range");
    ZeroAwareBuilder out(prog.n_inputs, prog.n_params);
    std::vector<uint32_t> eta(prog.instrs.size()), nu(prog.instrs.size());
    uint32_t z = out.constant(0);
    uint32_t xk = UINT32_MAX;  // emitted lazily, only if a product needs it

    for (size_t i = 0; i < prog.instrs.size(); ++i) {
        const SlpInstr& it = prog.instrs[i];
        switch (it.op) {
            case SlpOp::Input:
                if (it.a == k) {
                    eta[i] = z;
                    nu[i] = out.one();
                } else {
                    eta[i] = out.input(it.a);
                    nu[i] = z;
                }
                break;
            case SlpOp::Param:
                eta[i] = out.param(it.a);
                nu[i] = z;
                break;
            case SlpOp::Const:
                eta[i] = out.constant(it.cval);
                nu[i] = z;
                break;
            case SlpOp::Add:
                eta[i] = out.add(eta[it.a], eta[it.b]);
                nu[i] = out.add(nu[it.a], nu[it.b]);
                break;
            case SlpOp::Sub:
                eta[i] = out.sub(eta[it.a], eta[it.b]);
                nu[i] = out.sub(nu[it.a], nu[it.b]);
                break;
            case SlpOp::Mul: {
                eta[i] = out.mul(eta[it.a], eta[it.b]);
                uint32_t t1 = out.mul(eta[it.a], nu[it.b]);
                uint32_t t2 = out.mul(nu[it.a], eta[it.b]);
                uint32_t t3 = out.mul(nu[it.a], nu[it.b]);
                if (!out.is_zero(t3)) {
                    if (xk == UINT32_MAX) xk = out.input(k);
                    t3 = out.mul(xk, t3);
                }
                nu[i] = out.add(out.add(t1, t2), t3);
                break;
            }
        }
    }
    for (uint32_t o : prog.outputs) out.output(nu[o]);
    Slp r = out.take();
    r.validate();
    return r;
}

std::vector<std::vector<size_t>> column_subsets(size_t q, size_t p) {
    std::vector<std::vector<size_t>> subsets;
    std::vector<size_t> cur(p);
    for (size_t i = 0; i < p; ++i) cur[i] = i;
    if (p > q) return subsets;
    while (true) {
        subsets.push_back(cur);
        // next lexicographic p-subset
        size_t i = p;
        while (i-- > 0) {
            if (cur[i] + 1 <= q - (p - i)) {
                ++cur[i];
                for (size_t j = i + 1; j < p; ++j) cur[j] = cur[j - 1] + 1;
                break;
            }
            if (i == 0) return subsets;
        }
    }
}

namespace {

// Division-free determinant of the matrix of slots, Samuelson-Berkowitz.
uint32_t berkowitz_det(ZeroAwareBuilder& out, const std::vector<uint32_t>& m, size_t p) {
    auto at = [&](size_t i, size_t j) { return m[i * p + j]; };
    if (p == 1) return at(0, 0);

    // C holds the characteristic polynomial coefficients of the leading
    // principal r x r submatrix, C[0] = 1 downward.
    std::vector<uint32_t> C = {out.one(), out.sub(out.constant(0), at(0, 0))};
    for (size_t r = 2; r <= p; ++r) {
        // Toeplitz column: t0 = 1, t1 = -A[r-1][r-1], t_i = -(R M^{i-2} S)
        std::vector<uint32_t> t(r + 1);
        t[0] = out.one();
        t[1] = out.sub(out.constant(0), at(r - 1, r - 1));
        std::vector<uint32_t> vec(r - 1);
        for (size_t i = 0; i < r - 1; ++i) vec[i] = at(i, r - 1);  // S
        for (size_t i = 2; i <= r; ++i) {
            uint32_t dot = out.constant(0);
            for (size_t j = 0; j < r - 1; ++j)
                dot = out.add(dot, out.mul(at(r - 1, j), vec[j]));
            t[i] = out.sub(out.constant(0), dot);
            if (i < r) {
                std::vector<uint32_t> nv(r - 1);
                for (size_t a = 0; a < r - 1; ++a) {
                    uint32_t acc = out.constant(0);
                    for (size_t b = 0; b < r - 1; ++b)
                        acc = out.add(acc, out.mul(at(a, b), vec[b]));
                    nv[a] = acc;
                }
                vec = std::move(nv);
            }
        }
        std::vector<uint32_t> Cn(r + 1);
        for (size_t i = 0; i <= r; ++i) {
            uint32_t acc = out.constant(0);
            for (size_t j = 0; j <= std::min(i, r - 1); ++j)
                acc = out.add(acc, out.mul(t[i - j], C[j]));
            Cn[i] = acc;
        }
        C = std::move(Cn);
    }
    uint32_t cp = C[p];
    return (p % 2 == 0) ? cp : out.sub(out.constant(0), cp);
}

}  // namespace

Slp slp_minors(const Slp& prog, size_t p, size_t q, size_t matrix_offset) {
    if (p > q) throw std::invalid_argument("minors: p > q");
    if (prog.outputs.size() < matrix_offset + p * q)
        throw std::invalid_argument("minors: not enough outputs for matrix");

    ZeroAwareBuilder out(prog.n_inputs, prog.n_params);
    // replay the original program
    std::vector<uint32_t> val(prog.instrs.size());
    for (size_t i = 0; i < prog.instrs.size(); ++i) {
        const SlpInstr& it = prog.instrs[i];
        switch (it.op) {
            case SlpOp::Input: val[i] = out.input(it.a); break;
            case SlpOp::Param: val[i] = out.param(it.a); break;
            case SlpOp::Const: val[i] = out.constant(it.cval); break;
            case SlpOp::Add: val[i] = out.add(val[it.a], val[it.b]); break;
            case SlpOp::Sub: val[i] = out.sub(val[it.a], val[it.b]); break;
            case SlpOp::Mul: val[i] = out.mul(val[it.a], val[it.b]); break;
        }
    }
    for (size_t i = 0; i < matrix_offset; ++i) out.output(val[prog.outputs[i]]);

    auto entry = [&](size_t i, size_t j) {
        return val[prog.outputs[matrix_offset + i * q + j]];
    };
    for (const auto& cols : column_subsets(q, p)) {
        std::vector<uint32_t> sub(p * p);
        for (size_t i = 0; i < p; ++i)
            for (size_t j = 0; j < p; ++j) sub[i * p + j] = entry(i, cols[j]);
        out.output(berkowitz_det(out, sub, p));
    }
    Slp r = out.take();
    r.validate();
    return r;
}

Slp slp_specialize_input(const Slp& prog, uint32_t input_idx, int64_t value) {
    Slp r;
    r.n_inputs = prog.n_inputs - 1;
    r.n_params = prog.n_params;
    r.instrs.reserve(prog.instrs.size());
    for (const SlpInstr& it : prog.instrs) {
        SlpInstr ni = it;
        if (it.op == SlpOp::Input) {
            if (it.a == input_idx) {
                ni = {SlpOp::Const, 0, 0, value};
            } else if (it.a > input_idx) {
                ni.a = it.a - 1;
            }
        }
        r.instrs.push_back(ni);
    }
    r.outputs = prog.outputs;
    r.validate();
    return r;
}

Slp slp_translate_inputs(const Slp& prog) {
    const uint32_t n = prog.n_inputs;
    SlpBuilder out(n, prog.n_params + n);
    std::vector<uint32_t> shifted(n);
    for (uint32_t i = 0; i < n; ++i)
        shifted[i] = out.add(out.input(i), out.param(prog.n_params + i));
    std::vector<uint32_t> val(prog.instrs.size());
    for (size_t i = 0; i < prog.instrs.size(); ++i) {
        const SlpInstr& it = prog.instrs[i];
        switch (it.op) {
            case SlpOp::Input: val[i] = shifted[it.a]; break;
            case SlpOp::Param: val[i] = out.param(it.a); break;
            case SlpOp::Const: val[i] = out.constant(it.cval); break;
            case SlpOp::Add: val[i] = out.add(val[it.a], val[it.b]); break;
            case SlpOp::Sub: val[i] = out.sub(val[it.a], val[it.b]); break;
            case SlpOp::Mul: val[i] = out.mul(val[it.a], val[it.b]); break;
        }
    }
    for (uint32_t o : prog.outputs) out.output(val[o]);
    Slp r = out.take();
    r.validate();
    return r;
}

Slp slp_restrict_outputs(const Slp& prog, const std::vector<size_t>& output_indices) {
    std::vector<bool> live(prog.instrs.size(), false);
    std::vector<uint32_t> keep;
    for (size_t oi : output_indices) {
        if (oi >= prog.outputs.size())
            throw std::invalid_argument("restrict: output index out of range");
        keep.push_back(prog.outputs[oi]);
        live[prog.outputs[oi]] = true;
    }
    for (size_t i = prog.instrs.size(); i-- > 0;) {
        if (!live[i]) continue;
        const SlpInstr& it = prog.instrs[i];
        if (it.op == SlpOp::Add || it.op == SlpOp::Sub || it.op == SlpOp::Mul) {
            live[it.a] = true;
            live[it.b] = true;
        }
    }
    Slp r;
    r.n_inputs = prog.n_inputs;
    r.n_params = prog.n_params;
    std::vector<uint32_t> remap(prog.instrs.size(), UINT32_MAX);
    for (size_t i = 0; i < prog.instrs.size(); ++i) {
        if (!live[i]) continue;
        SlpInstr ni = prog.instrs[i];
        if (ni.op == SlpOp::Add || ni.op == SlpOp::Sub || ni.op == SlpOp::Mul) {
            ni.a = remap[ni.a];
            ni.b = remap[ni.b];
        }
        remap[i] = static_cast<uint32_t>(r.instrs.size());
        r.instrs.push_back(ni);
    }
    for (uint32_t o : keep) r.outputs.push_back(remap[o]);
    r.validate();
    return r;
}

Slp slp_merge(const Slp& a, const Slp& b) {
    if (a.n_inputs != b.n_inputs || a.n_params != b.n_params)
        throw std::invalid_argument("merge: arity mismatch");
    Slp r = a;
    uint32_t off = static_cast<uint32_t>(a.instrs.size());
    for (const SlpInstr& it : b.instrs) {
        SlpInstr ni = it;
        if (ni.op == SlpOp::Add || ni.op == SlpOp::Sub || ni.op == SlpOp::Mul) {
            ni.a += off;
            ni.b += off;
        }
        r.instrs.push_back(ni);
    }
    for (uint32_t o : b.outputs) r.outputs.push_back(o + off);
    r.validate();
    return r;
}

std::vector<int64_t> slp_output_degrees(const Slp& prog) {
    std::vector<int64_t> deg(prog.instrs.size(), 0);
    for (size_t i = 0; i < prog.instrs.size(); ++i) {
        const SlpInstr& it = prog.instrs[i];
        switch (it.op) {
            case SlpOp::Input: deg[i] = 1; break;
            case SlpOp::Param: deg[i] = 0; break;
            case SlpOp::Const: deg[i] = 0; break;
            case SlpOp::Add:
            case SlpOp::Sub: deg[i] = std::max(deg[it.a], deg[it.b]); break;
            case SlpOp::Mul: deg[i] = deg[it.a] + deg[it.b]; break;
        }
    }
    std::vector<int64_t> out;
    out.reserve(prog.outputs.size());
    for (uint32_t o : prog.outputs) out.push_back(deg[o]);
    return out;
}

}  // namespace detsolve

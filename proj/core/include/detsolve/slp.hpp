#ifndef DETSOLVE_SLP_HPP
#define DETSOLVE_SLP_HPP

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "detsolve/field.hpp"

namespace detsolve {

// Straight-line program over +, -, *: a division-free arithmetic
// circuit. Instruction i defines slot i; operand slots always precede
// it. Constants are stored as integers so the same program can be
// evaluated over any prime field or K-algebra; Param slots are bound to
// ring elements at evaluation time (used for translating a system to a
// point that lives in an extension).
enum class SlpOp : uint8_t { Input, Param, Const, Add, Sub, Mul };

struct SlpInstr {
    SlpOp op;
    uint32_t a = 0, b = 0;
    int64_t cval = 0;
};

struct Slp {
    uint32_t n_inputs = 0;
    uint32_t n_params = 0;
    std::vector<SlpInstr> instrs;
    std::vector<uint32_t> outputs;

    // Number of arithmetic instructions (the sigma of complexity counts).
    size_t length() const {
        size_t n = 0;
        for (const auto& it : instrs)
            if (it.op == SlpOp::Add || it.op == SlpOp::Sub || it.op == SlpOp::Mul) ++n;
        return n;
    }
    void validate() const;
};

class SlpBuilder {
public:
    explicit SlpBuilder(uint32_t n_inputs, uint32_t n_params = 0) {
        s_.n_inputs = n_inputs;
        s_.n_params = n_params;
    }

    uint32_t input(uint32_t i);
    uint32_t param(uint32_t i);
    uint32_t constant(int64_t c);
    uint32_t add(uint32_t a, uint32_t b) { return emit({SlpOp::Add, a, b, 0}); }
    uint32_t sub(uint32_t a, uint32_t b) { return emit({SlpOp::Sub, a, b, 0}); }
    uint32_t mul(uint32_t a, uint32_t b) { return emit({SlpOp::Mul, a, b, 0}); }
    uint32_t neg(uint32_t a) { return sub(constant(0), a); }
    uint32_t pow(uint32_t a, uint64_t k);

    void output(uint32_t slot) { s_.outputs.push_back(slot); }
    uint32_t num_slots() const { return static_cast<uint32_t>(s_.instrs.size()); }

    // Replay another program's instructions with its inputs redirected to
    // the given slots; returns the slots its outputs land on.
    std::vector<uint32_t> splice(const Slp& prog, const std::vector<uint32_t>& input_slots);

    Slp take() {
        Slp out = std::move(s_);
        s_ = Slp{};
        return out;
    }

private:
    uint32_t emit(SlpInstr it) {
        s_.instrs.push_back(it);
        return static_cast<uint32_t>(s_.instrs.size() - 1);
    }
    Slp s_;
    std::map<uint32_t, uint32_t> input_cache_;
    std::map<uint32_t, uint32_t> param_cache_;
    std::map<int64_t, uint32_t> const_cache_;
};

template <class R>
std::vector<typename R::Elem> slp_eval(const Slp& prog, const R& ring,
                                       std::span<const typename R::Elem> inputs,
                                       std::span<const typename R::Elem> params = {}) {
    using E = typename R::Elem;
    if (inputs.size() != prog.n_inputs)
        throw std::invalid_argument("slp_eval: input arity mismatch");
    if (params.size() != prog.n_params)
        throw std::invalid_argument("slp_eval: parameter arity mismatch");
    std::vector<E> slot(prog.instrs.size());
    for (size_t i = 0; i < prog.instrs.size(); ++i) {
        const SlpInstr& it = prog.instrs[i];
        switch (it.op) {
            case SlpOp::Input: slot[i] = inputs[it.a]; break;
            case SlpOp::Param: slot[i] = params[it.a]; break;
            case SlpOp::Const: slot[i] = ring.from_int(it.cval); break;
            case SlpOp::Add: slot[i] = ring.add(slot[it.a], slot[it.b]); break;
            case SlpOp::Sub: slot[i] = ring.sub(slot[it.a], slot[it.b]); break;
            case SlpOp::Mul: slot[i] = ring.mul(slot[it.a], slot[it.b]); break;
        }
    }
    std::vector<E> out;
    out.reserve(prog.outputs.size());
    for (uint32_t o : prog.outputs) out.push_back(slot[o]);
    return out;
}

// Forward-mode differentiation: the result keeps the original outputs
// and appends, for each output j, the n partials d(out_j)/dX_i in input
// order. Length grows by O(n * sigma).
Slp slp_jacobian(const Slp& prog);

// Divided difference d_k(f) = (f - f|_{X_k=0}) / X_k for every output,
// via the (eta, nu) instruction-by-instruction rewrite.
Slp slp_divided_difference(const Slp& prog, uint32_t k);

// Maximal minors of the p x q matrix formed by outputs
// [matrix_offset, matrix_offset + p*q), row-major. The returned program
// outputs the first matrix_offset original outputs followed by the
// binom(q,p) minors, ordered lexicographically by column subset. Minors
// are computed division-free (Berkowitz) so the program stays valid
// over every coefficient ring.
Slp slp_minors(const Slp& prog, size_t p, size_t q, size_t matrix_offset = 0);

// Bind one input to an integer constant; later inputs shift down.
Slp slp_specialize_input(const Slp& prog, uint32_t input_idx, int64_t value);

// Replace each input X_i by X_i + P_{base+i} with fresh parameters, so
// the program computes f(X + x) for an evaluation-time point x.
Slp slp_translate_inputs(const Slp& prog);

// Keep only the selected outputs and drop instructions that become dead.
Slp slp_restrict_outputs(const Slp& prog, const std::vector<size_t>& output_indices);

// Concatenate two programs over the same inputs; outputs of `a` then `b`.
Slp slp_merge(const Slp& a, const Slp& b);

// Syntactic degree bound per output (deg of product = sum of degrees,
// of sum = max); exact for the generic inputs this solver targets.
std::vector<int64_t> slp_output_degrees(const Slp& prog);

// Lexicographic p-subsets of {0,...,q-1}, the shared minor ordering.
std::vector<std::vector<size_t>> column_subsets(size_t q, size_t p);

}  // namespace detsolve

#endif

#ifndef DETSOLVE_FIELD_HPP
#define DETSOLVE_FIELD_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace detsolve {

// Canonical representative of an element of F_p, value in [0, p).
// Arithmetic goes through FpField so the modulus is never duplicated
// into every element.
struct Fp {
    uint64_t v = 0;
    friend bool operator==(Fp a, Fp b) { return a.v == b.v; }
    friend bool operator!=(Fp a, Fp b) { return a.v != b.v; }
};

struct ZeroInverseError : std::runtime_error {
    ZeroInverseError() : std::runtime_error("inverse of zero in F_p") {}
};

// Largest prime below 2^62; verified by the primality check in FpField.
inline constexpr uint64_t kDefaultPrime = 4611686018427387847ULL;

// Word-size prime field. The prime must be odd and fit in 63 bits so
// that a+b never overflows and a*b fits in unsigned 128-bit.
class FpField {
public:
    using Elem = Fp;

    explicit FpField(uint64_t prime = kDefaultPrime);

    uint64_t prime() const { return p_; }

    Fp zero() const { return Fp{0}; }
    Fp one() const { return Fp{1}; }

    Fp from_int(int64_t x) const {
        if (x >= 0) return Fp{static_cast<uint64_t>(x) % p_};
        uint64_t r = static_cast<uint64_t>(-(x + 1)) % p_;  // avoids UB on INT64_MIN
        r = p_ - 1 - r;
        return r == p_ ? Fp{0} : Fp{r};
    }
    Fp from_uint(uint64_t x) const { return Fp{x % p_}; }

    Fp add(Fp a, Fp b) const {
        uint64_t s = a.v + b.v;
        if (s >= p_) s -= p_;
        return Fp{s};
    }
    Fp sub(Fp a, Fp b) const {
        return Fp{a.v >= b.v ? a.v - b.v : a.v + p_ - b.v};
    }
    Fp neg(Fp a) const { return a.v == 0 ? a : Fp{p_ - a.v}; }
    Fp mul(Fp a, Fp b) const {
        return Fp{static_cast<uint64_t>(
            (static_cast<unsigned __int128>(a.v) * b.v) % p_)};
    }
    Fp pow(Fp a, uint64_t e) const;
    // Extended-Euclid inverse; throws ZeroInverseError on a = 0.
    Fp inv(Fp a) const;

    bool is_zero(Fp a) const { return a.v == 0; }
    bool pivot_ok(Fp a) const { return a.v != 0; }

    static bool is_prime(uint64_t n);

private:
    uint64_t p_;
};

// Counter-based generator: every draw is a mix of (key, counter), and
// fork(label) derives an independent stream. Enumerated branches can
// therefore draw reproducible values regardless of execution order.
class Rng {
public:
    explicit Rng(uint64_t key) : key_(key) {}

    static uint64_t mix(uint64_t x);

    uint64_t next_u64() { return mix(key_ + 0x9E3779B97F4A7C15ULL * ++ctr_); }
    Fp next_fp(const FpField& f) { return f.from_uint(next_u64()); }
    // Nonzero draw, used where a vanishing coefficient would be degenerate.
    Fp next_fp_nonzero(const FpField& f) {
        Fp x = next_fp(f);
        while (f.is_zero(x)) x = next_fp(f);
        return x;
    }

    Rng fork(uint64_t label) const { return Rng(mix(key_ ^ mix(label + 0x6A09E667F3BCC909ULL))); }

private:
    uint64_t key_;
    uint64_t ctr_ = 0;
};

// Field, seed and retry policy shared by a whole solver run.
struct FieldCtx {
    FpField field;
    uint64_t seed = 1;
    int retry_budget = 16;

    explicit FieldCtx(uint64_t prime = kDefaultPrime, uint64_t seed_ = 1,
                      int retry_budget_ = 16)
        : field(prime), seed(seed_), retry_budget(retry_budget_) {}

    Rng rng(uint64_t label = 0) const { return Rng(Rng::mix(seed)).fork(label); }
};

}  // namespace detsolve

#endif

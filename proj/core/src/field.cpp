#include "detsolve/field.hpp"

namespace detsolve {

FpField::FpField(uint64_t prime) : p_(prime) {
    if (prime < 3 || prime % 2 == 0 || prime >= (1ULL << 63))
        throw std::invalid_argument("prime must be odd and below 2^63");
    if (!is_prime(prime))
        throw std::invalid_argument("not a prime: " + std::to_string(prime));
}

Fp FpField::pow(Fp a, uint64_t e) const {
    Fp r = one();
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

Fp FpField::inv(Fp a) const {
    if (a.v == 0) throw ZeroInverseError();
    // extended Euclid on (p, a); coefficients tracked mod p
    int64_t t = 0, newt = 1;
    uint64_t r = p_, newr = a.v;
    while (newr != 0) {
        uint64_t q = r / newr;
        int64_t tmpt = t - static_cast<int64_t>(q) * newt;
        t = newt;
        newt = tmpt;
        uint64_t tmpr = r - q * newr;
        r = newr;
        newr = tmpr;
    }
    // r == 1 since p is prime and a != 0
    return t < 0 ? Fp{static_cast<uint64_t>(t + static_cast<int64_t>(p_))}
                 : Fp{static_cast<uint64_t>(t)};
}

namespace {

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m) {
    uint64_t r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

// Deterministic Miller-Rabin; this base set is exact for all n < 2^64.
bool FpField::is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                       23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0) return n == q;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                       23ULL, 29ULL, 31ULL, 37ULL}) {
        uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

uint64_t Rng::mix(uint64_t x) {
    // splitmix64 finalizer
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace detsolve

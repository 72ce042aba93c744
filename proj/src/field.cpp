#include "recseq/field.hpp"

#include <bit>

#include "recseq/bigindex.hpp"

namespace recseq {

namespace {

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1;
    a %= m;
    while (e != 0) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

} // namespace

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    u64 d = n - 1;
    int s = std::countr_zero(d);
    d >>= s;
    // This witness set is deterministic for all 64-bit inputs.
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

FieldCtx::FieldCtx(u64 p) : p_(p) {
    if (p <= 2 || p >= (u64(1) << 62)) raise(errc::out_of_range, "FieldCtx: modulus must satisfy 2 < p < 2^62");
    if (!is_prime_u64(p)) raise(errc::non_prime, "FieldCtx: modulus is not prime");
    mersenne61_ = (p == M61);
    two_adicity_ = static_cast<unsigned>(std::countr_zero(p - 1));
    // w = a^((p-1)/2^s) has order dividing 2^s; order is exactly 2^s iff
    // w^(2^(s-1)) != 1. Scan small bases until one works (a non-residue).
    two_adic_root_ = 1;
    if (two_adicity_ >= 1) {
        u64 odd = (p - 1) >> two_adicity_;
        for (u64 a = 2;; ++a) {
            u64 w = powmod(a, odd, p);
            u64 chk = w;
            for (unsigned i = 1; i < two_adicity_; ++i) chk = mulmod(chk, chk, p);
            if (chk != 1) {
                two_adic_root_ = w;
                break;
            }
        }
    }
}

Fp FieldCtx::from_big(const BigIndex& v) const { return Fp{v.mod_u64(p_)}; }

Fp FieldCtx::inv(Fp a) const {
    if (a.v == 0) raise(errc::division_by_zero, "FieldCtx: inverse of zero");
    if (counting_) ++counters_.invs;
    std::int64_t t = 0, nt = 1;
    std::int64_t r = static_cast<std::int64_t>(p_), nr = static_cast<std::int64_t>(a.v);
    while (nr != 0) {
        std::int64_t q = r / nr;
        std::int64_t tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    u64 res = t < 0 ? static_cast<u64>(t + static_cast<std::int64_t>(p_)) : static_cast<u64>(t);
    return Fp{res};
}

Fp FieldCtx::pow_u64(Fp a, u64 e) const {
    Fp r = one();
    Fp base = a;
    while (e != 0) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

Fp FieldCtx::sample(std::mt19937_64& rng) const {
    unsigned bits = 64 - static_cast<unsigned>(std::countl_zero(p_));
    u64 mask = bits >= 64 ? ~u64(0) : ((u64(1) << bits) - 1);
    for (;;) {
        u64 draw = rng() & mask;
        if (draw < p_) return Fp{draw};
    }
}

} // namespace recseq

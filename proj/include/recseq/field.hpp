#ifndef RECSEQ_FIELD_HPP
#define RECSEQ_FIELD_HPP

#include <cstdint>
#include <random>

#include "recseq/errors.hpp"

namespace recseq {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

class BigIndex;

// Element of Z/p, always stored canonically in [0, p). The context that
// created it defines which p; elements from different contexts must not be
// mixed (polynomial operations check the modulus, scalar ones trust the
// caller, as the hot paths cannot afford a check per operation).
struct Fp {
    u64 v = 0;
    bool operator==(const Fp&) const = default;
};

struct OpCounters {
    u64 mults = 0;
    u64 adds = 0;
    u64 invs = 0;
};

// Deterministic Miller-Rabin, valid for the full 64-bit range.
bool is_prime_u64(u64 n);

// Arithmetic context for one word-sized prime field. Owns the operation
// counters: when counting is enabled the context must be used from a single
// thread (the tallies are plain integers by design; counting runs are
// measurement runs). With counting disabled, const use is freely shareable.
class FieldCtx {
public:
    // Requires 2 < p < 2^62 (out_of_range) and p prime (non_prime).
    explicit FieldCtx(u64 p);

    FieldCtx(const FieldCtx&) = delete;
    FieldCtx& operator=(const FieldCtx&) = delete;

    u64 modulus() const { return p_; }

    void enable_counting(bool on) { counting_ = on; }
    bool counting_enabled() const { return counting_; }
    const OpCounters& counters() const { return counters_; }
    void reset_counters() { counters_ = OpCounters{}; }

    Fp zero() const { return Fp{0}; }
    Fp one() const { return Fp{1}; }
    Fp from_u64(u64 v) const { return Fp{v % p_}; }
    Fp from_i64(std::int64_t v) const {
        u64 r = static_cast<u64>(v % static_cast<std::int64_t>(p_));
        if (v < 0) r += p_;
        return Fp{r % p_};
    }
    Fp from_big(const BigIndex& v) const;

    Fp add(Fp a, Fp b) const {
        bump_add();
        u64 s = a.v + b.v; // p < 2^62: no overflow
        if (s >= p_) s -= p_;
        return Fp{s};
    }
    Fp sub(Fp a, Fp b) const {
        bump_add();
        u64 s = a.v - b.v;
        if (a.v < b.v) s += p_;
        return Fp{s};
    }
    Fp neg(Fp a) const {
        bump_add();
        return Fp{a.v == 0 ? 0 : p_ - a.v};
    }
    Fp mul(Fp a, Fp b) const {
        if (counting_) ++counters_.mults;
#ifdef RECSEQ_FAULT_INJECT
        if (++fault_tick_ % 4096 == 0) {
            u64 r = reduce128(static_cast<u128>(a.v) * b.v);
            return Fp{r ^ 1u};
        }
#endif
        return Fp{reduce128(static_cast<u128>(a.v) * b.v)};
    }
    Fp sqr(Fp a) const { return mul(a, a); }

    // Extended Euclid on integers: exactly one inversion tally, no mult
    // tallies (Fermat powering would charge ~2 log p multiplications to the
    // wrong counter).
    Fp inv(Fp a) const;

    Fp pow_u64(Fp a, u64 e) const;

    // Uniform draw from [0, p) by rejection on masked 64-bit words, so the
    // stream consumption is platform-independent.
    Fp sample(std::mt19937_64& rng) const;

    // Largest k with 2^k | p-1, and a root of unity of exact order 2^k.
    unsigned two_adicity() const { return two_adicity_; }
    Fp two_adic_root() const { return Fp{two_adic_root_}; }

private:
    void bump_add() const {
        if (counting_) ++counters_.adds;
    }
    u64 reduce128(u128 t) const {
        if (mersenne61_) {
            // p = 2^61-1: fold twice, each fold is mod-p-preserving
            u64 lo = static_cast<u64>(t & M61);
            u64 hi = static_cast<u64>(t >> 61);
            u64 s = lo + (hi & M61) + (hi >> 61);
            s = (s & M61) + (s >> 61);
            if (s >= M61) s -= M61;
            return s;
        }
        return static_cast<u64>(t % p_);
    }

    static constexpr u64 M61 = (u64(1) << 61) - 1;

    u64 p_;
    bool mersenne61_;
    bool counting_ = false;
    mutable OpCounters counters_;
#ifdef RECSEQ_FAULT_INJECT
    mutable u64 fault_tick_ = 0;
#endif
    unsigned two_adicity_;
    u64 two_adic_root_;
};

} // namespace recseq

#endif

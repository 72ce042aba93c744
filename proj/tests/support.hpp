#ifndef RECSEQ_TESTS_SUPPORT_HPP
#define RECSEQ_TESTS_SUPPORT_HPP

#include <cstdio>
#include <random>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "recseq/bigindex.hpp"
#include "recseq/bivar.hpp"
#include "recseq/factor.hpp"
#include "recseq/field.hpp"
#include "recseq/poly.hpp"
#include "recseq/sampling.hpp"
#include "recseq/seqterm.hpp"

// Test-side reference implementations. Everything here is written against the
// mathematical definitions, independently of the library's realizations, so a
// library bug and an oracle bug would have to coincide to slip through.
namespace support {

using recseq::BigIndex;
using recseq::BivarElement;
using recseq::BivarRing;
using recseq::DensePoly;
using recseq::FieldCtx;
using recseq::Fp;
using recseq::LinearForm;
using recseq::u64;

inline u64 addmod(u64 a, u64 b, u64 p) {
    u64 s = a + b;
    if (s >= p) s -= p;
    return s;
}

inline u64 mulmod_u64(u64 a, u64 b, u64 p) {
    return static_cast<u64>(static_cast<unsigned __int128>(a) * b % p);
}

inline u64 powmod_u64(u64 base, u64 exp, u64 p) {
    u64 r = 1 % p;
    base %= p;
    while (exp) {
        if (exp & 1) r = mulmod_u64(r, base, p);
        base = mulmod_u64(base, base, p);
        exp >>= 1;
    }
    return r;
}

// Primality by trial division; fine for word-sized test inputs below ~10^12.
inline bool trial_division_prime(u64 n) {
    if (n < 2) return false;
    for (u64 q = 2; q * q <= n; ++q)
        if (n % q == 0) return false;
    return true;
}

// Lucas-Lehmer test for 2^61 - 1: an independent certificate for the big test
// prime that trial division cannot reach.
inline bool lucas_lehmer_m61() {
    const u64 M = (u64(1) << 61) - 1;
    u64 s = 4;
    for (int i = 0; i < 59; ++i) s = addmod(mulmod_u64(s, s, M), M - 2, M);
    return s == 0;
}

// Decimal string mod p by Horner on the digits.
inline u64 horner_decimal_mod(const std::string& dec, u64 p) {
    u64 r = 0;
    for (char ch : dec) r = addmod(mulmod_u64(r, 10, p), static_cast<u64>(ch - '0') % p, p);
    return r;
}

// a_D for the recurrence, in plain integer arithmetic (no FieldCtx).
inline u64 naive_term_u64(u64 p, const std::vector<u64>& coeffs, const std::vector<u64>& init,
                          u64 D) {
    const std::size_t d = coeffs.size();
    if (D < d) return init[D] % p;
    std::vector<u64> win(init);
    for (auto& w : win) w %= p;
    for (u64 i = d; i <= D; ++i) {
        u64 acc = 0;
        for (std::size_t j = 0; j < d; ++j)
            acc = addmod(acc, mulmod_u64(coeffs[j] % p, win[(i + j) % d], p), p);
        win[i % d] = acc;
    }
    return win[D % d];
}

inline DensePoly school_mul(const FieldCtx& F, const DensePoly& a, const DensePoly& b) {
    if (a.is_zero() || b.is_zero()) return DensePoly(F);
    std::vector<Fp> out(a.coeffs().size() + b.coeffs().size() - 1, Fp{0});
    for (std::size_t i = 0; i < a.coeffs().size(); ++i)
        for (std::size_t j = 0; j < b.coeffs().size(); ++j)
            out[i + j] = F.add(out[i + j], F.mul(a.coeffs()[i], b.coeffs()[j]));
    return DensePoly(F, std::move(out));
}

// x^D mod M by literal repeated multiplication by x (linear-time oracle).
inline DensePoly iter_powmod_x(const FieldCtx& F, u64 D, const DensePoly& M) {
    const std::size_t dm = static_cast<std::size_t>(M.degree());
    std::vector<Fp> r(dm, Fp{0});
    r[0] = F.one();
    if (dm == 0) return DensePoly(F);
    for (u64 i = 0; i < D; ++i) {
        Fp top = r[dm - 1];
        for (std::size_t k = dm - 1; k > 0; --k) r[k] = r[k - 1];
        r[0] = F.zero();
        if (top.v != 0)
            for (std::size_t k = 0; k < dm; ++k)
                r[k] = F.sub(r[k], F.mul(top, M.coeff(k)));
    }
    return DensePoly(F, r);
}

inline DensePoly repeated_mul_powmod(const FieldCtx& F, const DensePoly& a, u64 E,
                                     const DensePoly& M) {
    DensePoly r(F, {F.one()});
    DensePoly base = recseq::p_rem(a, M);
    for (u64 i = 0; i < E; ++i) r = recseq::p_rem(school_mul(F, r, base), M);
    return r;
}

inline Fp dot(const FieldCtx& F, const std::vector<Fp>& a, const std::vector<Fp>& b) {
    Fp acc = F.zero();
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
        acc = F.add(acc, F.mul(a[i], b[i]));
    return acc;
}

inline std::vector<Fp> mat_transpose_apply(const FieldCtx& F,
                                           const std::vector<std::vector<Fp>>& M,
                                           const std::vector<Fp>& v) {
    const std::size_t rows = M.size(), cols = rows ? M[0].size() : 0;
    std::vector<Fp> out(cols, Fp{0});
    for (std::size_t j = 0; j < cols; ++j)
        for (std::size_t i = 0; i < rows; ++i) out[j] = F.add(out[j], F.mul(v[i], M[i][j]));
    return out;
}

inline std::size_t mat_rank(const FieldCtx& F, std::vector<std::vector<Fp>> M) {
    const std::size_t rows = M.size(), cols = rows ? M[0].size() : 0;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && M[piv][col].v == 0) ++piv;
        if (piv == rows) continue;
        std::swap(M[piv], M[rank]);
        Fp inv = F.inv(M[rank][col]);
        for (std::size_t j = col; j < cols; ++j) M[rank][j] = F.mul(M[rank][j], inv);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || M[r][col].v == 0) continue;
            Fp factor = M[r][col];
            for (std::size_t j = col; j < cols; ++j)
                M[r][j] = F.sub(M[r][j], F.mul(factor, M[rank][j]));
        }
        ++rank;
    }
    return rank;
}

// Dense matrix of multiplication by delta on the flattened basis.
inline std::vector<std::vector<Fp>> mul_by_delta_matrix(const BivarRing& R,
                                                        const BivarElement& delta) {
    const std::size_t n = R.n(), f = R.f();
    std::vector<std::vector<Fp>> M(n, std::vector<Fp>(n, Fp{0}));
    for (std::size_t j = 0; j < n; ++j) {
        BivarElement col = recseq::bv_mul(R, delta, R.basis_element(j % f, j / f));
        std::vector<Fp> flat = recseq::flatten(R, col);
        for (std::size_t i = 0; i < n; ++i) M[i][j] = flat[i];
    }
    return M;
}

// First `count` terms h_j of the series N/Ptilde = sum_j h_j x^{-j-1}, read
// off the polynomial quotient of N*x^{2n} by Ptilde.
inline std::vector<Fp> series_of_fraction(const FieldCtx& F, const DensePoly& N,
                                          const DensePoly& ptilde, std::size_t count) {
    const std::size_t n = static_cast<std::size_t>(ptilde.degree());
    const std::size_t lift = count + n;
    DensePoly shifted = recseq::p_mul(N, DensePoly::monomial(F, lift, F.one()));
    DensePoly q = recseq::p_divrem(shifted, ptilde).first;
    std::vector<Fp> h(count);
    for (std::size_t j = 0; j < count; ++j) h[j] = q.coeff(lift - 1 - j);
    return h;
}

struct CmdResult {
    int status = -1;
    std::string out;
};

// Runs a shell command, captures stdout, returns the exit status (-1 when the
// child did not exit normally).
inline CmdResult run_cmd(const std::string& cmd) {
    CmdResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    int rc = pclose(pipe);
    if (rc != -1 && WIFEXITED(rc)) r.status = WEXITSTATUS(rc);
    return r;
}

} // namespace support

#endif

#include "recseq/selftest.hpp"

#include <random>
#include <stdexcept>
#include <vector>

#include "recseq/bivar.hpp"
#include "recseq/factor.hpp"
#include "recseq/sampling.hpp"
#include "recseq/seqterm.hpp"

namespace recseq {

namespace {

struct CheckFail : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void check(bool ok, const char* what) {
    if (!ok) throw CheckFail(what);
}

constexpr u64 SUITE_PRIMES[] = {101, 2013265921ull, (u64(1) << 61) - 1};

u64 mix(u64 seed, u64 salt) { return seed * 0x9e3779b97f4a7c15ull + salt; }

DensePoly sample_dense(const FieldCtx& F, std::size_t len, std::mt19937_64& rng) {
    return DensePoly(F, sample_values(F, len, rng));
}

void suite_field(u64 seed) {
    for (u64 p : SUITE_PRIMES) {
        FieldCtx F(p);
        std::mt19937_64 rng(mix(seed, p));
        for (int it = 0; it < 64; ++it) {
            Fp a = F.sample(rng), b = F.sample(rng), c = F.sample(rng);
            check(F.add(a, b) == F.add(b, a), "addition commutes");
            check(F.mul(a, b) == F.mul(b, a), "multiplication commutes");
            check(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)), "multiplication associates");
            check(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)), "distributivity");
            check(F.sub(a, b) == F.add(a, F.neg(b)), "sub matches add of negation");
            if (a.v != 0) check(F.mul(a, F.inv(a)) == F.one(), "inverse");
            Fp p5 = F.mul(F.mul(F.mul(F.mul(a, a), a), a), a);
            check(F.pow_u64(a, 5) == p5, "pow_u64 matches repeated product");
        }
        check(F.from_big(BigIndex::from_decimal("18446744073709551616")) ==
                  F.pow_u64(F.from_u64(2), 64),
              "from_big matches 2^64");
        if (F.two_adicity() >= 1) {
            Fp w = F.two_adic_root();
            check(F.pow_u64(w, u64(1) << F.two_adicity()) == F.one(), "two-adic root order divides 2^s");
            check(F.pow_u64(w, u64(1) << (F.two_adicity() - 1)) != F.one(), "two-adic root order exact");
        }
    }
    FieldCtx F(101);
    F.enable_counting(true);
    F.reset_counters();
    Fp x = F.from_u64(7), y = F.from_u64(9);
    (void)F.mul(x, y);
    (void)F.mul(x, x);
    (void)F.mul(y, y);
    check(F.counters().mults == 3, "mult counter tallies each call");
    (void)F.add(x, y);
    (void)F.sub(x, y);
    check(F.counters().adds == 2, "add counter tallies add and sub");
    (void)F.inv(x);
    check(F.counters().invs == 1 && F.counters().mults == 3, "inv tallies only invs");
    F.enable_counting(false);
    (void)F.mul(x, y);
    check(F.counters().mults == 3, "disabled counting leaves tallies alone");
}

void suite_poly(u64 seed) {
    for (u64 p : SUITE_PRIMES) {
        FieldCtx F(p);
        std::mt19937_64 rng(mix(seed, p * 3 + 1));
        const std::size_t sizes[][2] = {{5, 7}, {40, 50}, {70, 90}};
        for (auto [la, lb] : sizes) {
            DensePoly a = sample_dense(F, la, rng), b = sample_dense(F, lb, rng);
            DensePoly got = p_mul(a, b);
            std::vector<Fp> ref(la + lb - 1, Fp{0});
            for (std::size_t i = 0; i < la; ++i)
                for (std::size_t j = 0; j < lb; ++j)
                    ref[i + j] = F.add(ref[i + j], F.mul(a.coeff(i), b.coeff(j)));
            check(got == DensePoly(F, ref), "product matches schoolbook");
        }
        DensePoly a = sample_dense(F, 38, rng);
        DensePoly b = sample_poly(F, 11, rng);
        auto [q, r] = p_divrem(a, b);
        check(p_add(p_mul(q, b), r) == a, "divrem reconstructs");
        check(r.degree() < b.degree(), "remainder degree drops");

        DensePoly g = sample_monic(F, 3, rng);
        DensePoly u = p_mul(g, sample_monic(F, 4, rng)), v = p_mul(g, sample_monic(F, 5, rng));
        DensePoly gg = p_gcd(u, v);
        check(p_rem(u, gg).is_zero() && p_rem(v, gg).is_zero(), "gcd divides both");
        check(p_rem(gg, g).is_zero() || gg.degree() >= g.degree(), "gcd at least the planted factor");

        DensePoly M = sample_monic(F, 9, rng);
        BigIndex D = BigIndex::from_decimal("123456789123456789123456789");
        DensePoly xp = DensePoly::monomial(F, 1, F.one());
        check(p_powmod_x(D, M) == p_powmod(xp, D, M), "x-power matches generic powmod");
        check(p_powmod_x(BigIndex(137), M) == p_rem(DensePoly::monomial(F, 137, F.one()), M),
              "small power matches direct remainder");

        DensePoly s = sample_dense(F, 31, rng);
        Fp c = F.sample(rng);
        DensePoly s1 = p_taylor_shift(s, c, ShiftMethod::divide_conquer);
        DensePoly s2 = p_taylor_shift(s, c, ShiftMethod::convolution);
        check(s1 == s2, "shift methods agree");
        check(p_taylor_shift(s1, F.neg(c)) == s, "shift round-trips");
        Fp x0 = F.sample(rng);
        check(p_eval(s1, x0) == p_eval(s, F.add(x0, c)), "shift evaluates correctly");

        DensePoly t = sample_dense(F, 13, rng);
        std::vector<Fp> w = sample_values(F, 26, rng);
        std::vector<Fp> tw = p_mul_transposed(F, t, w, 10);
        for (std::size_t j = 0; j < 10; ++j) {
            Fp acc = F.zero();
            for (std::size_t k = 0; k < 13; ++k) acc = F.add(acc, F.mul(t.coeff(k), w[j + k]));
            check(tw[j] == acc, "transposed product matches dot products");
        }

        DensePoly qq = sample_monic(F, 3, rng);
        check(p_pow_expand(qq, 4) == p_mul(p_mul(qq, qq), p_mul(qq, qq)), "pow_expand matches repeated product");
    }
}

void suite_factor(u64 seed) {
    for (u64 p : {u64(101), (u64(1) << 61) - 1}) {
        FieldCtx F(p);
        std::mt19937_64 rng(mix(seed, p * 5 + 2));
        for (int it = 0; it < 8; ++it) {
            DensePoly q1 = sample_factor_base(F, 2, rng);
            DensePoly q2 = sample_factor_base(F, 3, rng);
            DensePoly q3 = sample_factor_base(F, 1, rng);
            if (p_gcd(q1, q2).degree() != 0 || p_gcd(q1, q3).degree() != 0 ||
                p_gcd(q2, q3).degree() != 0)
                continue;
            DensePoly P = p_mul(p_mul(q1, p_pow_expand(q2, 2)), p_pow_expand(q3, 3));
            SquarefreeFactorization fac = yun_squarefree(P);
            check(fac.d == P.degree(), "total degree recorded");
            check(fac.d_bar == 6, "squarefree degree recorded");
            check(fac.parts.size() == 3, "three squarefree parts");
            check(fac.parts[0].m == 1 && fac.parts[0].q == q1, "multiplicity-1 part");
            check(fac.parts[1].m == 2 && fac.parts[1].q == q2, "multiplicity-2 part");
            check(fac.parts[2].m == 3 && fac.parts[2].q == q3, "multiplicity-3 part");

            std::vector<DensePoly> moduli{q1, q2, q3};
            std::vector<DensePoly> residues;
            for (const DensePoly& mi : moduli)
                residues.push_back(sample_dense(F, static_cast<std::size_t>(mi.degree()), rng));
            DensePoly r = crt_combine(residues, moduli);
            check(r.degree() < q1.degree() + q2.degree() + q3.degree(), "combined degree bound");
            for (std::size_t i = 0; i < moduli.size(); ++i)
                check(p_rem(r, moduli[i]) == residues[i], "combined value has the right remainders");
        }
    }
}

void suite_bivar(u64 seed) {
    struct Shape {
        u64 p;
        long f;
        unsigned m;
    };
    const Shape shapes[] = {
        {101, 2, 3}, {101, 1, 4}, {101, 3, 1}, {2013265921ull, 3, 2}, {(u64(1) << 61) - 1, 2, 2}};
    for (const Shape& sh : shapes) {
        FieldCtx F(sh.p);
        std::mt19937_64 rng(mix(seed, sh.p + sh.f * 64 + sh.m));
        DensePoly Q = sample_factor_base(F, sh.f, rng);
        BivarRing R(F, Q, sh.m);
        const std::size_t n = R.n();
        DensePoly ptilde = p_pow_expand(Q, sh.m);
        DensePoly C1 = sample_dense(F, n, rng), C2 = sample_dense(F, n, rng);
        BivarElement u1 = untangle(R, C1), u2 = untangle(R, C2);

        check(untangle(R, DensePoly(F, {F.one()})) == R.one_element(), "untangle fixes one");
        DensePoly prod = p_rem(p_mul(C1, C2), ptilde);
        check(untangle(R, prod) == bv_mul(R, u1, u2), "untangle is multiplicative");

        auto U = untangle_matrix(R);
        LinearForm mu{sample_values(F, n, rng)};
        std::vector<Fp> tu = transposed_untangle(R, mu);
        for (std::size_t j = 0; j < n; ++j) {
            Fp acc = F.zero();
            for (std::size_t i = 0; i < n; ++i) acc = F.add(acc, F.mul(mu.values[i], U[i][j]));
            check(tu[j] == acc, "transposed untangle matches the dense transpose");
        }

        LinearForm lam{sample_values(F, n, rng)};
        LinearForm tb = transposed_bv_mul(R, lam, u2);
        std::vector<Fp> z = flatten(R, u1), dz = flatten(R, bv_mul(R, u2, u1));
        Fp lhs = F.zero(), rhs = F.zero();
        for (std::size_t i = 0; i < n; ++i) {
            lhs = F.add(lhs, F.mul(lam.values[i], dz[i]));
            rhs = F.add(rhs, F.mul(tb.values[i], z[i]));
        }
        check(lhs == rhs, "transposed multiplication is adjoint to multiplication");

        TangleStats st{};
        DensePoly back = tangle(R, u1, rng, 8, 64, &st);
        check(back == C1, "tangle inverts untangle");
        check(!st.fallback_used, "random projection succeeded");

        BigIndex D = BigIndex::from_decimal("987654321987654321");
        check(delta_for_factor(R, D) == untangle(R, p_powmod_x(D, ptilde)),
              "delta matches the direct x-power");
    }
}

void suite_seqterm(u64 seed) {
    for (u64 p : {u64(101), (u64(1) << 61) - 1}) {
        FieldCtx F(p);
        std::mt19937_64 rng(mix(seed, p * 7 + 5));
        std::vector<Fp> coeffs = sample_values(F, 5, rng);
        while (coeffs[0].v == 0) coeffs[0] = F.sample(rng);
        Recurrence rec(F, coeffs, sample_values(F, 5, rng));
        for (u64 d : {u64(0), u64(3), u64(7), u64(64), u64(1000)}) {
            BigIndex D(d);
            check(nth_term_naive(rec, D) == nth_term_fiduccia(rec, D), "naive matches fiduccia");
        }
        check(nth_term_naive(rec, BigIndex(1000)) == nth_term_factored(rec, BigIndex(1000), rng),
              "naive matches factored");
        BigIndex big = BigIndex::from_decimal("340282366920938463463374607431768211456");
        check(nth_term_fiduccia(rec, big) == nth_term_factored(rec, big, rng),
              "fiduccia matches factored on a wide index");

        AutoResult ar = nth_term_auto(rec, BigIndex(5), rng);
        check(ar.algo == Algo::naive && ar.value == nth_term_naive(rec, BigIndex(5)),
              "auto picks direct iteration for small indices");
        ar = nth_term_auto(rec, BigIndex(1000), rng);
        check(ar.algo == Algo::factored, "auto picks the factored path when it applies");
        std::vector<Fp> czero = coeffs;
        czero[0] = F.zero();
        Recurrence rec0(F, czero, rec.init);
        ar = nth_term_auto(rec0, BigIndex(1000), rng);
        check(ar.algo == Algo::fiduccia && ar.value == nth_term_fiduccia(rec0, BigIndex(1000)),
              "auto falls back to fiduccia on a zero trailing coefficient");

        // charpoly with repeated factors: (x - r1)^2 (x - r2)^3
        Fp r1 = F.from_u64(3), r2 = F.from_u64(8);
        DensePoly P = p_mul(p_pow_expand(DensePoly(F, {F.neg(r1), F.one()}), 2),
                            p_pow_expand(DensePoly(F, {F.neg(r2), F.one()}), 3));
        std::vector<Fp> rc(5);
        for (std::size_t j = 0; j < 5; ++j) rc[j] = F.neg(P.coeff(j));
        Recurrence rrec(F, rc, sample_values(F, 5, rng));
        check(nth_term_naive(rrec, BigIndex(500)) == nth_term_factored(rrec, BigIndex(500), rng),
              "factored handles repeated roots");

        DensePoly xm1 = DensePoly(F, {F.neg(F.one()), F.one()});
        check(binomial_remainder(F, BigIndex(1000), 6) ==
                  p_powmod_x(BigIndex(1000), p_pow_expand(xm1, 6)),
              "binomial remainder matches the direct power");

        Recurrence geo(F, {F.from_u64(3)}, {F.from_u64(2)});
        BigIndex D50(50);
        Fp closed = F.mul(F.from_u64(2), F.pow_u64(F.from_u64(3), 50));
        check(nth_term_naive(geo, D50) == closed, "order-1 closed form (naive)");
        check(nth_term_fiduccia(geo, D50) == closed, "order-1 closed form (fiduccia)");
        check(nth_term_factored(geo, D50, rng) == closed, "order-1 closed form (factored)");
    }
}

} // namespace

int run_selftest(std::uint64_t seed, std::ostream& out) {
    int failures = 0;
    auto run = [&](const char* name, void (*body)(u64)) {
        try {
            body(seed);
            out << "ok " << name << "\n";
        } catch (const std::exception& e) {
            ++failures;
            out << "FAIL " << name << ": " << e.what() << "\n";
        }
    };
    run("field", suite_field);
    run("poly", suite_poly);
    run("factor", suite_factor);
    run("bivar", suite_bivar);
    run("seqterm", suite_seqterm);
    return failures == 0 ? 0 : 1;
}

} // namespace recseq

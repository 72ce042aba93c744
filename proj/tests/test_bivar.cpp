#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support.hpp"

using namespace recseq;

namespace {
constexpr u64 M61 = (u64(1) << 61) - 1;

BivarElement random_element(const BivarRing& R, std::mt19937_64& rng) {
    BivarElement u = R.zero_element();
    for (auto& c : u.xc) c = sample_poly(R.field(), static_cast<long>(R.f()) - 1, rng);
    return u;
}

LinearForm random_form(const BivarRing& R, std::mt19937_64& rng) {
    return LinearForm{sample_values(R.field(), R.n(), rng)};
}
} // namespace

TEST_CASE("one is neutral") {
    std::mt19937_64 rng(7);
    FieldCtx F(101);
    BivarRing R(F, DensePoly::from_i64(F, {4, 3, 1, 1}), 3);
    for (int i = 0; i < 10; ++i) {
        BivarElement u = random_element(R, rng);
        CHECK(bv_mul(R, u, R.one_element()) == u);
        CHECK(bv_mul(R, R.one_element(), u) == u);
    }
}

TEST_CASE("x squared over a small ring") {
    FieldCtx F(5);
    BivarRing R(F, DensePoly::from_i64(F, {1, 0, 1}), 2);
    BivarElement x = R.basis_element(0, 1);
    BivarElement xx = bv_mul(R, x, x);
    REQUIRE(xx.xc.size() == 2);
    CHECK(xx.xc[0] == DensePoly::from_i64(F, {1}));
    CHECK(xx.xc[1] == DensePoly::from_i64(F, {0, 2}));
    CHECK(untangle(R, DensePoly::monomial(F, 2, F.one())) == xx);
}

TEST_CASE("m = 1 collapses to the residue ring") {
    std::mt19937_64 rng(11);
    FieldCtx F(101);
    DensePoly Q = DensePoly::from_i64(F, {2, 0, 0, 1, 1});
    BivarRing R(F, Q, 1);
    ResidueRing base(F, Q);
    for (int i = 0; i < 25; ++i) {
        DensePoly a = sample_poly(F, 3, rng), b = sample_poly(F, 3, rng);
        BivarElement prod = bv_mul(R, BivarElement{{a}}, BivarElement{{b}});
        REQUIRE(prod.xc.size() == 1);
        CHECK(prod.xc[0] == base.mul(a, b));
        DensePoly c = sample_poly(F, 3, rng);
        BivarElement u = untangle(R, c);
        CHECK(u.xc[0] == base.reduce(c));
        CHECK(tangle(R, BivarElement{{base.reduce(c)}}, rng) == base.reduce(c));
    }
}

TEST_CASE("untangle of a frozen power") {
    FieldCtx F(101);
    BivarRing R(F, DensePoly::from_i64(F, {-1, 1}), 3);
    DensePoly x5 = DensePoly::monomial(F, 5, F.one());
    DensePoly rep = p_rem(x5, p_pow_expand(DensePoly::from_i64(F, {-1, 1}), 3));
    CHECK(rep == DensePoly::from_i64(F, {6, 86, 10}));
    BivarElement u = untangle(R, rep);
    REQUIRE(u.xc.size() == 3);
    CHECK(u.xc[0] == DensePoly::from_i64(F, {6}));
    CHECK(u.xc[1] == DensePoly::from_i64(F, {86}));
    CHECK(u.xc[2] == DensePoly::from_i64(F, {10}));
    CHECK(untangle(R, DensePoly::from_i64(F, {1})) == R.one_element());
    CHECK(untangle(R, DensePoly(F)) == R.zero_element());
}

TEST_CASE("xy-power coordinates") {
    std::mt19937_64 rng(13);
    FieldCtx F(101);
    BivarRing R(F, DensePoly::from_i64(F, {3, 1, 1}), 4);
    DensePoly g0 = sample_poly(F, 1, rng);
    BivarElement c = from_xy_powers(R, std::vector<DensePoly>{g0});
    CHECK(c.xc[0] == g0);
    for (std::size_t b = 1; b < 4; ++b) CHECK(c.xc[b].is_zero());
    std::vector<DensePoly> lin{DensePoly(F), DensePoly::from_i64(F, {1})};
    BivarElement xmy = from_xy_powers(R, lin);
    CHECK(xmy.xc[1] == DensePoly::from_i64(F, {1}));
    CHECK(xmy.xc[0] == DensePoly::from_i64(F, {0, -1}));
    std::vector<DensePoly> quad{DensePoly(F), DensePoly(F), DensePoly::from_i64(F, {1})};
    CHECK(from_xy_powers(R, quad) == bv_mul(R, xmy, xmy));
    CHECK_THROWS_AS(from_xy_powers(R, std::vector<DensePoly>(5, DensePoly(F))), Error);
}

TEST_CASE("morphism property") {
    std::mt19937_64 rng(17);
    struct Shape { u64 p; std::initializer_list<std::int64_t> q; unsigned m; };
    const Shape shapes[] = {
        {101, {4, 3, 1}, 3},
        {2013265921ull, {7, 0, 2, 1}, 2},
        {M61, {5, 1}, 4},
    };
    for (const auto& s : shapes) {
        FieldCtx F(s.p);
        DensePoly Q = DensePoly::from_i64(F, s.q);
        BivarRing R(F, Q, s.m);
        DensePoly ptilde = p_pow_expand(Q, s.m);
        long n = static_cast<long>(R.n());
        for (int i = 0; i < 200; ++i) {
            DensePoly c1 = sample_poly(F, static_cast<long>(rng() % static_cast<u64>(n)), rng);
            DensePoly c2 = sample_poly(F, static_cast<long>(rng() % static_cast<u64>(n)), rng);
            BivarElement lhs = untangle(R, p_rem(p_mul(c1, c2), ptilde));
            CHECK(lhs == bv_mul(R, untangle(R, c1), untangle(R, c2)));
        }
    }
}

TEST_CASE("dense untangle matrix") {
    std::mt19937_64 rng(19);
    FieldCtx F(101);
    {
        BivarRing R(F, DensePoly::monomial(F, 1, F.one()), 1);
        auto M = untangle_matrix(R);
        REQUIRE(M.size() == 1);
        CHECK(M[0][0] == F.one());
    }
    struct Shape { std::initializer_list<std::int64_t> q; unsigned m; };
    const Shape shapes[] = {{{2, 1}, 5}, {{3, 1, 1}, 4}, {{1, 2, 0, 1}, 2}};
    for (const auto& s : shapes) {
        BivarRing R(F, DensePoly::from_i64(F, s.q), s.m);
        auto M = untangle_matrix(R);
        std::size_t n = R.n();
        REQUIRE(M.size() == n);
        CHECK(support::mat_rank(F, M) == n);
        for (int i = 0; i < 20; ++i) {
            DensePoly c = sample_poly(F, static_cast<long>(rng() % n), rng);
            std::vector<Fp> flat = flatten(R, untangle(R, c));
            for (std::size_t r = 0; r < n; ++r) {
                Fp acc = F.zero();
                for (std::size_t j = 0; j < n; ++j) acc = F.add(acc, F.mul(M[r][j], c.coeff(j)));
                CHECK(flat[r] == acc);
            }
        }
    }
    BivarRing big(F, DensePoly::from_i64(F, {2, 1}), 80);
    CHECK_THROWS_AS(untangle_matrix(big, 64), Error);
}

TEST_CASE("transposed untangle") {
    std::mt19937_64 rng(23);
    FieldCtx F(101);
    {
        BivarRing R(F, DensePoly::from_i64(F, {7, 1}), 1);
        LinearForm mu{{Fp{42}}};
        auto w = transposed_untangle(R, mu);
        REQUIRE(w.size() == 1);
        CHECK(w[0] == Fp{42});
    }
    struct Shape { u64 p; std::initializer_list<std::int64_t> q; unsigned m; };
    const Shape shapes[] = {
        {101, {4, 3, 1}, 5},
        {101, {1, 0, 2, 1}, 3},
        {M61, {9, 1, 1}, 8},
        {M61, {2, 1}, 32},
    };
    for (const auto& s : shapes) {
        FieldCtx G(s.p);
        BivarRing R(G, DensePoly::from_i64(G, s.q), s.m);
        auto M = untangle_matrix(R, 64);
        for (int i = 0; i < 100; ++i) {
            LinearForm mu = random_form(R, rng);
            CHECK(transposed_untangle(R, mu) == support::mat_transpose_apply(G, M, mu.values));
        }
        LinearForm e0{std::vector<Fp>(R.n(), G.zero())};
        e0.values[0] = G.one();
        auto w = transposed_untangle(R, e0);
        for (std::size_t j = 0; j < R.n(); ++j) {
            DensePoly xj = DensePoly::monomial(G, j, G.one());
            CHECK(w[j] == flatten(R, untangle(R, xj))[0]);
        }
    }
}

TEST_CASE("transpose pairing") {
    std::mt19937_64 rng(29);
    struct Shape { u64 p; std::initializer_list<std::int64_t> q; unsigned m; };
    const Shape shapes[] = {
        {101, {4, 3, 1}, 3},
        {2013265921ull, {7, 0, 2, 1}, 4},
        {M61, {5, 2, 1}, 16},
    };
    for (const auto& s : shapes) {
        FieldCtx F(s.p);
        BivarRing R(F, DensePoly::from_i64(F, s.q), s.m);
        std::size_t n = R.n();
        for (int i = 0; i < 100; ++i) {
            LinearForm mu = random_form(R, rng);
            DensePoly c = sample_poly(F, static_cast<long>(rng() % n), rng);
            Fp lhs = support::dot(F, mu.values, flatten(R, untangle(R, c)));
            std::vector<Fp> cpad(n, F.zero());
            for (std::size_t k = 0; k < n; ++k) cpad[k] = c.coeff(k);
            CHECK(lhs == support::dot(F, transposed_untangle(R, mu), cpad));
        }
    }
}

TEST_CASE("transposed product by an element") {
    std::mt19937_64 rng(31);
    FieldCtx F(101);
    struct Shape { std::initializer_list<std::int64_t> q; unsigned m; };
    const Shape shapes[] = {{{4, 3, 1}, 3}, {{3, 1}, 7}, {{1, 2, 0, 1}, 5}};
    for (const auto& s : shapes) {
        BivarRing R(F, DensePoly::from_i64(F, s.q), s.m);
        for (int i = 0; i < 40; ++i) {
            LinearForm lam = random_form(R, rng);
            BivarElement delta = random_element(R, rng);
            CHECK(transposed_bv_mul(R, lam, R.one_element()) == lam);
            auto M = support::mul_by_delta_matrix(R, delta);
            LinearForm got = transposed_bv_mul(R, lam, delta);
            CHECK(got.values == support::mat_transpose_apply(F, M, lam.values));
            BivarElement z = random_element(R, rng);
            Fp lhs = support::dot(F, lam.values, flatten(R, bv_mul(R, delta, z)));
            CHECK(lhs == support::dot(F, got.values, flatten(R, z)));
            BivarElement d2 = random_element(R, rng);
            LinearForm chained = transposed_bv_mul(R, transposed_bv_mul(R, lam, delta), d2);
            CHECK(chained == transposed_bv_mul(R, lam, bv_mul(R, delta, d2)));
        }
    }
}

TEST_CASE("projection numerator") {
    FieldCtx F(101);
    std::mt19937_64 rng(37);
    for (int i = 0; i < 10; ++i) {
        Fp c = F.sample(rng), v = F.sample(rng);
        DensePoly lin(F, {F.neg(c), F.one()});
        std::vector<Fp> h{v};
        DensePoly num = projection_numerator(lin, h);
        if (v.v == 0) CHECK(num.is_zero());
        else CHECK(num == DensePoly(F, {v}));
    }
    DensePoly ptilde = sample_monic(F, 6, rng);
    std::vector<Fp> zeros(6, F.zero());
    CHECK(projection_numerator(ptilde, zeros).is_zero());
    for (int i = 0; i < 50; ++i) {
        std::size_t n = 1 + rng() % 8;
        DensePoly P = sample_monic(F, static_cast<long>(n), rng);
        DensePoly N = sample_poly(F, static_cast<long>(rng() % n), rng);
        std::vector<Fp> h = support::series_of_fraction(F, N, P, n);
        CHECK(projection_numerator(P, h) == N);
    }
    CHECK_THROWS_AS(projection_numerator(ptilde, std::span<const Fp>(zeros.data(), 5)), Error);
    CHECK_THROWS_AS(projection_numerator(DensePoly::from_i64(F, {1, 2}),
                                         std::span<const Fp>(zeros.data(), 1)),
                    Error);
}

TEST_CASE("projection values follow the modulus recurrence") {
    std::mt19937_64 rng(41);
    FieldCtx F(M61);
    DensePoly Q = DensePoly::from_i64(F, {3, 0, 1});
    unsigned m = 4;
    BivarRing R(F, Q, m);
    DensePoly ptilde = p_pow_expand(Q, m);
    std::size_t n = R.n();
    for (int i = 0; i < 10; ++i) {
        LinearForm lam = random_form(R, rng);
        std::vector<Fp> h = transposed_untangle(R, lam);
        for (std::size_t j = n; j < n + 10; ++j) {
            Fp next = F.zero();
            for (std::size_t k = 0; k < n; ++k)
                next = F.sub(next, F.mul(ptilde.coeff(k), h[j - n + k]));
            h.push_back(next);
            DensePoly xj = p_rem(DensePoly::monomial(F, j, F.one()), ptilde);
            CHECK(next == support::dot(F, lam.values, flatten(R, untangle(R, xj))));
        }
    }
}

TEST_CASE("tangle inverts untangle") {
    std::mt19937_64 rng(43);
    FieldCtx F(5);
    BivarRing small(F, DensePoly::from_i64(F, {1, 0, 1}), 2);
    BivarElement xx{{DensePoly::from_i64(F, {1}), DensePoly::from_i64(F, {0, 2})}};
    CHECK(tangle(small, xx, rng) == DensePoly::monomial(F, 2, F.one()));
    CHECK(tangle(small, small.zero_element(), rng).is_zero());

    struct Shape { u64 p; long fdeg; unsigned m; int reps; };
    const Shape shapes[] = {
        {101, 2, 4, 25},
        {101, 4, 2, 25},
        {M61, 8, 8, 10},
        {M61, 2, 64, 5},
        {M61, 4, 128, 2},
    };
    for (const auto& s : shapes) {
        FieldCtx G(s.p);
        DensePoly Q = sample_factor_base(G, s.fdeg, rng);
        BivarRing R(G, Q, s.m);
        std::size_t n = R.n();
        for (int i = 0; i < s.reps; ++i) {
            DensePoly c = sample_poly(G, static_cast<long>(rng() % n), rng);
            TangleStats st;
            DensePoly back = tangle(R, untangle(R, c), rng, 8, 64, &st);
            CHECK(back == c);
            CHECK(!st.fallback_used);
        }
    }
}

TEST_CASE("shape validation") {
    FieldCtx F(101), G(103);
    BivarRing R(F, DensePoly::from_i64(F, {4, 3, 1}), 3);
    CHECK_THROWS_AS(untangle(R, DensePoly::monomial(F, 6, F.one())), Error);
    CHECK_THROWS_AS(untangle(R, DensePoly::from_i64(G, {1})), Error);
    BivarElement bad = R.zero_element();
    bad.xc.pop_back();
    CHECK_THROWS_AS(bv_mul(R, bad, R.one_element()), Error);
    CHECK_THROWS_AS(BivarRing(F, DensePoly::from_i64(F, {1, 2}), 2), Error);
    CHECK_THROWS_AS(BivarRing(F, DensePoly::from_i64(F, {5}), 2), Error);
    CHECK_THROWS_AS(BivarRing(F, DensePoly::from_i64(F, {1, 1}), 0), Error);
}

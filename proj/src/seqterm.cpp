#include "recseq/seqterm.hpp"

namespace recseq {

Recurrence::Recurrence(const FieldCtx& ctx, std::vector<Fp> c, std::vector<Fp> i)
    : coeffs(std::move(c)), init(std::move(i)), charpoly(ctx), ctx_(&ctx) {
    if (coeffs.empty()) raise(errc::out_of_range, "recurrence order must be at least 1");
    if (init.size() != coeffs.size())
        raise(errc::length_mismatch, "need exactly d initial values for an order-d recurrence");
    std::vector<Fp> pc(coeffs.size() + 1);
    for (std::size_t j = 0; j < coeffs.size(); ++j) pc[j] = ctx.neg(coeffs[j]);
    pc[coeffs.size()] = ctx.one();
    charpoly = DensePoly(ctx, std::move(pc));
}

const char* algo_name(Algo a) {
    switch (a) {
    case Algo::naive: return "naive";
    case Algo::fiduccia: return "fiduccia";
    case Algo::factored: return "factored";
    }
    return "?";
}

Fp nth_term_naive(const Recurrence& rec, const BigIndex& D, u64 cap) {
    const FieldCtx& F = rec.ctx();
    const std::size_t d = rec.order();
    if (D < BigIndex(d)) return rec.init[D.to_u64()];
    if (!D.fits_u64() || D.to_u64() > cap)
        raise(errc::index_too_large, "direct iteration refused for this index");
    const u64 Du = D.to_u64();
    std::vector<Fp> win = rec.init; // win[k mod d] = a_k over the trailing window
    for (u64 i = d; i <= Du; ++i) {
        Fp acc = F.zero();
        for (std::size_t j = 0; j < d; ++j) acc = F.add(acc, F.mul(rec.coeffs[j], win[(i + j) % d]));
        win[i % d] = acc;
    }
    return win[Du % d];
}

namespace {

Fp dot_with_init(const Recurrence& rec, const DensePoly& r) {
    const FieldCtx& F = rec.ctx();
    Fp acc = F.zero();
    const std::size_t lim = std::min(r.coeffs().size(), rec.init.size());
    for (std::size_t j = 0; j < lim; ++j) acc = F.add(acc, F.mul(r.coeffs()[j], rec.init[j]));
    return acc;
}

// binom(D, j) mod p for j < m: one reduction of D, prefix products of the
// falling factorial, one batch-inverted factorial table.
std::vector<Fp> falling_binomials(const FieldCtx& F, const BigIndex& D, unsigned m) {
    std::vector<Fp> fact(m);
    fact[0] = F.one();
    for (unsigned j = 1; j < m; ++j) fact[j] = F.mul(fact[j - 1], F.from_u64(j));
    std::vector<Fp> invfact(m);
    invfact[m - 1] = F.inv(fact[m - 1]);
    for (unsigned j = m - 1; j >= 1; --j) invfact[j - 1] = F.mul(invfact[j], F.from_u64(j));
    const Fp Dp = F.from_big(D);
    std::vector<Fp> e(m);
    e[0] = F.one();
    Fp run = F.one();
    for (unsigned j = 1; j < m; ++j) {
        run = F.mul(run, F.sub(Dp, F.from_u64(j - 1)));
        e[j] = F.mul(run, invfact[j]);
    }
    return e;
}

} // namespace

Fp nth_term_fiduccia(const Recurrence& rec, const BigIndex& D) {
    return dot_with_init(rec, p_powmod_x(D, rec.charpoly));
}

DensePoly binomial_remainder(const FieldCtx& ctx, const BigIndex& D, unsigned m) {
    if (m == 0) raise(errc::out_of_range, "binomial_remainder: multiplicity must be at least 1");
    if (ctx.modulus() <= m - 1)
        raise(errc::characteristic_too_small, "binomial_remainder: need p > m-1");
    if (D < BigIndex(static_cast<u64>(m) - 1))
        raise(errc::degree_violation, "binomial_remainder: index below m-1");
    DensePoly g(ctx, falling_binomials(ctx, D, m));
    return p_taylor_shift(g, ctx.neg(ctx.one()));
}

BivarElement delta_for_factor(const BivarRing& R, const BigIndex& D) {
    const FieldCtx& F = R.field();
    const unsigned m = static_cast<unsigned>(R.m());
    if (R.base().modulus().coeff(0).v == 0)
        raise(errc::not_coprime, "delta_for_factor: Q(0) must be nonzero");
    if (F.modulus() <= m - 1)
        raise(errc::characteristic_too_small, "delta_for_factor: need p > m-1");
    if (D < BigIndex(static_cast<u64>(m) - 1))
        raise(errc::degree_violation, "delta_for_factor: index below m-1");
    std::vector<Fp> e = falling_binomials(F, D, m);
    BigIndex E = D;
    E.sub_u64(m - 1);
    DensePoly w = p_powmod_x(E, R.base().modulus()); // y^{D-(m-1)} mod Q
    std::vector<DensePoly> g(m, DensePoly(F));
    for (std::size_t j = m; j-- > 0;) {
        g[j] = p_scale(w, e[j]); // binom(D,j) * y^{D-j}
        if (j > 0) w = R.base().mul_by_y(w);
    }
    return from_xy_powers(R, g);
}

Fp nth_term_factored(const Recurrence& rec, const BigIndex& D, std::mt19937_64& rng) {
    const FieldCtx& F = rec.ctx();
    const std::size_t d = rec.order();
    if (rec.coeffs[0].v == 0)
        raise(errc::fast_path_unavailable, "factored path needs a nonzero order-0 coefficient");
    if (F.modulus() <= d) raise(errc::fast_path_unavailable, "factored path needs p > d");
    if (D < BigIndex(2 * static_cast<u64>(d)))
        raise(errc::fast_path_unavailable, "factored path needs index >= 2d");
    SquarefreeFactorization fac = yun_squarefree(rec.charpoly);
    std::vector<DensePoly> residues, moduli;
    residues.reserve(fac.parts.size());
    moduli.reserve(fac.parts.size());
    for (const SquarefreePart& part : fac.parts) {
        BivarRing R(F, part.q, part.m);
        residues.push_back(tangle(R, delta_for_factor(R, D), rng));
        moduli.push_back(p_pow_expand(part.q, part.m));
    }
    return dot_with_init(rec, crt_combine(residues, moduli));
}

AutoResult nth_term_auto(const Recurrence& rec, const BigIndex& D, std::mt19937_64& rng) {
    const std::size_t d = rec.order();
    if (D < BigIndex(2 * static_cast<u64>(d))) return {nth_term_naive(rec, D), Algo::naive};
    if (rec.coeffs[0].v == 0 || rec.ctx().modulus() <= d)
        return {nth_term_fiduccia(rec, D), Algo::fiduccia};
    return {nth_term_factored(rec, D, rng), Algo::factored};
}

} // namespace recseq

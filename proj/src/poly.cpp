#include "recseq/poly.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace recseq {

namespace {

constexpr std::size_t SCHOOLBOOK_MAX = 32; // below this, quadratic wins
constexpr std::size_t NTT_MIN = 64;        // below this, not worth the transforms
constexpr std::size_t SHIFT_BASE = 8;

const FieldCtx& common_ctx(const DensePoly& a, const DensePoly& b) {
    if (a.ctx().modulus() != b.ctx().modulus())
        raise(errc::mixed_context, "polynomial operands belong to different fields");
    return a.ctx();
}

std::vector<Fp> school_mul(const FieldCtx& F, std::span<const Fp> a, std::span<const Fp> b) {
    std::vector<Fp> r(a.size() + b.size() - 1, Fp{0});
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].v == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    return r;
}

std::vector<Fp> kara_mul(const FieldCtx& F, std::span<const Fp> a, std::span<const Fp> b) {
    if (std::min(a.size(), b.size()) < SCHOOLBOOK_MAX) return school_mul(F, a, b);
    std::size_t h = (std::max(a.size(), b.size()) + 1) / 2;
    auto lo = [h](std::span<const Fp> x) { return x.subspan(0, std::min(h, x.size())); };
    auto hi = [h](std::span<const Fp> x) {
        return x.size() > h ? x.subspan(h) : std::span<const Fp>{};
    };
    auto block_sum = [&](std::span<const Fp> x, std::span<const Fp> y) {
        std::vector<Fp> s(std::max(x.size(), y.size()), Fp{0});
        for (std::size_t i = 0; i < x.size(); ++i) s[i] = x[i];
        for (std::size_t i = 0; i < y.size(); ++i) s[i] = F.add(s[i], y[i]);
        return s;
    };

    std::span<const Fp> a0 = lo(a), a1 = hi(a), b0 = lo(b), b1 = hi(b);
    std::vector<Fp> z0 = kara_mul(F, a0, b0);
    std::vector<Fp> z2;
    if (!a1.empty() && !b1.empty()) z2 = kara_mul(F, a1, b1);
    std::vector<Fp> sa = block_sum(a0, a1), sb = block_sum(b0, b1);
    std::vector<Fp> z1 = kara_mul(F, sa, sb);
    for (std::size_t i = 0; i < z0.size(); ++i) z1[i] = F.sub(z1[i], z0[i]);
    for (std::size_t i = 0; i < z2.size(); ++i) z1[i] = F.sub(z1[i], z2[i]);

    std::vector<Fp> r(a.size() + b.size() - 1, Fp{0});
    for (std::size_t i = 0; i < z0.size(); ++i) r[i] = F.add(r[i], z0[i]);
    for (std::size_t i = 0; i < z1.size(); ++i)
        if (h + i < r.size()) r[h + i] = F.add(r[h + i], z1[i]);
    for (std::size_t i = 0; i < z2.size(); ++i) r[2 * h + i] = F.add(r[2 * h + i], z2[i]);
    return r;
}

void ntt_transform(const FieldCtx& F, std::vector<Fp>& a, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    const unsigned s = F.two_adicity();
    for (std::size_t len = 2; len <= n; len <<= 1) {
        unsigned shift = s - static_cast<unsigned>(std::countr_zero(len));
        Fp wlen = F.pow_u64(F.two_adic_root(), u64(1) << shift);
        if (inverse) wlen = F.pow_u64(wlen, len - 1); // wlen^(len) = 1
        for (std::size_t i = 0; i < n; i += len) {
            Fp w = F.one();
            for (std::size_t j = 0; j < len / 2; ++j) {
                Fp u = a[i + j];
                Fp v = F.mul(a[i + j + len / 2], w);
                a[i + j] = F.add(u, v);
                a[i + j + len / 2] = F.sub(u, v);
                w = F.mul(w, wlen);
            }
        }
    }
    if (inverse) {
        Fp ninv = F.inv(F.from_u64(n % F.modulus()));
        for (auto& x : a) x = F.mul(x, ninv);
    }
}

std::vector<Fp> ntt_mul(const FieldCtx& F, std::span<const Fp> a, std::span<const Fp> b) {
    std::size_t rl = a.size() + b.size() - 1;
    std::size_t n = std::bit_ceil(rl);
    std::vector<Fp> fa(a.begin(), a.end()), fb(b.begin(), b.end());
    fa.resize(n, Fp{0});
    fb.resize(n, Fp{0});
    ntt_transform(F, fa, false);
    ntt_transform(F, fb, false);
    for (std::size_t i = 0; i < n; ++i) fa[i] = F.mul(fa[i], fb[i]);
    ntt_transform(F, fa, true);
    fa.resize(rl);
    return fa;
}

} // namespace

DensePoly DensePoly::monomial(const FieldCtx& ctx, std::size_t k, Fp lead) {
    std::vector<Fp> c(k + 1, Fp{0});
    c[k] = lead;
    return DensePoly(ctx, std::move(c));
}

DensePoly DensePoly::from_i64(const FieldCtx& ctx, std::initializer_list<std::int64_t> coeffs) {
    std::vector<Fp> c;
    c.reserve(coeffs.size());
    for (auto v : coeffs) c.push_back(ctx.from_i64(v));
    return DensePoly(ctx, std::move(c));
}

bool DensePoly::operator==(const DensePoly& o) const {
    return ctx_->modulus() == o.ctx_->modulus() && c_ == o.c_;
}

DensePoly p_add(const DensePoly& a, const DensePoly& b) {
    const FieldCtx& F = common_ctx(a, b);
    std::vector<Fp> r(std::max(a.coeffs().size(), b.coeffs().size()), Fp{0});
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) r[i] = a.coeffs()[i];
    for (std::size_t i = 0; i < b.coeffs().size(); ++i) r[i] = F.add(r[i], b.coeffs()[i]);
    return DensePoly(F, std::move(r));
}

DensePoly p_sub(const DensePoly& a, const DensePoly& b) {
    const FieldCtx& F = common_ctx(a, b);
    std::vector<Fp> r(std::max(a.coeffs().size(), b.coeffs().size()), Fp{0});
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) r[i] = a.coeffs()[i];
    for (std::size_t i = 0; i < b.coeffs().size(); ++i) r[i] = F.sub(r[i], b.coeffs()[i]);
    return DensePoly(F, std::move(r));
}

DensePoly p_neg(const DensePoly& a) {
    const FieldCtx& F = a.ctx();
    std::vector<Fp> r = a.coeffs();
    for (auto& x : r) x = F.neg(x);
    return DensePoly(F, std::move(r));
}

DensePoly p_scale(const DensePoly& a, Fp s) {
    const FieldCtx& F = a.ctx();
    std::vector<Fp> r = a.coeffs();
    for (auto& x : r) x = F.mul(x, s);
    return DensePoly(F, std::move(r));
}

DensePoly p_mul(const DensePoly& a, const DensePoly& b) {
    const FieldCtx& F = common_ctx(a, b);
    if (a.is_zero() || b.is_zero()) return DensePoly(F);
    std::span<const Fp> sa = a.coeffs(), sb = b.coeffs();
    std::size_t rl = sa.size() + sb.size() - 1;
    if (std::min(sa.size(), sb.size()) < SCHOOLBOOK_MAX)
        return DensePoly(F, school_mul(F, sa, sb));
    if (rl >= NTT_MIN && std::bit_ceil(rl) <= (std::size_t(1) << std::min<unsigned>(F.two_adicity(), 62)))
        return DensePoly(F, ntt_mul(F, sa, sb));
    return DensePoly(F, kara_mul(F, sa, sb));
}

std::pair<DensePoly, DensePoly> p_divrem(const DensePoly& a, const DensePoly& b) {
    const FieldCtx& F = common_ctx(a, b);
    if (b.is_zero()) raise(errc::division_by_zero, "p_divrem: division by the zero polynomial");
    if (a.degree() < b.degree()) return {DensePoly(F), a};
    const std::size_t db = static_cast<std::size_t>(b.degree());
    std::vector<Fp> rem = a.coeffs();
    std::vector<Fp> q(rem.size() - db, Fp{0});
    const bool monic = b.is_monic();
    Fp lcinv = monic ? F.one() : F.inv(b.leading());
    for (std::size_t kk = rem.size(); kk > db; --kk) {
        const std::size_t k = kk - 1;
        Fp c = rem[k];
        if (c.v != 0) {
            Fp qc = monic ? c : F.mul(c, lcinv);
            q[k - db] = qc;
            for (std::size_t i = 0; i < db; ++i)
                rem[k - db + i] = F.sub(rem[k - db + i], F.mul(qc, b.coeffs()[i]));
            rem[k] = Fp{0};
        }
    }
    rem.resize(db);
    return {DensePoly(F, std::move(q)), DensePoly(F, std::move(rem))};
}

DensePoly p_rem(const DensePoly& a, const DensePoly& b) { return p_divrem(a, b).second; }

DensePoly p_monic(const DensePoly& a) {
    if (a.is_zero() || a.is_monic()) return a;
    return p_scale(a, a.ctx().inv(a.leading()));
}

DensePoly p_gcd(const DensePoly& a, const DensePoly& b) {
    common_ctx(a, b);
    if (a.is_zero() && b.is_zero()) raise(errc::both_zero, "p_gcd: gcd(0, 0) is undefined");
    DensePoly x = a, y = b;
    while (!y.is_zero()) {
        DensePoly r = p_rem(x, y);
        x = std::move(y);
        y = std::move(r);
    }
    return p_monic(x);
}

DensePoly p_invmod(const DensePoly& a, const DensePoly& M) {
    const FieldCtx& F = common_ctx(a, M);
    if (M.degree() < 1) raise(errc::degree_violation, "p_invmod: modulus must be nonconstant");
    DensePoly r0 = p_rem(a, M), r1 = M;
    DensePoly s0 = DensePoly(F, {F.one()}), s1 = DensePoly(F);
    while (!r1.is_zero()) {
        auto [q, r2] = p_divrem(r0, r1);
        DensePoly s2 = p_sub(s0, p_mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r0.degree() != 0) raise(errc::not_coprime, "p_invmod: operand shares a factor with the modulus");
    return p_rem(p_scale(s0, F.inv(r0.coeff(0))), M);
}

DensePoly p_derivative(const DensePoly& a) {
    const FieldCtx& F = a.ctx();
    if (a.coeffs().size() <= 1) return DensePoly(F);
    std::vector<Fp> r(a.coeffs().size() - 1);
    for (std::size_t k = 1; k < a.coeffs().size(); ++k)
        r[k - 1] = F.mul(a.coeffs()[k], F.from_u64(static_cast<u64>(k)));
    return DensePoly(F, std::move(r));
}

Fp p_eval(const DensePoly& a, Fp x) {
    const FieldCtx& F = a.ctx();
    Fp r = F.zero();
    for (std::size_t k = a.coeffs().size(); k-- > 0;) r = F.add(F.mul(r, x), a.coeffs()[k]);
    return r;
}

namespace {

// r <- r*x mod M for monic M, linear cost.
void mulx_mod_inplace(const FieldCtx& F, std::vector<Fp>& r, const DensePoly& M) {
    const std::size_t dM = static_cast<std::size_t>(M.degree());
    r.insert(r.begin(), Fp{0});
    if (r.size() == dM + 1) {
        Fp top = r.back();
        r.pop_back();
        if (top.v != 0)
            for (std::size_t i = 0; i < dM; ++i) r[i] = F.sub(r[i], F.mul(top, M.coeffs()[i]));
    }
}

void require_monic_modulus(const DensePoly& M, const char* who) {
    if (M.degree() < 1) raise(errc::degree_violation, std::string(who) + ": modulus must be nonconstant");
    if (!M.is_monic()) raise(errc::not_monic, std::string(who) + ": modulus must be monic");
}

} // namespace

DensePoly p_powmod_x(const BigIndex& D, const DensePoly& M) {
    const FieldCtx& F = M.ctx();
    require_monic_modulus(M, "p_powmod_x");
    const std::size_t dM = static_cast<std::size_t>(M.degree());
    if (D.fits_u64() && D.to_u64() < dM) return DensePoly::monomial(F, D.to_u64(), F.one());
    std::vector<Fp> r{F.one()};
    DensePoly rp(F, r);
    for (std::size_t i = D.bit_length(); i-- > 0;) {
        rp = p_rem(p_mul(rp, rp), M);
        if (D.bit(i)) {
            std::vector<Fp> buf = rp.coeffs();
            mulx_mod_inplace(F, buf, M);
            rp = DensePoly(F, std::move(buf));
        }
    }
    return rp;
}

DensePoly p_powmod(const DensePoly& a, const BigIndex& E, const DensePoly& M) {
    const FieldCtx& F = common_ctx(a, M);
    require_monic_modulus(M, "p_powmod");
    DensePoly base = p_rem(a, M);
    DensePoly r(F, {F.one()});
    for (std::size_t i = E.bit_length(); i-- > 0;) {
        r = p_rem(p_mul(r, r), M);
        if (E.bit(i)) r = p_rem(p_mul(r, base), M);
    }
    return r;
}

namespace {

DensePoly shift_dc_rec(const FieldCtx& F, std::span<const Fp> c, Fp shift,
                       const std::vector<DensePoly>& table) {
    const std::size_t len = c.size();
    if (len == 0) return DensePoly(F);
    if (len <= SHIFT_BASE) {
        // Horner in (x + shift)
        DensePoly res(F, {c[len - 1]});
        for (std::size_t k = len - 1; k-- > 0;) {
            std::vector<Fp> buf(res.coeffs().size() + 1, Fp{0});
            for (std::size_t i = 0; i < res.coeffs().size(); ++i) {
                buf[i + 1] = res.coeffs()[i];
                buf[i] = F.add(buf[i], F.mul(res.coeffs()[i], shift));
            }
            buf[0] = F.add(buf[0], c[k]);
            res = DensePoly(F, std::move(buf));
        }
        return res;
    }
    const std::size_t h = std::bit_floor(len - 1);
    const std::size_t j = static_cast<std::size_t>(std::countr_zero(h));
    DensePoly lo = shift_dc_rec(F, c.subspan(0, h), shift, table);
    DensePoly hi = shift_dc_rec(F, c.subspan(h), shift, table);
    return p_add(lo, p_mul(table[j], hi));
}

DensePoly shift_divide_conquer(const DensePoly& a, Fp c) {
    const FieldCtx& F = a.ctx();
    const std::size_t len = a.coeffs().size();
    std::vector<DensePoly> table;
    if (len > SHIFT_BASE) {
        std::size_t top = std::bit_floor(len - 1);
        table.push_back(DensePoly(F, {c, F.one()})); // x + c
        while ((std::size_t(1) << (table.size() - 1)) < top)
            table.push_back(p_mul(table.back(), table.back()));
    }
    return shift_dc_rec(F, a.coeffs(), c, table);
}

DensePoly shift_convolution(const DensePoly& a, Fp c) {
    const FieldCtx& F = a.ctx();
    const std::size_t n = a.coeffs().size();
    // b_i * i! = sum_d (a_{i+d} (i+d)!) * (c^d / d!)
    std::vector<Fp> fact(n), invfact(n);
    fact[0] = F.one();
    for (std::size_t k = 1; k < n; ++k) fact[k] = F.mul(fact[k - 1], F.from_u64(k));
    invfact[n - 1] = F.inv(fact[n - 1]);
    for (std::size_t k = n - 1; k-- > 0;) invfact[k] = F.mul(invfact[k + 1], F.from_u64(k + 1));
    std::vector<Fp> U(n), V(n);
    Fp cpow = F.one();
    for (std::size_t k = 0; k < n; ++k) {
        U[k] = F.mul(a.coeffs()[k], fact[k]);
        V[k] = F.mul(cpow, invfact[k]);
        cpow = F.mul(cpow, c);
    }
    std::vector<Fp> w = p_mul_transposed(F, DensePoly(F, std::move(V)), U, n);
    std::vector<Fp> b(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = F.mul(w[i], invfact[i]);
    return DensePoly(F, std::move(b));
}

} // namespace

DensePoly p_taylor_shift(const DensePoly& a, Fp c, ShiftMethod method) {
    const FieldCtx& F = a.ctx();
    if (a.is_zero() || c.v == 0 || a.degree() == 0) return a;
    const u64 dega = static_cast<u64>(a.degree());
    switch (method) {
    case ShiftMethod::divide_conquer:
        return shift_divide_conquer(a, c);
    case ShiftMethod::convolution:
        if (F.modulus() <= dega)
            raise(errc::characteristic_too_small, "p_taylor_shift: factorials are not invertible");
        return shift_convolution(a, c);
    case ShiftMethod::automatic:
    default:
        return F.modulus() > dega ? shift_convolution(a, c) : shift_divide_conquer(a, c);
    }
}

DensePoly p_pow_expand(const DensePoly& Q, unsigned m) {
    const FieldCtx& F = Q.ctx();
    if (m == 0) raise(errc::out_of_range, "p_pow_expand: exponent must be at least 1");
    DensePoly r(F, {F.one()});
    DensePoly base = Q;
    for (;;) {
        if (m & 1) r = p_mul(r, base);
        m >>= 1;
        if (m == 0) break;
        base = p_mul(base, base);
    }
    return r;
}

std::vector<Fp> p_mul_transposed(const FieldCtx& ctx, const DensePoly& a, std::span<const Fp> v,
                                 std::size_t out_len) {
    if (ctx.modulus() != a.ctx().modulus())
        raise(errc::mixed_context, "p_mul_transposed: operands belong to different fields");
    std::vector<Fp> out(out_len, Fp{0});
    if (a.is_zero() || out_len == 0) return out;
    const std::size_t la = a.coeffs().size();
    std::vector<Fp> rev(a.coeffs().rbegin(), a.coeffs().rend());
    const std::size_t need = la - 1 + out_len;
    std::vector<Fp> vv(need, Fp{0});
    for (std::size_t i = 0; i < std::min(need, v.size()); ++i) vv[i] = v[i];
    DensePoly conv = p_mul(DensePoly(ctx, std::move(rev)), DensePoly(ctx, std::move(vv)));
    for (std::size_t j = 0; j < out_len; ++j) out[j] = conv.coeff(la - 1 + j);
    return out;
}

} // namespace recseq

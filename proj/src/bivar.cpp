#include "recseq/bivar.hpp"

#include <bit>

namespace recseq {

namespace {

std::size_t floor_log2(std::size_t v) { return static_cast<std::size_t>(std::countr_zero(std::bit_floor(v))); }

// Pascal row: binom(m, 0..m) mod p, addition only (no characteristic limits).
std::vector<Fp> binomial_row(const FieldCtx& F, std::size_t m) {
    std::vector<Fp> row{F.one()};
    for (std::size_t i = 1; i <= m; ++i) {
        row.push_back(F.zero());
        for (std::size_t k = i; k >= 1; --k) row[k] = F.add(row[k], row[k - 1]);
    }
    return row;
}

} // namespace

ResidueRing::ResidueRing(const FieldCtx& ctx, DensePoly Q) : ctx_(&ctx), q_(std::move(Q)) {
    if (q_.ctx().modulus() != ctx.modulus())
        raise(errc::mixed_context, "ResidueRing: modulus polynomial from a different field");
    if (q_.degree() < 1) raise(errc::degree_violation, "ResidueRing: Q must be nonconstant");
    if (!q_.is_monic()) raise(errc::not_monic, "ResidueRing: Q must be monic");
    f_ = static_cast<std::size_t>(q_.degree());
    rec_.resize(f_);
    for (std::size_t k = 0; k < f_; ++k) rec_[k] = ctx.neg(q_.coeff(k));
}

DensePoly ResidueRing::reduce(const DensePoly& a) const {
    return a.degree() < static_cast<long>(f_) ? a : p_rem(a, q_);
}

DensePoly ResidueRing::mul(const DensePoly& a, const DensePoly& b) const { return reduce(p_mul(a, b)); }

DensePoly ResidueRing::mul_by_y(const DensePoly& a) const {
    if (a.is_zero()) return a;
    std::vector<Fp> buf = a.coeffs();
    buf.insert(buf.begin(), Fp{0});
    if (buf.size() == f_ + 1) {
        Fp top = buf.back();
        buf.pop_back();
        if (top.v != 0)
            for (std::size_t k = 0; k < f_; ++k)
                if (rec_[k].v != 0) buf[k] = ctx_->add(buf[k], ctx_->mul(top, rec_[k]));
    }
    return DensePoly(*ctx_, std::move(buf));
}

std::vector<Fp> ResidueRing::extend_form(std::span<const Fp> phi, std::size_t out_len) const {
    if (phi.size() != f_) raise(errc::length_mismatch, "extend_form: form must have f values");
    std::vector<Fp> out(out_len, Fp{0});
    for (std::size_t i = 0; i < std::min(f_, out_len); ++i) out[i] = phi[i];
    for (std::size_t j = f_; j < out_len; ++j) {
        Fp acc = ctx_->zero();
        for (std::size_t k = 0; k < f_; ++k)
            if (rec_[k].v != 0) acc = ctx_->add(acc, ctx_->mul(rec_[k], out[j - f_ + k]));
        out[j] = acc;
    }
    return out;
}

namespace {

// ---- Kronecker-packed products of residue-coefficient polynomials ----
//
// A vector (g_0, ..., g_{L-1}) of residues stands for sum_b g_b(y) X^b. Pack
// with y-stride s = 2f-1: since every y-degree is < f, product blocks stay
// below the stride and never alias.

std::vector<Fp> pack_blocks(const ResidueRing& R, std::span<const DensePoly> g) {
    const std::size_t f = R.extension_degree(), s = 2 * f - 1;
    std::vector<Fp> out(s * g.size(), Fp{0});
    for (std::size_t b = 0; b < g.size(); ++b)
        for (std::size_t a = 0; a < g[b].coeffs().size(); ++a) out[b * s + a] = g[b].coeffs()[a];
    return out;
}

// Product truncated to `trunc` X-coefficients, each reduced mod Q.
std::vector<DensePoly> kron_mul(const ResidueRing& R, std::span<const DensePoly> u,
                                std::span<const DensePoly> v, std::size_t trunc) {
    const FieldCtx& F = R.field();
    const std::size_t f = R.extension_degree(), s = 2 * f - 1;
    const std::size_t lout = std::min(u.size() + v.size() - 1, trunc);
    DensePoly conv = p_mul(DensePoly(F, pack_blocks(R, u)), DensePoly(F, pack_blocks(R, v)));
    std::vector<DensePoly> out;
    out.reserve(lout);
    for (std::size_t b = 0; b < lout; ++b) {
        std::vector<Fp> block(s);
        for (std::size_t a = 0; a < s; ++a) block[a] = conv.coeff(b * s + a);
        out.push_back(R.reduce(DensePoly(F, std::move(block))));
    }
    return out;
}

// Transpose of z -> trunc(W x z) on Lz-block inputs: nu carries
// min(|W| + Lz - 1, trunc) blocks of f values, the result Lz blocks.
std::vector<Fp> tr_kron_mul(const ResidueRing& R, std::span<const DensePoly> W, std::span<const Fp> nu,
                            std::size_t Lz) {
    const FieldCtx& F = R.field();
    const std::size_t f = R.extension_degree(), s = 2 * f - 1;
    const std::size_t full = W.size() + Lz - 1;
    const std::size_t lout = nu.size() / f;
    std::vector<Fp> V(s * full, Fp{0}); // zero blocks beyond lout: transpose of truncation
    for (std::size_t b = 0; b < lout; ++b) {
        std::vector<Fp> ext = R.extend_form(nu.subspan(b * f, f), s);
        for (std::size_t a = 0; a < s; ++a) V[b * s + a] = ext[a];
    }
    std::vector<Fp> u = p_mul_transposed(F, DensePoly(F, pack_blocks(R, W)), V, s * Lz);
    std::vector<Fp> out(f * Lz);
    for (std::size_t c = 0; c < Lz; ++c)
        for (std::size_t a = 0; a < f; ++a) out[c * f + a] = u[c * s + a];
    return out;
}

void add_blocks(const FieldCtx& F, std::vector<DensePoly>& acc, const std::vector<DensePoly>& inc) {
    for (std::size_t i = 0; i < inc.size(); ++i) acc[i] = p_add(acc[i], inc[i]);
    (void)F;
}

} // namespace

BivarRing::BivarRing(const FieldCtx& ctx, DensePoly Q, unsigned m)
    : base_(ctx, std::move(Q)), m_(m), n_(base_.extension_degree() * m) {
    if (m_ == 0) raise(errc::out_of_range, "BivarRing: multiplicity must be at least 1");
    const FieldCtx& F = ctx;
    const std::size_t f = base_.extension_degree();

    neg_y_ = base_.reduce(DensePoly::from_i64(F, {0, -1}));

    // (y+t)^{2^j} mod <t^m, Q>, used by the untangle splits (ranges up to n)
    if (n_ >= 2) {
        std::vector<DensePoly> yt;
        yt.push_back(base_.reduce(DensePoly::monomial(F, 1, F.one()))); // y
        if (m_ >= 2) yt.push_back(DensePoly(F, {F.one()}));             // + t
        tpow_.push_back(std::move(yt));
        const std::size_t jmax = floor_log2(n_ - 1);
        while (tpow_.size() <= jmax) tpow_.push_back(kron_mul(base_, tpow_.back(), tpow_.back(), m_));
    }

    // (x + (-y))^{2^j} over R, full products, used by the t -> x shift
    if (m_ >= 2) {
        wpow_.push_back({neg_y_, DensePoly(F, {F.one()})});
        const std::size_t jmax = floor_log2(m_ - 1);
        while (wpow_.size() <= jmax)
            wpow_.push_back(kron_mul(base_, wpow_.back(), wpow_.back(), 2 * m_));
    }

    // x^m == sum_k xm_rec_[k] x^k mod (x-y)^m, from the binomial expansion
    std::vector<Fp> binom = binomial_row(F, m_);
    xm_rec_.reserve(m_);
    xm_rec_.assign(m_, DensePoly(F));
    DensePoly ypw(F, {F.one()});
    for (std::size_t j = 1; j <= m_; ++j) {
        ypw = base_.mul_by_y(ypw); // y^j mod Q
        const std::size_t k = m_ - j;
        Fp cf = binom[k];
        if (j % 2 == 0) cf = F.neg(cf); // sign (-1)^{j+1}
        xm_rec_[k] = p_scale(ypw, cf);
    }

    // Columns of the multiply-by-xm_rec_[k] matrices on R, for the transposed
    // x-division: column j of matrix k is xm_rec_[k] * y^j mod Q.
    xm_rec_tr_.resize(m_);
    for (std::size_t k = 0; k < m_; ++k) {
        auto& cols = xm_rec_tr_[k];
        cols.resize(f);
        DensePoly cur = xm_rec_[k];
        for (std::size_t j = 0; j < f; ++j) {
            cols[j].assign(f, Fp{0});
            for (std::size_t a = 0; a < cur.coeffs().size(); ++a) cols[j][a] = cur.coeffs()[a];
            if (j + 1 < f) cur = base_.mul_by_y(cur);
        }
    }
}

BivarElement BivarRing::zero_element() const {
    return BivarElement{std::vector<DensePoly>(m_, DensePoly(field()))};
}

BivarElement BivarRing::one_element() const {
    BivarElement e = zero_element();
    e.xc[0] = DensePoly(field(), {field().one()});
    return e;
}

BivarElement BivarRing::basis_element(std::size_t a, std::size_t b) const {
    if (a >= f() || b >= m_) raise(errc::out_of_range, "basis_element: index outside the x-power basis");
    BivarElement e = zero_element();
    e.xc[b] = DensePoly::monomial(field(), a, field().one());
    return e;
}

std::vector<Fp> flatten(const BivarRing& R, const BivarElement& u) {
    const std::size_t f = R.f();
    std::vector<Fp> out(R.n(), Fp{0});
    for (std::size_t b = 0; b < R.m(); ++b)
        for (std::size_t a = 0; a < u.xc[b].coeffs().size(); ++a) out[b * f + a] = u.xc[b].coeffs()[a];
    return out;
}

namespace {

void check_element(const BivarRing& R, const BivarElement& u, const char* who) {
    if (u.xc.size() != R.m()) raise(errc::ring_mismatch, std::string(who) + ": element has wrong x-length");
    for (const auto& g : u.xc) {
        if (g.ctx().modulus() != R.field().modulus())
            raise(errc::ring_mismatch, std::string(who) + ": element from a different field");
        if (g.degree() >= static_cast<long>(R.f()))
            raise(errc::ring_mismatch, std::string(who) + ": coefficient not reduced mod Q");
    }
}

} // namespace

BivarElement bv_mul(const BivarRing& R, const BivarElement& u, const BivarElement& v) {
    check_element(R, u, "bv_mul");
    check_element(R, v, "bv_mul");
    const FieldCtx& F = R.field();
    const std::size_t m = R.m();
    std::vector<DensePoly> w(2 * m - 1, DensePoly(F));
    for (std::size_t i = 0; i < m; ++i) {
        if (u.xc[i].is_zero()) continue;
        for (std::size_t j = 0; j < m; ++j) {
            if (v.xc[j].is_zero()) continue;
            w[i + j] = p_add(w[i + j], R.base().mul(u.xc[i], v.xc[j]));
        }
    }
    for (std::size_t b = 2 * m - 2; b >= m && b != static_cast<std::size_t>(-1); --b) {
        if (w[b].is_zero()) continue;
        for (std::size_t k = 0; k < m; ++k) {
            const DensePoly& rk = R.xm_rec()[k];
            if (rk.is_zero()) continue;
            w[b - m + k] = p_add(w[b - m + k], R.base().mul(w[b], rk));
        }
    }
    w.resize(m);
    return BivarElement{std::move(w)};
}

namespace {

// C(y + t) mod <t^m, Q> by splitting C at powers of two; result length
// min(len, m) on the t-basis.
std::vector<DensePoly> untangle_t_rec(const BivarRing& R, std::span<const Fp> c) {
    const FieldCtx& F = R.field();
    if (c.size() == 1) return {DensePoly(F, {c[0]})};
    const std::size_t h = std::bit_floor(c.size() - 1);
    const std::size_t j = floor_log2(h);
    std::vector<DensePoly> lo = untangle_t_rec(R, c.subspan(0, h));
    std::vector<DensePoly> hi = untangle_t_rec(R, c.subspan(h));
    std::vector<DensePoly> out = kron_mul(R.base(), R.tpow(j), hi, R.m());
    if (out.size() < std::min(c.size(), R.m())) out.resize(std::min(c.size(), R.m()), DensePoly(F));
    for (std::size_t i = 0; i < lo.size(); ++i) out[i] = p_add(out[i], lo[i]);
    return out;
}

// Taylor shift by the constant residue -y: G(t) -> G(x + (-y)), length
// preserved; divide and conquer mirrors untangle_t_rec.
std::vector<DensePoly> shift_rec(const BivarRing& R, std::span<const DensePoly> g) {
    if (g.size() <= 1) return {g.begin(), g.end()};
    const std::size_t h = std::bit_floor(g.size() - 1);
    const std::size_t j = floor_log2(h);
    std::vector<DensePoly> lo = shift_rec(R, g.subspan(0, h));
    std::vector<DensePoly> hi = shift_rec(R, g.subspan(h));
    std::vector<DensePoly> out = kron_mul(R.base(), R.wpow(j), hi, g.size());
    add_blocks(R.field(), out, lo);
    return out;
}

} // namespace

BivarElement from_xy_powers(const BivarRing& R, std::span<const DensePoly> g) {
    if (g.size() > R.m()) raise(errc::length_mismatch, "from_xy_powers: more than m coefficients");
    std::vector<DensePoly> tv(R.m(), DensePoly(R.field()));
    for (std::size_t b = 0; b < g.size(); ++b) {
        if (g[b].ctx().modulus() != R.field().modulus())
            raise(errc::mixed_context, "from_xy_powers: coefficient from a different field");
        tv[b] = R.base().reduce(g[b]);
    }
    return BivarElement{shift_rec(R, tv)};
}

BivarElement untangle(const BivarRing& R, const DensePoly& C) {
    if (C.ctx().modulus() != R.field().modulus())
        raise(errc::mixed_context, "untangle: operand from a different field");
    if (C.degree() >= static_cast<long>(R.n()))
        raise(errc::degree_violation, "untangle: operand degree must be below f*m");
    if (C.is_zero()) return R.zero_element();
    std::vector<DensePoly> tv = untangle_t_rec(R, C.coeffs());
    tv.resize(R.m(), DensePoly(R.field()));
    return BivarElement{shift_rec(R, tv)};
}

std::vector<std::vector<Fp>> untangle_matrix(const BivarRing& R, std::size_t max_n) {
    const std::size_t n = R.n();
    if (n > max_n) raise(errc::too_large, "untangle_matrix: ring dimension exceeds the dense bound");
    std::vector<std::vector<Fp>> M(n, std::vector<Fp>(n, Fp{0}));
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<Fp> col = flatten(R, untangle(R, DensePoly::monomial(R.field(), j, R.field().one())));
        for (std::size_t i = 0; i < n; ++i) M[i][j] = col[i];
    }
    return M;
}

namespace {

// Transpose of shift_rec on L blocks: writes mu(shift(e_range)) into out.
void tr_shift_rec(const BivarRing& R, std::span<const Fp> nu, std::span<Fp> out) {
    const std::size_t f = R.f();
    const std::size_t L = nu.size() / f;
    if (L <= 1) {
        for (std::size_t i = 0; i < nu.size(); ++i) out[i] = nu[i];
        return;
    }
    const std::size_t h = std::bit_floor(L - 1);
    const std::size_t j = floor_log2(h);
    std::vector<Fp> nu_hi = tr_kron_mul(R.base(), R.wpow(j), nu, L - h);
    tr_shift_rec(R, nu.subspan(0, f * h), out.subspan(0, f * h));
    tr_shift_rec(R, nu_hi, out.subspan(f * h));
}

// Transpose of untangle_t_rec on a coefficient range of `len` scalars; nu
// carries min(len, m) blocks.
void tr_untangle_rec(const BivarRing& R, std::span<const Fp> nu, std::size_t len, std::span<Fp> out) {
    const std::size_t f = R.f();
    if (len == 1) {
        out[0] = nu[0]; // the (t^0, y^0) coordinate
        return;
    }
    const std::size_t h = std::bit_floor(len - 1);
    const std::size_t j = floor_log2(h);
    const std::size_t Llo = std::min(h, R.m());
    const std::size_t Lhi = std::min(len - h, R.m());
    std::vector<Fp> nu_hi = tr_kron_mul(R.base(), R.tpow(j), nu, Lhi);
    tr_untangle_rec(R, nu.subspan(0, f * Llo), h, out.subspan(0, h));
    tr_untangle_rec(R, nu_hi, len - h, out.subspan(h));
}

} // namespace

std::vector<Fp> transposed_untangle(const BivarRing& R, const LinearForm& mu) {
    if (mu.values.size() != R.n())
        raise(errc::length_mismatch, "transposed_untangle: form must have n values");
    std::vector<Fp> snu(R.n());
    tr_shift_rec(R, mu.values, snu);
    std::vector<Fp> out(R.n());
    tr_untangle_rec(R, snu, R.n(), out);
    return out;
}

LinearForm transposed_bv_mul(const BivarRing& R, const LinearForm& lambda, const BivarElement& delta) {
    if (lambda.values.size() != R.n())
        raise(errc::length_mismatch, "transposed_bv_mul: form must have n values");
    check_element(R, delta, "transposed_bv_mul");
    const FieldCtx& F = R.field();
    const std::size_t f = R.f(), m = R.m();
    // Transpose of reduction in x mod (x-y)^m: extend the form along the
    // recurrence x^b = sum_k xm_rec_[k] x^{b-m+k}.
    std::vector<Fp> lam(f * (2 * m - 1), Fp{0});
    for (std::size_t i = 0; i < lambda.values.size(); ++i) lam[i] = lambda.values[i];
    for (std::size_t b = m; b <= 2 * m - 2; ++b) {
        Fp* dst = &lam[b * f];
        for (std::size_t k = 0; k < m; ++k) {
            const auto& cols = R.xm_rec_tr(k);
            const Fp* src = &lam[(b - m + k) * f];
            for (std::size_t jj = 0; jj < f; ++jj) {
                Fp acc = F.zero();
                for (std::size_t a = 0; a < f; ++a)
                    if (cols[jj][a].v != 0) acc = F.add(acc, F.mul(cols[jj][a], src[a]));
                dst[jj] = F.add(dst[jj], acc);
            }
        }
    }
    // Transpose of the x-convolution by delta.
    return LinearForm{tr_kron_mul(R.base(), delta.xc, lam, m)};
}

DensePoly projection_numerator(const DensePoly& ptilde, std::span<const Fp> h) {
    const FieldCtx& F = ptilde.ctx();
    if (ptilde.degree() < 1) raise(errc::degree_violation, "projection_numerator: modulus must be nonconstant");
    if (!ptilde.is_monic()) raise(errc::not_monic, "projection_numerator: modulus must be monic");
    const std::size_t n = static_cast<std::size_t>(ptilde.degree());
    if (h.size() != n) raise(errc::length_mismatch, "projection_numerator: need exactly deg ptilde values");
    std::vector<Fp> t(n);
    for (std::size_t k = 0; k < n; ++k) t[k] = h[n - 1 - k];
    DensePoly prod = p_mul(ptilde, DensePoly(F, std::move(t)));
    std::vector<Fp> num(n);
    for (std::size_t k = 0; k < n; ++k) num[k] = prod.coeff(n + k);
    return DensePoly(F, std::move(num));
}

namespace {

// Gauss-Jordan; A is square and invertible here (untangle is an isomorphism).
std::vector<Fp> solve_dense(const FieldCtx& F, std::vector<std::vector<Fp>> A, std::vector<Fp> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && A[piv][col].v == 0) ++piv;
        if (piv == n) raise(errc::singular_projection, "dense solve: singular matrix");
        std::swap(A[piv], A[col]);
        std::swap(b[piv], b[col]);
        Fp inv = F.inv(A[col][col]);
        for (std::size_t j = col; j < n; ++j) A[col][j] = F.mul(A[col][j], inv);
        b[col] = F.mul(b[col], inv);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || A[r][col].v == 0) continue;
            Fp factor = A[r][col];
            for (std::size_t j = col; j < n; ++j) A[r][j] = F.sub(A[r][j], F.mul(factor, A[col][j]));
            b[r] = F.sub(b[r], F.mul(factor, b[col]));
        }
    }
    return b;
}

} // namespace

DensePoly tangle(const BivarRing& R, const BivarElement& delta, std::mt19937_64& rng,
                 unsigned max_retries, std::size_t dense_fallback_bound, TangleStats* stats) {
    check_element(R, delta, "tangle");
    const FieldCtx& F = R.field();
    const std::size_t n = R.n();
    if (stats) *stats = TangleStats{};
    DensePoly ptilde = p_pow_expand(R.base().modulus(), static_cast<unsigned>(R.m()));
    for (unsigned attempt = 0; attempt < max_retries; ++attempt) {
        LinearForm lambda;
        lambda.values.reserve(n);
        for (std::size_t i = 0; i < n; ++i) lambda.values.push_back(F.sample(rng));
        if (stats) ++stats->attempts;
        std::vector<Fp> h = transposed_untangle(R, lambda);
        DensePoly Nh = projection_numerator(ptilde, h);
        if (Nh.is_zero()) continue;
        if (p_gcd(Nh, ptilde).degree() != 0) continue;
        LinearForm mu = transposed_bv_mul(R, lambda, delta);
        std::vector<Fp> l = transposed_untangle(R, mu);
        DensePoly Nl = projection_numerator(ptilde, l);
        DensePoly C = p_rem(p_mul(Nl, p_invmod(Nh, ptilde)), ptilde);
        if (untangle(R, C) == delta) return C; // Las Vegas: verify before returning
    }
    if (n <= dense_fallback_bound) {
        if (stats) stats->fallback_used = true;
        std::vector<std::vector<Fp>> U = untangle_matrix(R, dense_fallback_bound);
        std::vector<Fp> c = solve_dense(F, std::move(U), flatten(R, delta));
        DensePoly C(F, std::move(c));
        if (untangle(R, C) == delta) return C;
        raise(errc::singular_projection, "tangle: dense fallback failed verification");
    }
    raise(errc::singular_projection, "tangle: no usable projection within the retry budget");
}

} // namespace recseq

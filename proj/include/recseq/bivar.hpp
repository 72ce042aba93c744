#ifndef RECSEQ_BIVAR_HPP
#define RECSEQ_BIVAR_HPP

#include <cstddef>
#include <random>
#include <span>
#include <vector>

#include "recseq/poly.hpp"

namespace recseq {

// Machinery for the quotient algebra
//
//     A = K[y, x] / < Q(y), (x - y)^m >,   K = Z/p,  f = deg Q,  n = f * m.
//
// For squarefree Q with the right coprimality this algebra is isomorphic to
// K[x]/Q(x)^m; `untangle` is the forward isomorphism (reduce a univariate
// residue into A) and `tangle` inverts it. Elements of A are stored on the
// x-power basis: m coefficients in R = K[y]/Q, index (a, b) <-> y^a x^b.
// Flattened vectors and linear forms use position b*f + a.
//
// Some operations need the shifted presentation t = x - y, where the second
// generator becomes t^m and reduction is plain truncation; the t-basis never
// escapes this module.

// R = K[y]/Q for monic Q, deg Q >= 1. Carries the transposed helpers used by
// the transposed bivariate operations.
class ResidueRing {
public:
    ResidueRing(const FieldCtx& ctx, DensePoly Q);

    const FieldCtx& field() const { return *ctx_; }
    const DensePoly& modulus() const { return q_; }
    std::size_t extension_degree() const { return f_; }

    DensePoly reduce(const DensePoly& a) const;
    DensePoly mul(const DensePoly& a, const DensePoly& b) const;
    DensePoly mul_by_y(const DensePoly& a) const; // multiply by y, then reduce

    // Transpose of `reduce` restricted to inputs of length out_len: extends a
    // linear form phi on R to polynomials of degree < out_len through the
    // recurrence y^f = sum_k rec_k y^k induced by Q.
    std::vector<Fp> extend_form(std::span<const Fp> phi, std::size_t out_len) const;

private:
    const FieldCtx* ctx_;
    DensePoly q_;
    std::size_t f_;
    std::vector<Fp> rec_; // rec_[k] = -Q_k, so y^{f} == sum_k rec_[k] y^{k} (mod Q)
};

// Element of A: exactly m x-coefficients, each reduced mod Q.
struct BivarElement {
    std::vector<DensePoly> xc;
    bool operator==(const BivarElement&) const = default;
};

// Linear form on A (or flattened element of A): n = f*m values, y^a x^b at
// position b*f + a.
struct LinearForm {
    std::vector<Fp> values;
    bool operator==(const LinearForm&) const = default;
};

struct TangleStats {
    unsigned attempts = 0;     // random projections drawn
    bool fallback_used = false;
};

class BivarRing {
public:
    // Q monic nonconstant, m >= 1.
    BivarRing(const FieldCtx& ctx, DensePoly Q, unsigned m);

    const FieldCtx& field() const { return base_.field(); }
    const ResidueRing& base() const { return base_; }
    std::size_t f() const { return base_.extension_degree(); }
    std::size_t m() const { return m_; }
    std::size_t n() const { return n_; }

    BivarElement zero_element() const;
    BivarElement one_element() const;
    BivarElement basis_element(std::size_t a, std::size_t b) const; // y^a x^b

    // Internal tables, exposed for the implementation files.
    const std::vector<DensePoly>& tpow(std::size_t j) const { return tpow_[j]; }
    const std::vector<DensePoly>& wpow(std::size_t j) const { return wpow_[j]; }
    const DensePoly& neg_y() const { return neg_y_; }
    const std::vector<DensePoly>& xm_rec() const { return xm_rec_; }
    const std::vector<std::vector<Fp>>& xm_rec_tr(std::size_t k) const { return xm_rec_tr_[k]; }

private:
    ResidueRing base_;
    std::size_t m_;
    std::size_t n_;
    DensePoly neg_y_;                            // (-y) mod Q
    std::vector<std::vector<DensePoly>> tpow_;   // (y+t)^{2^j} mod <t^m, Q>, on the t-basis
    std::vector<std::vector<DensePoly>> wpow_;   // (x + neg_y)^{2^j} over R, full length
    std::vector<DensePoly> xm_rec_;              // x^m == sum_k xm_rec_[k] x^k mod (x-y)^m
    std::vector<std::vector<std::vector<Fp>>> xm_rec_tr_; // transposed mult-by-xm_rec_[k] matrices (f x f)
};

std::vector<Fp> flatten(const BivarRing& R, const BivarElement& u);

// Element sum_b g[b] * (x-y)^b from its (x-y)-adic coefficients (at most m of
// them, each reduced mod Q).
BivarElement from_xy_powers(const BivarRing& R, std::span<const DensePoly> g);

// Product in A.
BivarElement bv_mul(const BivarRing& R, const BivarElement& u, const BivarElement& v);

// Class of C(x) in A on the x-power basis; requires deg C < n
// (degree_violation).
BivarElement untangle(const BivarRing& R, const DensePoly& C);

// Dense n x n matrix of `untangle` on the monomial basis (column j is the
// flattening of untangle(x^j)); refused above max_n (too_large).
std::vector<std::vector<Fp>> untangle_matrix(const BivarRing& R, std::size_t max_n = 64);

// w[j] = mu(untangle(x^j)) for j < n: the transpose of `untangle`.
std::vector<Fp> transposed_untangle(const BivarRing& R, const LinearForm& mu);

// Form z -> lambda(delta * z): the transpose of multiplication by delta.
LinearForm transposed_bv_mul(const BivarRing& R, const LinearForm& lambda, const BivarElement& delta);

// Numerator N of the rational series sum_j h_j z^{-j-1} = N/ptilde, i.e.
// floor(ptilde * (sum_j h_j x^{n-1-j}) / x^n); needs exactly n = deg ptilde
// leading sequence values (length_mismatch).
DensePoly projection_numerator(const DensePoly& ptilde, std::span<const Fp> h);

// Inverse of `untangle`, Las Vegas via random projections and Hankel-system
// numerator reconstruction. Every returned value is verified with one
// untangle. After max_retries failed draws a dense solve handles
// n <= dense_fallback_bound; beyond that, singular_projection.
DensePoly tangle(const BivarRing& R, const BivarElement& delta, std::mt19937_64& rng,
                 unsigned max_retries = 8, std::size_t dense_fallback_bound = 64,
                 TangleStats* stats = nullptr);

} // namespace recseq

#endif

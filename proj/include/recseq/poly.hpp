#ifndef RECSEQ_POLY_HPP
#define RECSEQ_POLY_HPP

#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "recseq/bigindex.hpp"
#include "recseq/field.hpp"

namespace recseq {

// Dense univariate polynomial over one FieldCtx. The zero polynomial is the
// empty coefficient list; every constructor and operation normalizes, so
// coeffs().back() is never zero.
class DensePoly {
public:
    DensePoly() = default; // detached placeholder; only assignment is valid
    explicit DensePoly(const FieldCtx& ctx) : ctx_(&ctx) {}
    DensePoly(const FieldCtx& ctx, std::vector<Fp> coeffs) : ctx_(&ctx), c_(std::move(coeffs)) {
        normalize();
    }

    static DensePoly monomial(const FieldCtx& ctx, std::size_t k, Fp lead);
    static DensePoly from_i64(const FieldCtx& ctx, std::initializer_list<std::int64_t> coeffs);

    const FieldCtx& ctx() const { return *ctx_; }
    const std::vector<Fp>& coeffs() const { return c_; }
    long degree() const { return static_cast<long>(c_.size()) - 1; } // -1 for zero
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0].v == 1; }
    bool is_monic() const { return !c_.empty() && c_.back().v == 1; }
    Fp coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Fp{0}; }
    Fp leading() const { return c_.empty() ? Fp{0} : c_.back(); }

    // Equal iff same modulus and same coefficients.
    bool operator==(const DensePoly& o) const;

private:
    void normalize() {
        while (!c_.empty() && c_.back().v == 0) c_.pop_back();
    }

    const FieldCtx* ctx_ = nullptr;
    std::vector<Fp> c_;
};

DensePoly p_add(const DensePoly& a, const DensePoly& b);
DensePoly p_sub(const DensePoly& a, const DensePoly& b);
DensePoly p_neg(const DensePoly& a);
DensePoly p_scale(const DensePoly& a, Fp s);

// Schoolbook below a fixed threshold, Karatsuba above it, and a radix-2 NTT
// when the context's two-adicity covers the transform size.
DensePoly p_mul(const DensePoly& a, const DensePoly& b);

// Division with remainder; b must be nonzero (division_by_zero).
std::pair<DensePoly, DensePoly> p_divrem(const DensePoly& a, const DensePoly& b);
DensePoly p_rem(const DensePoly& a, const DensePoly& b);

// Monic gcd by the Euclidean remainder sequence; both inputs zero is both_zero.
DensePoly p_gcd(const DensePoly& a, const DensePoly& b);

// Inverse of a modulo M (extended Euclid); gcd(a, M) != 1 is not_coprime.
DensePoly p_invmod(const DensePoly& a, const DensePoly& M);

DensePoly p_derivative(const DensePoly& a);
DensePoly p_monic(const DensePoly& a);
Fp p_eval(const DensePoly& a, Fp x);

// x^D mod M for monic M: one squaring per exponent bit (most significant
// first) plus a linear-cost multiply-by-x on set bits. D < deg M returns the
// monomial x^D without any multiplication.
DensePoly p_powmod_x(const BigIndex& D, const DensePoly& M);

// a^E mod M for monic M, square-and-multiply over E's bits.
DensePoly p_powmod(const DensePoly& a, const BigIndex& E, const DensePoly& M);

enum class ShiftMethod {
    automatic,      // convolution when p > deg a, divide-and-conquer otherwise
    divide_conquer, // no characteristic restriction
    convolution,    // requires p > deg a (characteristic_too_small)
};

// Taylor shift a(x) -> a(x + c).
DensePoly p_taylor_shift(const DensePoly& a, Fp c, ShiftMethod method = ShiftMethod::automatic);

// Q^m by binary powering; m >= 1.
DensePoly p_pow_expand(const DensePoly& Q, unsigned m);

// Transpose of the multiply-by-a map: out[j] = sum_k a_k * v[j+k] for
// j < out_len. v is read with zero extension, surplus entries correspond to
// zero rows of the forward matrix and are ignored.
std::vector<Fp> p_mul_transposed(const FieldCtx& ctx, const DensePoly& a, std::span<const Fp> v,
                                 std::size_t out_len);

} // namespace recseq

#endif

#ifndef RECSEQ_SEQTERM_HPP
#define RECSEQ_SEQTERM_HPP

#include <random>
#include <vector>

#include "recseq/bivar.hpp"
#include "recseq/factor.hpp"
#include "recseq/poly.hpp"

namespace recseq {

// a_{i+d} = sum_{j<d} coeffs[j] * a_{i+j}, with init = (a_0, ..., a_{d-1}).
struct Recurrence {
    Recurrence(const FieldCtx& ctx, std::vector<Fp> coeffs, std::vector<Fp> init);

    const FieldCtx& ctx() const { return *ctx_; }
    std::size_t order() const { return coeffs.size(); }

    std::vector<Fp> coeffs;
    std::vector<Fp> init;
    DensePoly charpoly; // monic: x^d - sum coeffs[j] x^j

private:
    const FieldCtx* ctx_;
};

enum class Algo { naive, fiduccia, factored };
const char* algo_name(Algo a);

// Direct iteration; refuses indices above the cap (index_too_large).
Fp nth_term_naive(const Recurrence& rec, const BigIndex& D, u64 cap = 100'000'000);

// a_D = <x^D mod charpoly, init>.
Fp nth_term_fiduccia(const Recurrence& rec, const BigIndex& D);

// x^D mod (x-1)^m: sum_{j<m} binom(D,j) (x-1)^j via the multiplicative
// binomial recurrence and one Taylor shift. Requires p > m-1
// (characteristic_too_small) and D >= m-1 (degree_violation).
DensePoly binomial_remainder(const FieldCtx& ctx, const BigIndex& D, unsigned m);

// Class of x^D in the ring of R: x-coefficient j is binom(D,j) * y^{D-j}
// mod Q, built from one y-power ladder. Requires Q(0) != 0 and D >= m-1.
BivarElement delta_for_factor(const BivarRing& R, const BigIndex& D);

// Factored pipeline: squarefree-factor the characteristic polynomial, get
// x^D mod q_i^{m_i} per part through the bivariate ring, recombine by CRT.
// Preconditions c_0 != 0, p > d, D >= 2d (fast_path_unavailable).
Fp nth_term_factored(const Recurrence& rec, const BigIndex& D, std::mt19937_64& rng);

struct AutoResult {
    Fp value;
    Algo algo;
};

// Dispatch: D < 2d naive; c_0 = 0 or p <= d fiduccia; otherwise factored.
AutoResult nth_term_auto(const Recurrence& rec, const BigIndex& D, std::mt19937_64& rng);

} // namespace recseq

#endif

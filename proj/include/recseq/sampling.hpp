#ifndef RECSEQ_SAMPLING_HPP
#define RECSEQ_SAMPLING_HPP

#include <random>

#include "recseq/poly.hpp"

namespace recseq {

inline std::vector<Fp> sample_values(const FieldCtx& ctx, std::size_t count, std::mt19937_64& rng) {
    std::vector<Fp> v(count);
    for (auto& x : v) x = ctx.sample(rng);
    return v;
}

inline DensePoly sample_poly(const FieldCtx& ctx, long degree, std::mt19937_64& rng) {
    if (degree < 0) return DensePoly(ctx);
    auto c = sample_values(ctx, static_cast<std::size_t>(degree) + 1, rng);
    while (c.back().v == 0) c.back() = ctx.sample(rng);
    return DensePoly(ctx, std::move(c));
}

inline DensePoly sample_monic(const FieldCtx& ctx, long degree, std::mt19937_64& rng) {
    auto c = sample_values(ctx, static_cast<std::size_t>(degree) + 1, rng);
    c.back() = ctx.one();
    return DensePoly(ctx, std::move(c));
}

// Monic degree-f polynomial that is squarefree and has a nonzero constant
// term, by rejection.
DensePoly sample_factor_base(const FieldCtx& ctx, long degree, std::mt19937_64& rng);

} // namespace recseq

#endif

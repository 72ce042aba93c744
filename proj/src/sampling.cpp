#include "recseq/sampling.hpp"

namespace recseq {

DensePoly sample_factor_base(const FieldCtx& ctx, long degree, std::mt19937_64& rng) {
    if (degree < 1) raise(errc::out_of_range, "sample_factor_base: degree must be at least 1");
    for (;;) {
        DensePoly q = sample_monic(ctx, degree, rng);
        if (q.coeff(0).v == 0) continue;
        DensePoly dq = p_derivative(q);
        if (dq.is_zero()) continue;
        if (p_gcd(q, dq).degree() == 0) return q;
    }
}

} // namespace recseq

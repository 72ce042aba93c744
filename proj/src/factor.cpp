#include "recseq/factor.hpp"

namespace recseq {

SquarefreeFactorization yun_squarefree(const DensePoly& P) {
    const FieldCtx& F = P.ctx();
    if (P.degree() < 1) raise(errc::degree_violation, "yun_squarefree: input must be nonconstant");
    if (!P.is_monic()) raise(errc::not_monic, "yun_squarefree: input must be monic");
    if (F.modulus() <= static_cast<u64>(P.degree()))
        raise(errc::characteristic_too_small, "yun_squarefree: requires p > deg P");

    SquarefreeFactorization out;
    out.d = P.degree();

    DensePoly Pd = p_derivative(P);
    DensePoly G = p_gcd(P, Pd);
    if (G.degree() == 0) {
        out.parts.push_back({P, 1});
        out.d_bar = P.degree();
        return out;
    }
    DensePoly V = p_divrem(P, G).first;  // product of the distinct roots' factors
    DensePoly W = p_divrem(Pd, G).first;
    unsigned i = 1;
    while (V.degree() > 0) {
        DensePoly Z = p_sub(W, p_derivative(V));
        DensePoly H = p_gcd(V, Z); // multiplicity-i part (gcd(V, 0) = V on the last round)
        if (H.degree() > 0) out.parts.push_back({H, i});
        V = p_divrem(V, H).first;
        W = p_divrem(Z, H).first;
        ++i;
    }
    for (const auto& part : out.parts) out.d_bar += part.q.degree();
    return out;
}

DensePoly crt_combine(const std::vector<DensePoly>& residues, const std::vector<DensePoly>& moduli) {
    if (residues.size() != moduli.size() || moduli.empty())
        raise(errc::length_mismatch, "crt_combine: need equally many residues and moduli");
    const FieldCtx& F = moduli[0].ctx();
    for (std::size_t i = 0; i < moduli.size(); ++i) {
        if (moduli[i].degree() < 1) raise(errc::degree_violation, "crt_combine: constant modulus");
        if (!moduli[i].is_monic()) raise(errc::not_monic, "crt_combine: moduli must be monic");
        if (residues[i].degree() >= moduli[i].degree())
            raise(errc::degree_violation, "crt_combine: residue degree not below its modulus");
    }
    if (moduli.size() == 1) return residues[0];

    DensePoly M(F, {F.one()});
    for (const auto& mi : moduli) M = p_mul(M, mi);
    DensePoly R(F);
    for (std::size_t i = 0; i < moduli.size(); ++i) {
        DensePoly Mi = p_divrem(M, moduli[i]).first; // exact
        DensePoly ui;
        try {
            ui = p_invmod(Mi, moduli[i]);
        } catch (const Error& e) {
            if (e.code() == errc::not_coprime)
                raise(errc::not_coprime, "crt_combine: moduli are not pairwise coprime");
            throw;
        }
        // term = ((residue_i * u_i) mod m_i) * M_i keeps every summand below deg M
        DensePoly t = p_rem(p_mul(residues[i], ui), moduli[i]);
        R = p_add(R, p_mul(t, Mi));
    }
    return R;
}

} // namespace recseq

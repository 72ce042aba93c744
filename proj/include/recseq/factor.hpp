#ifndef RECSEQ_FACTOR_HPP
#define RECSEQ_FACTOR_HPP

#include <vector>

#include "recseq/poly.hpp"

namespace recseq {

struct SquarefreePart {
    DensePoly q;      // monic, squarefree, deg >= 1
    unsigned m = 1;   // multiplicity
};

// Parts are pairwise coprime with strictly increasing multiplicities and
// multiply back to the input: P = prod q_i^{m_i}.
struct SquarefreeFactorization {
    std::vector<SquarefreePart> parts;
    long d = 0;     // deg P = sum m_i deg q_i
    long d_bar = 0; // sum deg q_i
};

// Yun's algorithm. Requires P monic (not_monic), deg P >= 1
// (degree_violation) and p > deg P (characteristic_too_small).
SquarefreeFactorization yun_squarefree(const DensePoly& P);

// Unique R with deg R < sum deg moduli and R = residues[i] mod moduli[i].
// Moduli must be monic (not_monic), nonconstant (degree_violation), pairwise
// coprime (not_coprime); residues must have smaller degree than their modulus
// (degree_violation).
DensePoly crt_combine(const std::vector<DensePoly>& residues, const std::vector<DensePoly>& moduli);

} // namespace recseq

#endif

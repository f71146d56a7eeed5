#pragma once

#include "gforge/homalg.hpp"

namespace gforge {

struct NakayamaResult {
    GradedAutomorphism mu;             // automorphism of C
    GradedAutomorphism restriction_A;  // (det sigma)^{-1} . mu_A on A
    ScalarMatrix y_block;              // hdet sigma . (degree-1 matrix of mu_B)
    PolyVec tails;                     // a_j in A, one per generator of B
    long tail_solution_dim = 0;        // dimension of the tail solution space
    std::string provenance = "theorem";
};

// mu_A on A_1 as the dual of mu_E restricted to E^1, extended to generators
// and validated as an automorphism. Requires generation in degree 1.
GradedAutomorphism nakayama_of_base(const GradedAlgebra& A, const FrobeniusData& frob);

// The twisted-tensor theorem route. Tails are pinned by requiring that the
// candidate kills every relation of C; the constraint system is solved as an
// affine-linear system in the tail coefficients and the result is validated
// as an automorphism of C.
NakayamaResult nakayama_of_twisted(const TwistData& data, const TwistedTensorAlgebra& C,
                                   const GradedAutomorphism& mu_A,
                                   const GradedAutomorphism& mu_B,
                                   const GradedAutomorphism& det_sig,
                                   const ScalarMatrix& hdet_sig);

// Independent route: mu from the Frobenius structure of E(C) alone.
GradedAutomorphism nakayama_oracle(const GradedAlgebra& C, int H, int D);

}  // namespace gforge

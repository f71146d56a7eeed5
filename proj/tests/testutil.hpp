#pragma once

#include <string>
#include <vector>

#include "gforge/twist.hpp"

namespace gforge::testutil {

// k<gens>/(relations) truncated at bound, over the rationals
GradedAlgebra make_algebra(const std::vector<std::string>& gens,
                           const std::vector<std::string>& relations, int bound);

// A = k<x1,x2>/(x1^2 x2 - x2 x1^2, x1 x2^2 - x2^2 x1), the 3-Koszul algebra
// used by the hardest worked example
GradedAlgebra down_up(int bound, const std::string& g1 = "x1", const std::string& g2 = "x2");

GradedAlgebra poly1(int bound, const std::string& g = "x");           // k[x]
GradedAlgebra poly2(int bound);                                       // k[x,y]
GradedAlgebra quantum_plane(int bound, long qnum, long qden = 1);     // zx = q xz
GradedAlgebra free2(int bound);                                       // k<x,y>

// sigma(x1) = p(x2 x2; x2 -x2), sigma(x2) = p(x1 x1; x1 -x1) on the down-up
// algebra, the map of the paper's hardest worked example
MatrixAlgebraHom sigma_down_up(const GradedAlgebra& A, const Scalar& p);

// sigma(x) = diag(q1 x, q2 x) on k[x]
MatrixAlgebraHom sigma_diag2(const GradedAlgebra& A, const Scalar& q1, const Scalar& q2);

// sigma(x) donned from an arbitrary 2x2 scalar matrix: entries M_ij * x
MatrixAlgebraHom sigma_scalar2(const GradedAlgebra& A, const ScalarMatrix& M);

// Ore twist sigma(x) = q x on a one-generator algebra
MatrixAlgebraHom sigma_ore(const GradedAlgebra& A, const Scalar& q);

}  // namespace gforge::testutil

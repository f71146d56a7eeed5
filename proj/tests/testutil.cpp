#include "testutil.hpp"

namespace gforge::testutil {

GradedAlgebra make_algebra(const std::vector<std::string>& gens,
                           const std::vector<std::string>& relations, int bound) {
    GeneratorAlphabet alpha(gens, std::vector<int>(gens.size(), 1));
    std::vector<NcPoly> rels;
    for (const auto& r : relations) rels.push_back(parse_expr(r, alpha, Field{}));
    return GradedAlgebra(truncated_groebner(alpha, rels, bound), Field{});
}

GradedAlgebra down_up(int bound, const std::string& g1, const std::string& g2) {
    return make_algebra({g1, g2},
                        {g1 + "*" + g1 + "*" + g2 + " - " + g2 + "*" + g1 + "*" + g1,
                         g1 + "*" + g2 + "*" + g2 + " - " + g2 + "*" + g2 + "*" + g1},
                        bound);
}

GradedAlgebra poly1(int bound, const std::string& g) { return make_algebra({g}, {}, bound); }

GradedAlgebra poly2(int bound) { return make_algebra({"x", "y"}, {"y*x - x*y"}, bound); }

GradedAlgebra quantum_plane(int bound, long qnum, long qden) {
    std::string q = std::to_string(qnum) + "/" + std::to_string(qden);
    return make_algebra({"x", "z"}, {"z*x - " + q + "*x*z"}, bound);
}

GradedAlgebra free2(int bound) { return make_algebra({"x", "y"}, {}, bound); }

MatrixAlgebraHom sigma_down_up(const GradedAlgebra& A, const Scalar& p) {
    NcPoly x1 = A.gen_poly(0), x2 = A.gen_poly(1);
    NcPoly px1 = x1.scaled(p), px2 = x2.scaled(p);
    std::vector<MatrixAlgebraHom::Matrix> images{{{px2, px2}, {px2, -px2}},
                                                 {{px1, px1}, {px1, -px1}}};
    return MatrixAlgebraHom(&A, 2, std::move(images));
}

MatrixAlgebraHom sigma_diag2(const GradedAlgebra& A, const Scalar& q1, const Scalar& q2) {
    NcPoly x = A.gen_poly(0);
    std::vector<MatrixAlgebraHom::Matrix> images{
        {{x.scaled(q1), NcPoly(1)}, {NcPoly(1), x.scaled(q2)}}};
    return MatrixAlgebraHom(&A, 2, std::move(images));
}

MatrixAlgebraHom sigma_scalar2(const GradedAlgebra& A, const ScalarMatrix& M) {
    NcPoly x = A.gen_poly(0);
    std::vector<MatrixAlgebraHom::Matrix> images{
        {{x.scaled(M.at(0, 0)), x.scaled(M.at(0, 1))},
         {x.scaled(M.at(1, 0)), x.scaled(M.at(1, 1))}}};
    return MatrixAlgebraHom(&A, 2, std::move(images));
}

MatrixAlgebraHom sigma_ore(const GradedAlgebra& A, const Scalar& q) {
    std::vector<MatrixAlgebraHom::Matrix> images{{{A.gen_poly(0).scaled(q)}}};
    return MatrixAlgebraHom(&A, 1, std::move(images));
}

}  // namespace gforge::testutil

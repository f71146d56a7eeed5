#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "gforge/galgebra.hpp"

namespace gforge {

// Graded algebra homomorphism sigma = (sigma_ij) : A -> M_m(A), given by the
// m x m matrices of generator images. Entries are kept in normal form.
class MatrixAlgebraHom {
public:
    using Matrix = std::vector<PolyVec>;  // [row][col]

    MatrixAlgebraHom(const GradedAlgebra* A, size_t m, std::vector<Matrix> images);

    // a -> diag(a, ..., a)
    static MatrixAlgebraHom diagonal(const GradedAlgebra* A, size_t m);

    const GradedAlgebra& algebra() const { return *A_; }
    size_t size() const { return m_; }
    const Matrix& gen_image(size_t g) const { return images_[g]; }

    Matrix apply_word(const Word& w) const;
    Matrix apply(const NcPoly& p) const;
    NcPoly entry(size_t i, size_t j, const NcPoly& p) const;

private:
    const GradedAlgebra* A_;
    size_t m_;
    std::vector<Matrix> images_;
};

struct SigmaCheck {
    bool ok = true;
    size_t relation = 0;  // first violating relation when !ok
    size_t row = 0, col = 0;
    std::string message;
};

// Certificate that sigma extends to an algebra map: the matrix evaluation of
// every relation of A vanishes entrywise.
SigmaCheck validate_sigma(const MatrixAlgebraHom& sigma);

// Two-sided inverse phi with sum_k phi_jk . sigma_ik = delta_ij id and
// sum_k sigma_kj . phi_ki = delta_ij id, solved on generators degree by
// degree and then verified on monomial bases up to the bound.
std::optional<MatrixAlgebraHom> invert_sigma(const MatrixAlgebraHom& sigma);

// sigma-derivation delta = (delta_i) : A -> A^{m}; the entry for generator x
// and position j has degree deg(x) + y_degrees[j]. Extension to words follows
// delta(ab)_j = sum_t sigma_jt(a) delta_t(b) + delta_j(a) b.
class SigmaDerivation {
public:
    SigmaDerivation(const MatrixAlgebraHom* sigma, std::vector<int> y_degrees,
                    std::vector<PolyVec> images);

    const MatrixAlgebraHom& sigma() const { return *sigma_; }
    const std::vector<int>& y_degrees() const { return y_degrees_; }
    const PolyVec& gen_image(size_t g) const { return images_[g]; }

    PolyVec apply_word(const Word& w) const;
    PolyVec apply(const NcPoly& p) const;

    // extended delta must annihilate every relation of A
    void validate() const;

private:
    const MatrixAlgebraHom* sigma_;
    std::vector<int> y_degrees_;
    std::vector<PolyVec> images_;
};

struct TwistData {
    const GradedAlgebra* A = nullptr;
    const GradedAlgebra* B = nullptr;
    MatrixAlgebraHom sigma;
    std::optional<SigmaDerivation> delta;
};

// The presented algebra C = A tensor^tau B on generators X u Y with the
// cross relations y_j x_i - sum_t sigma_jt(x_i) y_t - delta_j(x_i), certified
// by the Hilbert-series factorization.
struct TwistedTensorAlgebra {
    std::shared_ptr<GradedAlgebra> C;
    const GradedAlgebra* A = nullptr;
    const GradedAlgebra* B = nullptr;
    size_t n = 0, m = 0;  // generator counts of A and B

    NcPoly embed_A(const NcPoly& p) const;
    NcPoly embed_B(const NcPoly& p) const;
    NcPoly project_A(const NcPoly& c) const;  // x_i -> x_i, y_j -> 0
    NcPoly project_B(const NcPoly& c) const;  // x_i -> 0, y_j -> y_j
};

TwistedTensorAlgebra build_twisted_tensor(const TwistData& data, int bound);

// tau^{-1} data: relations x_u y_j = sum_s y_s phi_sj(x_u) + delta'_j(x_u)
// with delta'_j = -sum_t delta_t . phi_tj. The swapped standard-form data is
// available exactly when delta = 0 and A is generated in degree 1.
struct InvertedTwist {
    TwistedTensorAlgebra algebra;  // presents B tensor^{tau^{-1}} A
    MatrixAlgebraHom phi;          // sigma^{-1}
    std::vector<PolyVec> delta_prime;  // [gen of A][i] = delta'_i(x_gen)
    std::optional<TwistData> swapped;  // standard-form data over B when expressible
};

InvertedTwist invert_twist(const TwistData& data, int bound);

// Right phi-twisted action on a free module with equal shifts:
// (z_1,...,z_s) * a = (sum_q z_q phi_q1(a), ..., sum_q z_q phi_qs(a)).
// Coefficient products are taken in the module's own algebra, so phi entries
// are transported through `embed` when the module lives over a larger algebra.
struct TwistedRightAction {
    FreeModule mod;
    const MatrixAlgebraHom* phi;
    std::function<NcPoly(const NcPoly&)> embed;  // identity when empty

    PolyVec act(const PolyVec& elem, const NcPoly& a) const;
};

}  // namespace gforge

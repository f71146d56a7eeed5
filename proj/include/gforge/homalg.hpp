#pragma once

#include <array>

#include "gforge/resolution.hpp"
#include "gforge/twist.hpp"

namespace gforge {

// ---------------------------------------------------------------------------
// Twisted bimodule resolution F = C (x) Q and its tower phi_0, phi_1, ...
// ---------------------------------------------------------------------------

struct PhiTower {
    const TwistedTensorAlgebra* Cbar = nullptr;  // product for tau = (sigma, 0)
    const FreeResolution* Qres = nullptr;        // minimal resolution over B
    std::vector<MatrixAlgebraHom> phis;          // phi_0 = id, phi_1 = sigma, ...
    std::vector<ModuleMap> dF;                   // dF[i] : C(x)W_{i+1} -> C(x)W_i
    std::vector<bool> unique_solution;           // whether each phi_i was pinned
};

// Requires Qres pure; solves the right-module structure maps degreewise with
// unknowns constrained to the A-slice.
PhiTower build_phi_tower(const TwistData& data, const TwistedTensorAlgebra& Cbar,
                         const FreeResolution& Qres);

// phi at the top of a terminated tower with a rank-one top term.
GradedAutomorphism det_sigma(const PhiTower& tower);

// Evaluate a composition-of-entries word like sigma_22 . sigma_11 on a
// polynomial: entries(p) = (i1,j1),(i2,j2),... applied right to left.
NcPoly compose_entries(const MatrixAlgebraHom& sigma,
                       const std::vector<std::pair<size_t, size_t>>& entries,
                       const NcPoly& p);

// ---------------------------------------------------------------------------
// Homological determinant
// ---------------------------------------------------------------------------

// Row-wise liftings theta_i : phi-twisted (P (x) U) -> P of the coordinate
// projections; the matrix is read off the top homological component.
ScalarMatrix hdet(const GradedAlgebra& A, const MatrixAlgebraHom& sigma,
                  const MatrixAlgebraHom& phi, const FreeResolution& Pres);

// ---------------------------------------------------------------------------
// Ext algebra with the Yoneda product
// ---------------------------------------------------------------------------

class ExtAlgebra {
public:
    explicit ExtAlgebra(const FreeResolution* res);

    const FreeResolution& resolution() const { return *res_; }
    int top_available() const { return res_->length; }
    bool complete() const { return res_->terminated; }

    size_t dim(int i) const;
    int gen_degree(int i, size_t a) const { return res_->terms[i].shifts[a]; }
    std::map<int, long> bigraded_dims(int i) const;  // internal degree -> dim

    // Yoneda product of basis elements: coefficients over the basis of E^{i+j}
    ScalarVec product(int i, size_t a, int j, size_t b) const;
    // recompute with all free lifting variables pinned to fv instead of zero
    ScalarVec product_perturbed(int i, size_t a, int j, size_t b, const Scalar& fv) const;
    // bilinear extension
    ScalarVec product_vec(int i, const ScalarVec& u, int j, const ScalarVec& v) const;

private:
    ScalarVec product_impl(int i, size_t a, int j, size_t b, const Scalar& fv,
                           bool use_cache) const;
    const FreeResolution* res_;
    mutable std::map<std::pair<int, size_t>, CocycleLift> lifts_;
};

// ---------------------------------------------------------------------------
// Frobenius structure and the Nakayama automorphism of E
// ---------------------------------------------------------------------------

struct FrobeniusData {
    const ExtAlgebra* ext = nullptr;
    int h = 0;  // Frobenius type (-h, l)
    int l = 0;
    std::vector<ScalarMatrix> nakayama;  // per position i: mu(b) = sum_a N[a][b] a

    Scalar pairing(int i, size_t a, size_t b) const;  // <a, b>, b in E^{h-i}
};

// Requires a terminated resolution with one-dimensional top; throws on a
// degenerate pairing.
FrobeniusData frobenius_data(const ExtAlgebra& ext);

// ---------------------------------------------------------------------------
// AS-regularity within bounds
// ---------------------------------------------------------------------------

struct ASRegReport {
    bool determined = false;
    bool as_regular = false;
    int h = 0, l = 0;
    std::string caveat;
};

ASRegReport as_regular_report(const GradedAlgebra& A, const FreeResolution& res);

// ---------------------------------------------------------------------------
// Assembled resolution of the trivial module of Cbar: F_phi (x)_A P
// ---------------------------------------------------------------------------

struct TensorResolution {
    FreeResolution res;  // over C
    // generator bookkeeping per position: (p, j in W_p, q, alpha in V_q)
    std::vector<std::vector<std::array<size_t, 4>>> blocks;

    // index of a block generator inside position n
    size_t index_of(int n, size_t p, size_t j, size_t q, size_t alpha) const;
};

TensorResolution tensor_resolution(const PhiTower& tower, const FreeResolution& Pres);

// Chain lift of an algebra projection against a target resolution over the
// smaller algebra; coefmap transports coefficients (pi_A or pi_B).
// comps[p][gamma] is the image of generator gamma of resC.terms[p].
std::vector<std::vector<PolyVec>> lift_projection(
    const FreeResolution& resC, const FreeResolution& resTgt,
    const std::function<NcPoly(const NcPoly&)>& coefmap, int pmax);

// E(pi)(gen a of position i): coefficients over the E^i basis of resC.
ScalarVec e_image(const FreeResolution& resC,
                  const std::vector<std::vector<PolyVec>>& proj_lift, int i, size_t a,
                  int gen_degree);

// ---------------------------------------------------------------------------
// tau_E verification report
// ---------------------------------------------------------------------------

struct TauEReport {
    bool projections_are_tensor_basis = true;  // E(pi_A) f = 1 (x) f etc.
    bool dims_factorize = true;                // against an independent E(C)
    bool sign_law = true;                      // (g(x)1)(1(x)f) = (-1)^{ij} g(x)f
    bool boundary_detsigma = true;             // E^1(A) against top of E(B)
    bool boundary_hdet = true;                 // top of E(A) against E^1(B)
    std::string first_violation;
    bool ok() const {
        return projections_are_tensor_basis && dims_factorize && sign_law &&
               boundary_detsigma && boundary_hdet;
    }
};

TauEReport tau_e_restrictions(const PhiTower& tower, const FreeResolution& Pres,
                              const TensorResolution& tres,
                              const GradedAutomorphism& det_sig,
                              const ScalarMatrix& hdet_sig,
                              const FreeResolution* independent_resC);

}  // namespace gforge

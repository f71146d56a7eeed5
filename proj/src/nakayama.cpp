#include "gforge/nakayama.hpp"

namespace gforge {

GradedAutomorphism nakayama_of_base(const GradedAlgebra& A, const FrobeniusData& frob) {
    for (int d : A.alphabet().degrees)
        if (d != 1) throw Error("nakayama_of_base requires generation in degree 1");
    size_t n = A.num_generators();
    const ScalarMatrix& N = frob.nakayama.at(1);
    if (N.rows() != n) throw Error("nakayama_of_base: E^1 size mismatch");

    // step-one resolution generators sit in alphabet order, so the dual of
    // mu_E on E^1 is the transpose matrix acting on the generators
    GradedAutomorphism mu{&A, {}};
    for (size_t i = 0; i < n; ++i) {
        NcPoly img(1);
        for (size_t j = 0; j < n; ++j) {
            if (N.at(i, j).is_zero()) continue;
            img += A.gen_poly(j).scaled(N.at(i, j));
        }
        mu.images.push_back(std::move(img));
    }
    validate_automorphism(mu);
    return mu;
}

NakayamaResult nakayama_of_twisted(const TwistData& data, const TwistedTensorAlgebra& C,
                                   const GradedAutomorphism& mu_A,
                                   const GradedAutomorphism& mu_B,
                                   const GradedAutomorphism& det_sig,
                                   const ScalarMatrix& hdet_sig) {
    const GradedAlgebra& A = *data.A;
    const GradedAlgebra& B = *data.B;
    const GradedAlgebra& Calg = *C.C;
    Field f = A.field();
    size_t n = A.num_generators(), m = B.num_generators();

    NakayamaResult out;
    out.restriction_A = det_sig.inverse().compose(mu_A);

    // y block: hdet . (degree-1 matrix of mu_B); requires B generated in degree 1
    for (int d : B.alphabet().degrees)
        if (d != 1) throw Error("nakayama_of_twisted requires B generated in degree 1");
    ScalarMatrix MB(m, m, f);
    for (size_t i = 0; i < m; ++i) {
        ScalarVec row = B.coords(mu_B.images[i]);
        for (size_t j = 0; j < m; ++j) MB.at(i, j) = row[j];
    }
    out.y_block = hdet_sig * MB;

    // candidate images with unknown tails a_j in A_{deg y_j}
    auto images_for = [&](const ScalarVec& tail_coords) {
        PolyVec images;
        for (size_t i = 0; i < n; ++i)
            images.push_back(C.embed_A(out.restriction_A.images[i]));
        size_t pos = 0;
        for (size_t j = 0; j < m; ++j) {
            int dy = B.alphabet().degrees[j];
            NcPoly img(dy);
            for (size_t t = 0; t < m; ++t)
                if (!out.y_block.at(j, t).is_zero())
                    img += C.embed_B(B.gen_poly(t)).scaled(out.y_block.at(j, t));
            NcPoly tail(dy);
            for (const Word& w : A.basis(dy)) tail.add_term(w, tail_coords[pos++]);
            img += C.embed_A(tail);
            images.push_back(std::move(img));
        }
        return images;
    };

    size_t ntails = 0;
    for (size_t j = 0; j < m; ++j) ntails += size_t(A.dim(B.alphabet().degrees[j]));

    // residuals: normal forms of the candidate applied to every relation of C
    auto residual = [&](const ScalarVec& tail_coords) {
        PolyVec images = images_for(tail_coords);
        ScalarVec out_vec;
        for (const NcPoly& g : Calg.gb().relations) {
            NcPoly r = Calg.nf(apply_generator_map(g, images, Calg.alphabet()));
            ScalarVec coords(size_t(Calg.dim(g.degree())), Scalar::zero(f));
            if (!r.is_zero()) coords = Calg.coords(r);
            out_vec.insert(out_vec.end(), coords.begin(), coords.end());
        }
        return out_vec;
    };

    ScalarVec zero_tails(ntails, Scalar::zero(f));
    ScalarVec T0 = residual(zero_tails);
    ScalarMatrix L(T0.size(), ntails, f);
    for (size_t k = 0; k < ntails; ++k) {
        ScalarVec e = zero_tails;
        e[k] = Scalar::one(f);
        ScalarVec Tk = residual(e);
        for (size_t r = 0; r < T0.size(); ++r) L.at(r, k) = Tk[r] - T0[r];
    }
    RrefSolver solver(L);
    ScalarVec rhs(T0.size(), Scalar::zero(f));
    for (size_t r = 0; r < T0.size(); ++r) rhs[r] = -T0[r];
    auto sol = solver.solve(rhs);
    if (!sol)
        throw Error(
            "nakayama: tail system inconsistent; no automorphism of the stated shape "
            "(hypothesis failure)");
    out.tail_solution_dim = long(solver.kernel().size());

    out.mu = GradedAutomorphism{&Calg, images_for(*sol)};
    // validation doubles as the affineness check: a quadratic contribution
    // would leave a nonzero residual here
    validate_automorphism(out.mu);

    size_t pos = 0;
    for (size_t j = 0; j < m; ++j) {
        int dy = B.alphabet().degrees[j];
        NcPoly tail(dy);
        for (const Word& w : A.basis(dy)) tail.add_term(w, (*sol)[pos++]);
        out.tails.push_back(std::move(tail));
    }
    return out;
}

GradedAutomorphism nakayama_oracle(const GradedAlgebra& C, int H, int D) {
    auto res = minimal_resolution(C, H, D);
    ExtAlgebra ext(&res);
    auto frob = frobenius_data(ext);
    return nakayama_of_base(C, frob);
}

}  // namespace gforge

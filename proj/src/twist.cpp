#include "gforge/twist.hpp"

#include <map>

namespace gforge {

MatrixAlgebraHom::MatrixAlgebraHom(const GradedAlgebra* A, size_t m,
                                   std::vector<Matrix> images)
    : A_(A), m_(m), images_(std::move(images)) {
    if (images_.size() != A_->num_generators())
        throw Error("matrix hom: one image matrix per generator required");
    for (size_t g = 0; g < images_.size(); ++g) {
        if (images_[g].size() != m_) throw Error("matrix hom: image row count mismatch");
        int want = A_->alphabet().degrees[g];
        for (auto& row : images_[g]) {
            if (row.size() != m_) throw Error("matrix hom: image column count mismatch");
            for (auto& e : row) {
                if (e.is_zero()) {
                    e = NcPoly(want);
                    continue;
                }
                e = A_->nf(e);
                if (!e.is_zero() && e.degree() != want)
                    throw Error("matrix hom: entry degree " + std::to_string(e.degree()) +
                                " for generator of degree " + std::to_string(want));
            }
        }
    }
}

MatrixAlgebraHom MatrixAlgebraHom::diagonal(const GradedAlgebra* A, size_t m) {
    std::vector<Matrix> images;
    for (size_t g = 0; g < A->num_generators(); ++g) {
        Matrix mat(m, PolyVec(m, NcPoly(A->alphabet().degrees[g])));
        for (size_t i = 0; i < m; ++i) mat[i][i] = A->gen_poly(g);
        images.push_back(std::move(mat));
    }
    return MatrixAlgebraHom(A, m, std::move(images));
}

MatrixAlgebraHom::Matrix MatrixAlgebraHom::apply_word(const Word& w) const {
    Matrix acc(m_, PolyVec(m_, NcPoly(0)));
    for (size_t i = 0; i < m_; ++i) acc[i][i] = A_->one();
    for (Gen g : w) {
        const Matrix& next = images_[g];
        int deg = acc[0][0].degree() + A_->alphabet().degrees[g];
        Matrix out(m_, PolyVec(m_, NcPoly(deg)));
        for (size_t i = 0; i < m_; ++i)
            for (size_t j = 0; j < m_; ++j) {
                NcPoly s(deg);
                for (size_t k = 0; k < m_; ++k) {
                    if (acc[i][k].is_zero() || next[k][j].is_zero()) continue;
                    s += A_->mul(acc[i][k], next[k][j]);
                }
                out[i][j] = std::move(s);
            }
        acc = std::move(out);
    }
    return acc;
}

MatrixAlgebraHom::Matrix MatrixAlgebraHom::apply(const NcPoly& p) const {
    Matrix acc(m_, PolyVec(m_, NcPoly(p.degree())));
    for (const auto& [w, c] : p.terms()) {
        Matrix t = apply_word(w);
        for (size_t i = 0; i < m_; ++i)
            for (size_t j = 0; j < m_; ++j)
                if (!t[i][j].is_zero()) acc[i][j] += t[i][j].scaled(c);
    }
    return acc;
}

NcPoly MatrixAlgebraHom::entry(size_t i, size_t j, const NcPoly& p) const {
    return apply(p)[i][j];
}

SigmaCheck validate_sigma(const MatrixAlgebraHom& sigma) {
    const GradedAlgebra& A = sigma.algebra();
    for (size_t r = 0; r < A.gb().relations.size(); ++r) {
        auto mat = sigma.apply(A.gb().relations[r]);
        for (size_t i = 0; i < sigma.size(); ++i)
            for (size_t j = 0; j < sigma.size(); ++j)
                if (!mat[i][j].is_zero())
                    return SigmaCheck{false, r, i, j,
                                      "sigma fails on relation #" + std::to_string(r) +
                                          " at entry (" + std::to_string(i) + "," +
                                          std::to_string(j) + "): " +
                                          pretty_print(mat[i][j], A.alphabet())};
    }
    return SigmaCheck{};
}

namespace {

// the two composition identities of an inverse pair, checked on one word
bool identities_hold_on_word(const MatrixAlgebraHom& sigma, const MatrixAlgebraHom& phi,
                             const Word& w, int deg) {
    const GradedAlgebra& A = sigma.algebra();
    size_t m = sigma.size();
    NcPoly nfw = NcPoly::term(w, Scalar::one(A.field()), deg);
    auto S = sigma.apply_word(w);
    auto P = phi.apply_word(w);
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) {
            NcPoly one_sum(deg), two_sum(deg);
            for (size_t k = 0; k < m; ++k) {
                if (!S[i][k].is_zero()) one_sum += phi.apply(S[i][k])[j][k];
                if (!P[k][i].is_zero()) two_sum += sigma.apply(P[k][i])[k][j];
            }
            NcPoly want = (i == j) ? nfw : NcPoly(deg);
            if (!(one_sum == want) || !(two_sum == want)) return false;
        }
    return true;
}

}  // namespace

std::optional<MatrixAlgebraHom> invert_sigma(const MatrixAlgebraHom& sigma) {
    const GradedAlgebra& A = sigma.algebra();
    const size_t m = sigma.size();
    const Field f = A.field();
    const size_t ngen = A.num_generators();

    std::map<int, std::vector<size_t>> gens_by_degree;
    for (size_t g = 0; g < ngen; ++g) gens_by_degree[A.alphabet().degrees[g]].push_back(g);

    std::vector<MatrixAlgebraHom::Matrix> phi_images(
        ngen, MatrixAlgebraHom::Matrix(m, PolyVec(m)));

    // phi on a word whose letters are already solved
    auto phi_word = [&](const Word& w) {
        MatrixAlgebraHom::Matrix acc(m, PolyVec(m, NcPoly(0)));
        for (size_t i = 0; i < m; ++i) acc[i][i] = A.one();
        for (Gen g : w) {
            int deg = acc[0][0].degree() + A.alphabet().degrees[g];
            MatrixAlgebraHom::Matrix out(m, PolyVec(m, NcPoly(deg)));
            for (size_t i = 0; i < m; ++i)
                for (size_t j = 0; j < m; ++j)
                    for (size_t k = 0; k < m; ++k) {
                        if (acc[i][k].is_zero() || phi_images[g][k][j].is_zero()) continue;
                        out[i][j] += A.mul(acc[i][k], phi_images[g][k][j]);
                    }
            acc = std::move(out);
        }
        return acc;
    };

    for (const auto& [d, gens] : gens_by_degree) {
        const auto& basis = A.basis(d);
        const size_t bd = basis.size();
        const size_t per_gen = m * m * bd;
        const size_t nunk = gens.size() * per_gen;
        auto unk = [&](size_t gpos, size_t j, size_t k, size_t w) {
            return gpos * per_gen + (j * m + k) * bd + w;
        };
        std::map<Gen, size_t> gen_pos;  // same-degree generator -> position
        for (size_t p = 0; p < gens.size(); ++p) gen_pos[Gen(gens[p])] = p;

        std::vector<MatrixAlgebraHom::Matrix> sigma_on_basis;
        for (const Word& w : basis) sigma_on_basis.push_back(sigma.apply_word(w));

        std::vector<ScalarVec> rows;
        ScalarVec rhs;

        for (size_t gpos = 0; gpos < gens.size(); ++gpos) {
            size_t g = gens[gpos];
            for (size_t i = 0; i < m; ++i)
                for (size_t j = 0; j < m; ++j) {
                    ScalarVec want(bd, Scalar::zero(f));
                    if (i == j) want[A.index_of(d, Word(1, Gen(g)))] = Scalar::one(f);

                    // identity 1: sum_k phi_jk(sigma_ik(x_g)) = delta_ij x_g
                    std::vector<ScalarVec> lin(bd, ScalarVec(nunk, Scalar::zero(f)));
                    NcPoly known(d);
                    for (size_t k = 0; k < m; ++k) {
                        const NcPoly& s = sigma.gen_image(g)[i][k];
                        for (const auto& [w, c] : s.terms()) {
                            if (w.size() == 1 && gen_pos.count(w[0])) {
                                size_t hpos = gen_pos[w[0]];
                                for (size_t widx = 0; widx < bd; ++widx)
                                    lin[widx][unk(hpos, j, k, widx)] += c;
                            } else {
                                auto pw = phi_word(w);
                                if (!pw[j][k].is_zero()) known += pw[j][k].scaled(c);
                            }
                        }
                    }
                    ScalarVec kn(bd, Scalar::zero(f));
                    if (!known.is_zero()) kn = A.coords(known);
                    for (size_t widx = 0; widx < bd; ++widx) {
                        // coordinate widx: sum over columns, with unknown widx slot
                        ScalarVec row(nunk, Scalar::zero(f));
                        for (size_t col = 0; col < nunk; ++col) row[col] = lin[widx][col];
                        rows.push_back(std::move(row));
                        rhs.push_back(want[widx] - kn[widx]);
                    }

                    // identity 2: sum_k sigma_kj(phi_ki(x_g)) = delta_ij x_g
                    std::vector<ScalarVec> lin2(bd, ScalarVec(nunk, Scalar::zero(f)));
                    for (size_t k = 0; k < m; ++k)
                        for (size_t widx = 0; widx < bd; ++widx) {
                            const NcPoly& sw = sigma_on_basis[widx][k][j];
                            for (const auto& [u, c] : sw.terms())
                                lin2[A.index_of(d, u)][unk(gpos, k, i, widx)] += c;
                        }
                    for (size_t widx = 0; widx < bd; ++widx) {
                        rows.push_back(std::move(lin2[widx]));
                        rhs.push_back(want[widx]);
                    }
                }
        }

        ScalarMatrix sys(rows.size(), nunk, f);
        for (size_t r = 0; r < rows.size(); ++r)
            for (size_t c = 0; c < nunk; ++c) sys.at(r, c) = rows[r][c];
        auto sol = RrefSolver(sys).solve(rhs);
        if (!sol) return std::nullopt;

        for (size_t gpos = 0; gpos < gens.size(); ++gpos)
            for (size_t j = 0; j < m; ++j)
                for (size_t k = 0; k < m; ++k) {
                    NcPoly p(d);
                    for (size_t widx = 0; widx < bd; ++widx)
                        p.add_term(basis[widx], (*sol)[unk(gpos, j, k, widx)]);
                    phi_images[gens[gpos]][j][k] = std::move(p);
                }
    }

    MatrixAlgebraHom phi(&A, m, std::move(phi_images));
    if (!validate_sigma(phi).ok) return std::nullopt;
    for (int d = 1; d <= A.bound(); ++d)
        for (const Word& w : A.basis(d))
            if (!identities_hold_on_word(sigma, phi, w, d)) return std::nullopt;
    return phi;
}

SigmaDerivation::SigmaDerivation(const MatrixAlgebraHom* sigma, std::vector<int> y_degrees,
                                 std::vector<PolyVec> images)
    : sigma_(sigma), y_degrees_(std::move(y_degrees)), images_(std::move(images)) {
    const GradedAlgebra& A = sigma_->algebra();
    size_t m = sigma_->size();
    if (y_degrees_.size() != m) throw Error("derivation: y-degree count mismatch");
    if (images_.size() != A.num_generators())
        throw Error("derivation: one image vector per generator required");
    for (size_t g = 0; g < images_.size(); ++g) {
        if (images_[g].size() != m) throw Error("derivation: image length mismatch");
        for (size_t j = 0; j < m; ++j) {
            int want = A.alphabet().degrees[g] + y_degrees_[j];
            auto& e = images_[g][j];
            if (e.is_zero()) {
                e = NcPoly(want);
                continue;
            }
            e = A.nf(e);
            if (!e.is_zero() && e.degree() != want)
                throw Error("derivation: entry degree mismatch");
        }
    }
}

PolyVec SigmaDerivation::apply_word(const Word& w) const {
    const GradedAlgebra& A = sigma_->algebra();
    size_t m = sigma_->size();
    int dw = A.alphabet().word_degree(w);
    PolyVec out;
    for (size_t j = 0; j < m; ++j) out.emplace_back(dw + y_degrees_[j]);
    if (w.empty()) return out;  // delta(1) = 0

    Gen x = w[0];
    Word rest = w.substr(1);
    int drest = dw - A.alphabet().degrees[x];
    // delta(x rest)_j = sum_t sigma_jt(x) delta_t(rest) + delta_j(x) rest
    PolyVec tail = apply_word(rest);
    NcPoly rest_poly = NcPoly::term(rest, Scalar::one(A.field()), drest);
    for (size_t j = 0; j < m; ++j) {
        for (size_t t = 0; t < m; ++t) {
            const NcPoly& s = sigma_->gen_image(x)[j][t];
            if (s.is_zero() || tail[t].is_zero()) continue;
            out[j] += A.mul(s, tail[t]);
        }
        if (!images_[x][j].is_zero()) out[j] += A.mul(images_[x][j], rest_poly);
    }
    return out;
}

PolyVec SigmaDerivation::apply(const NcPoly& p) const {
    size_t m = sigma_->size();
    PolyVec out;
    for (size_t j = 0; j < m; ++j) out.emplace_back(p.degree() + y_degrees_[j]);
    for (const auto& [w, c] : p.terms()) {
        PolyVec dw = apply_word(w);
        for (size_t j = 0; j < m; ++j)
            if (!dw[j].is_zero()) out[j] += dw[j].scaled(c);
    }
    return out;
}

void SigmaDerivation::validate() const {
    const GradedAlgebra& A = sigma_->algebra();
    for (size_t r = 0; r < A.gb().relations.size(); ++r) {
        PolyVec v = apply(A.gb().relations[r]);
        for (size_t j = 0; j < v.size(); ++j)
            if (!v[j].is_zero())
                throw Error("sigma-derivation does not annihilate relation #" +
                            std::to_string(r) + " (component " + std::to_string(j) + ")");
    }
}

NcPoly TwistedTensorAlgebra::embed_A(const NcPoly& p) const {
    NcPoly out(p.degree());
    for (const auto& [w, c] : p.terms()) out.add_term(w, c);  // A-generators come first
    return C->nf(out);
}

NcPoly TwistedTensorAlgebra::embed_B(const NcPoly& p) const {
    NcPoly out(p.degree());
    for (const auto& [w, c] : p.terms()) {
        Word shifted;
        for (Gen g : w) shifted.push_back(Gen(g + n));
        out.add_term(shifted, c);
    }
    return C->nf(out);
}

NcPoly TwistedTensorAlgebra::project_A(const NcPoly& c) const {
    std::vector<NcPoly> images;
    for (size_t i = 0; i < n; ++i) images.push_back(A->gen_poly(i));
    for (size_t j = 0; j < m; ++j) images.emplace_back(B->alphabet().degrees[j]);
    return A->nf(apply_generator_map(c, images, C->alphabet()));
}

NcPoly TwistedTensorAlgebra::project_B(const NcPoly& c) const {
    std::vector<NcPoly> images;
    for (size_t i = 0; i < n; ++i) images.emplace_back(A->alphabet().degrees[i]);
    for (size_t j = 0; j < m; ++j) images.push_back(B->gen_poly(j));
    return B->nf(apply_generator_map(c, images, C->alphabet()));
}

namespace {

TwistedTensorAlgebra assemble_product(const GradedAlgebra* first,
                                      const GradedAlgebra* second,
                                      const std::vector<NcPoly>& cross, int bound,
                                      const GradedAlgebra* A, const GradedAlgebra* B) {
    if (!(first->field() == second->field()))
        throw Error("twisted tensor: fields of A and B differ");
    std::vector<std::string> names = first->alphabet().names;
    std::vector<int> degrees = first->alphabet().degrees;
    names.insert(names.end(), second->alphabet().names.begin(),
                 second->alphabet().names.end());
    degrees.insert(degrees.end(), second->alphabet().degrees.begin(),
                   second->alphabet().degrees.end());
    GeneratorAlphabet alpha(std::move(names), std::move(degrees));

    size_t off = first->num_generators();
    std::vector<NcPoly> rels;
    for (const NcPoly& r : first->gb().relations) rels.push_back(r);
    for (const NcPoly& r : second->gb().relations) {
        NcPoly moved(r.degree());
        for (const auto& [w, c] : r.terms()) {
            Word shifted;
            for (Gen g : w) shifted.push_back(Gen(g + off));
            moved.add_term(shifted, c);
        }
        rels.push_back(std::move(moved));
    }
    for (const NcPoly& r : cross) rels.push_back(r);

    TwistedTensorAlgebra out;
    out.C = std::make_shared<GradedAlgebra>(truncated_groebner(alpha, rels, bound),
                                            first->field());
    out.A = A;
    out.B = B;
    out.n = A->num_generators();
    out.m = B->num_generators();

    // Hilbert-series factorization certificate
    for (int d = 0; d <= bound; ++d) {
        long expect = 0;
        for (int p = 0; p <= d; ++p) {
            if (p > A->bound() || d - p > B->bound())
                throw Error("twist: factor algebra bound too small for certificate");
            expect += A->dim(p) * B->dim(d - p);
        }
        long actual = out.C->dim(d);
        if (actual != expect) throw NotTwistingError(d, expect - actual);
    }
    return out;
}

}  // namespace

TwistedTensorAlgebra build_twisted_tensor(const TwistData& data, int bound) {
    const GradedAlgebra& A = *data.A;
    const GradedAlgebra& B = *data.B;
    size_t n = A.num_generators(), m = B.num_generators();
    if (data.sigma.size() != m) throw Error("twist: sigma size must match #generators of B");
    auto check = validate_sigma(data.sigma);
    if (!check.ok) throw Error(check.message);
    if (data.delta) data.delta->validate();

    // cross relations y_j x_i - sum_t sigma_jt(x_i) y_t - delta_j(x_i), over
    // the joint alphabet with A-generators first
    Field f = A.field();
    std::vector<NcPoly> cross;
    for (size_t j = 0; j < m; ++j)
        for (size_t i = 0; i < n; ++i) {
            int deg = A.alphabet().degrees[i] + B.alphabet().degrees[j];
            NcPoly rel(deg);
            Word yx;
            yx.push_back(Gen(n + j));
            yx.push_back(Gen(i));
            rel.add_term(yx, Scalar::one(f));
            for (size_t t = 0; t < m; ++t) {
                const NcPoly& s = data.sigma.gen_image(i)[j][t];
                for (const auto& [w, c] : s.terms()) rel.add_term(w + Word(1, Gen(n + t)), -c);
            }
            if (data.delta) {
                const NcPoly& dt = data.delta->gen_image(i)[j];
                for (const auto& [w, c] : dt.terms()) rel.add_term(w, -c);
            }
            cross.push_back(std::move(rel));
        }
    return assemble_product(&A, &B, cross, bound, &A, &B);
}

InvertedTwist invert_twist(const TwistData& data, int bound) {
    const GradedAlgebra& A = *data.A;
    const GradedAlgebra& B = *data.B;
    size_t n = A.num_generators(), m = B.num_generators();
    auto phi = invert_sigma(data.sigma);
    if (!phi) throw Error("invert_twist: sigma is not invertible");

    // delta'_i = -sum_t delta_t . phi_ti
    std::vector<PolyVec> delta_prime(n);
    for (size_t u = 0; u < n; ++u) {
        for (size_t i = 0; i < m; ++i) {
            int deg = A.alphabet().degrees[u] + B.alphabet().degrees[i];
            NcPoly acc(deg);
            if (data.delta) {
                for (size_t t = 0; t < m; ++t) {
                    const NcPoly& p = phi->gen_image(u)[t][i];
                    if (p.is_zero()) continue;
                    PolyVec dp = data.delta->apply(p);
                    if (!dp[t].is_zero()) acc -= dp[t];
                }
            }
            delta_prime[u].push_back(std::move(acc));
        }
    }

    // cross relations x_u y_j - sum_s y_s phi_sj(x_u) - delta'_j(x_u), over the
    // joint alphabet with B-generators first
    Field f = A.field();
    std::vector<NcPoly> cross;
    for (size_t u = 0; u < n; ++u)
        for (size_t j = 0; j < m; ++j) {
            int deg = A.alphabet().degrees[u] + B.alphabet().degrees[j];
            NcPoly rel(deg);
            Word xy;
            xy.push_back(Gen(m + u));
            xy.push_back(Gen(j));
            rel.add_term(xy, Scalar::one(f));
            for (size_t s = 0; s < m; ++s) {
                const NcPoly& p = phi->gen_image(u)[s][j];
                for (const auto& [w, c] : p.terms()) {
                    Word moved(1, Gen(s));
                    for (Gen g : w) moved.push_back(Gen(m + g));
                    rel.add_term(moved, -c);
                }
            }
            const NcPoly& dp = delta_prime[u][j];
            for (const auto& [w, c] : dp.terms()) {
                Word moved;
                for (Gen g : w) moved.push_back(Gen(m + g));
                rel.add_term(moved, -c);
            }
            cross.push_back(std::move(rel));
        }

    InvertedTwist out{assemble_product(&B, &A, cross, bound, &B, &A), *phi,
                      std::move(delta_prime), std::nullopt};

    // standard-form data over B when delta' = 0 and A is generated in degree 1
    bool deg1 = true;
    for (int d : A.alphabet().degrees) deg1 = deg1 && d == 1;
    bool delta_zero = true;
    for (size_t u = 0; u < n && delta_zero; ++u)
        for (size_t i = 0; i < m; ++i)
            delta_zero = delta_zero && out.delta_prime[u][i].is_zero();
    if (deg1 && delta_zero) {
        // [sigma_new(y_j)]_{ut} = sum_s c_t y_s  where phi_sj(x_u) = sum_t c_t x_t
        std::vector<MatrixAlgebraHom::Matrix> images;
        for (size_t j = 0; j < m; ++j) {
            MatrixAlgebraHom::Matrix mat(n, PolyVec(n, NcPoly(B.alphabet().degrees[j])));
            for (size_t u = 0; u < n; ++u)
                for (size_t s = 0; s < m; ++s) {
                    const NcPoly& p = out.phi.gen_image(u)[s][j];
                    for (const auto& [w, c] : p.terms()) {
                        if (w.size() != 1) throw Error("invert_twist: non-generator image");
                        mat[u][w[0]] +=
                            NcPoly::term(Word(1, Gen(s)), c, B.alphabet().degrees[s]);
                    }
                }
            images.push_back(std::move(mat));
        }
        MatrixAlgebraHom sigma_new(&B, n, std::move(images));
        if (validate_sigma(sigma_new).ok)
            out.swapped = TwistData{&B, &A, std::move(sigma_new), std::nullopt};
    }
    return out;
}

PolyVec TwistedRightAction::act(const PolyVec& elem, const NcPoly& a) const {
    size_t s = mod.rank();
    if (elem.size() != s) throw Error("twisted action: rank mismatch");
    const GradedAlgebra& alg = *mod.alg;
    auto mat = phi->apply(a);
    PolyVec out(s);
    for (size_t t = 0; t < s; ++t) {
        NcPoly acc;
        for (size_t q = 0; q < s; ++q) {
            if (elem[q].is_zero() || mat[q][t].is_zero()) continue;
            NcPoly rhs = embed ? embed(mat[q][t]) : mat[q][t];
            acc += alg.mul(elem[q], rhs);
        }
        out[t] = acc.is_zero() ? NcPoly(elem[t].degree() + a.degree()) : acc;
    }
    return out;
}

}  // namespace gforge

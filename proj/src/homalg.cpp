#include "gforge/homalg.hpp"

#include <algorithm>

namespace gforge {

// ---------------------------------------------------------------------------
// Phi tower
// ---------------------------------------------------------------------------

PhiTower build_phi_tower(const TwistData& data, const TwistedTensorAlgebra& Cbar,
                         const FreeResolution& Qres) {
    const GradedAlgebra& A = *data.A;
    const GradedAlgebra& C = *Cbar.C;
    Field f = A.field();

    auto purity = is_pure(Qres);
    if (!purity.pure)
        throw Error("phi tower requires a pure resolution of B; mixed term at position " +
                    std::to_string(purity.first_mixed));

    PhiTower tower;
    tower.Cbar = &Cbar;
    tower.Qres = &Qres;
    tower.phis.push_back(MatrixAlgebraHom::diagonal(&A, 1));
    tower.phis.push_back(data.sigma);
    tower.unique_solution.assign(2, true);

    // differentials of F = C (x) Q, entries of d_Q pushed into C
    for (size_t i = 0; i + 1 < Qres.positions(); ++i) {
        const ModuleMap& dq = Qres.diffs[i];
        FreeModule src{&C, Qres.terms[i + 1].shifts};
        FreeModule tgt{&C, Qres.terms[i].shifts};
        std::vector<PolyVec> entries(tgt.rank());
        for (size_t r = 0; r < tgt.rank(); ++r)
            for (size_t c = 0; c < src.rank(); ++c)
                entries[r].push_back(Cbar.embed_B(dq.entry(r, c)));
        tower.dF.emplace_back(std::move(src), std::move(tgt), std::move(entries));
    }

    for (size_t i = 2; i < Qres.positions(); ++i) {
        size_t si = Qres.terms[i].rank();
        if (si == 0) break;
        size_t sprev = Qres.terms[i - 1].rank();
        int li = Qres.terms[i].shifts[0];
        int lprev = Qres.terms[i - 1].shifts[0];
        const MatrixAlgebraHom& phi_prev = tower.phis[i - 1];

        std::vector<MatrixAlgebraHom::Matrix> images(
            A.num_generators(), MatrixAlgebraHom::Matrix(si, PolyVec(si)));
        bool unique = true;

        std::map<int, std::vector<size_t>> by_degree;
        for (size_t g = 0; g < A.num_generators(); ++g)
            by_degree[A.alphabet().degrees[g]].push_back(g);

        for (const auto& [dg, gens] : by_degree) {
            const auto& abasis = A.basis(dg);
            int work_deg = dg + li - lprev;
            long cdim = C.dim(work_deg);

            // unknowns a_{jp}: solve d_F(sum_p a_jp (x) e_p) = d_F(1 (x) e_j) * x
            // with the solution constrained to the A-slice; the coefficient
            // matrix is shared by every (j, generator) pair of this degree
            ScalarMatrix M(sprev * size_t(cdim), si * abasis.size(), f);
            for (size_t p = 0; p < si; ++p)
                for (size_t widx = 0; widx < abasis.size(); ++widx) {
                    NcPoly wC =
                        Cbar.embed_A(NcPoly::term(abasis[widx], Scalar::one(f), dg));
                    size_t col = p * abasis.size() + widx;
                    for (size_t t = 0; t < sprev; ++t) {
                        const NcPoly& dqe = tower.dF[i - 1].entry(t, p);
                        if (dqe.is_zero()) continue;
                        NcPoly prod = C.mul(wC, dqe);
                        if (prod.is_zero()) continue;
                        ScalarVec coords = C.coords(prod);
                        for (long r = 0; r < cdim; ++r)
                            if (!coords[r].is_zero())
                                M.at(t * size_t(cdim) + size_t(r), col) = coords[r];
                    }
                }
            RrefSolver solver(M);
            if (!solver.kernel().empty()) unique = false;

            for (size_t g : gens) {
                for (size_t j = 0; j < si; ++j) {
                    // rhs_t = sum_q dF(1 (x) e_j)_q . iota_A(phi_prev_qt(x_g))
                    ScalarVec rhs(sprev * size_t(cdim), Scalar::zero(f));
                    for (size_t t = 0; t < sprev; ++t) {
                        NcPoly acc(work_deg);
                        for (size_t q = 0; q < sprev; ++q) {
                            const NcPoly& dqe = tower.dF[i - 1].entry(q, j);
                            const NcPoly& ph = phi_prev.gen_image(g)[q][t];
                            if (dqe.is_zero() || ph.is_zero()) continue;
                            acc += C.mul(dqe, Cbar.embed_A(ph));
                        }
                        if (acc.is_zero()) continue;
                        ScalarVec coords = C.coords(acc);
                        for (long r = 0; r < cdim; ++r)
                            rhs[t * size_t(cdim) + size_t(r)] = coords[r];
                    }
                    auto sol = solver.solve(rhs);
                    if (!sol)
                        throw Error("phi tower: inconsistent system at position " +
                                    std::to_string(i) +
                                    " (sigma not invertible or bounds too small)");
                    for (size_t p = 0; p < si; ++p) {
                        NcPoly a(dg);
                        for (size_t widx = 0; widx < abasis.size(); ++widx)
                            a.add_term(abasis[widx], (*sol)[p * abasis.size() + widx]);
                        images[g][j][p] = std::move(a);
                    }
                }
            }
        }

        MatrixAlgebraHom phi_i(&A, si, std::move(images));
        auto check = validate_sigma(phi_i);
        if (!check.ok) throw Error("phi tower: " + check.message);
        tower.phis.push_back(std::move(phi_i));
        tower.unique_solution.push_back(unique);
    }
    return tower;
}

GradedAutomorphism det_sigma(const PhiTower& tower) {
    const FreeResolution& Q = *tower.Qres;
    if (!Q.terminated)
        throw Error("det sigma: resolution of B does not terminate within bounds");
    if (Q.terms[Q.length].rank() != 1)
        throw Error("det sigma: top Betti number is " +
                    std::to_string(Q.terms[Q.length].rank()) +
                    ", B not AS-regular at this bound");
    const MatrixAlgebraHom& top = tower.phis[size_t(Q.length)];
    const GradedAlgebra& A = top.algebra();
    GradedAutomorphism nu{&A, {}};
    for (size_t g = 0; g < A.num_generators(); ++g)
        nu.images.push_back(top.gen_image(g)[0][0]);
    validate_automorphism(nu);
    return nu;
}

NcPoly compose_entries(const MatrixAlgebraHom& sigma,
                       const std::vector<std::pair<size_t, size_t>>& entries,
                       const NcPoly& p) {
    NcPoly acc = p;
    for (auto it = entries.rbegin(); it != entries.rend(); ++it)
        acc = sigma.apply(acc)[it->first][it->second];
    return acc;
}

// ---------------------------------------------------------------------------
// Homological determinant
// ---------------------------------------------------------------------------

namespace {

// expansion of the phi-twisted module ^phi(P_p (x) U) at one internal degree:
// columns are free coefficients (alpha, u_j, word), rows plain coordinates
ScalarMatrix twisted_expansion(const GradedAlgebra& A, const MatrixAlgebraHom& phi,
                               const std::vector<int>& shifts, int d) {
    size_t m = phi.size();
    Field f = A.field();
    std::vector<size_t> offsets;
    size_t total = 0;
    for (int s : shifts) {
        offsets.push_back(total);
        total += size_t(m) * size_t(A.dim(d - s));
    }
    ScalarMatrix E(total, total, f);
    size_t col = 0;
    for (size_t alpha = 0; alpha < shifts.size(); ++alpha) {
        long n = A.dim(d - shifts[alpha]);
        for (size_t j = 0; j < m; ++j) {
            for (long widx = 0; widx < n; ++widx) {
                const Word& w = A.basis(d - shifts[alpha])[size_t(widx)];
                auto mat = phi.apply_word(w);
                // w * (e_alpha (x) u_j) has component (alpha, l) = phi_lj(w)
                for (size_t l = 0; l < m; ++l) {
                    if (mat[l][j].is_zero()) continue;
                    for (const auto& [u, c] : mat[l][j].terms())
                        E.at(offsets[alpha] + l * size_t(n) +
                                 A.index_of(d - shifts[alpha], u),
                             col) = c;
                }
                ++col;
            }
        }
    }
    return E;
}

}  // namespace

ScalarMatrix hdet(const GradedAlgebra& A, const MatrixAlgebraHom& sigma,
                  const MatrixAlgebraHom& phi, const FreeResolution& Pres) {
    if (sigma.size() != phi.size()) throw Error("hdet: sigma/phi size mismatch");
    Field f = A.field();
    size_t m = phi.size();
    if (!Pres.terminated) throw Error("hdet: resolution does not terminate within bounds");
    int h = Pres.length;
    if (Pres.terms[h].rank() != 1)
        throw Error("hdet: top Betti number != 1, A not AS-regular at this bound");

    // theta[i][p][alpha*m + j] : image of e_alpha (x) u_j under theta_i
    std::vector<std::vector<std::vector<PolyVec>>> theta(
        m, std::vector<std::vector<PolyVec>>(size_t(h) + 1));

    for (size_t i = 0; i < m; ++i) {
        theta[i][0].resize(m);
        for (size_t j = 0; j < m; ++j) {
            PolyVec v = Pres.terms[0].zero_elem();
            if (i == j) v[0] = A.one();
            theta[i][0][j] = std::move(v);
        }
    }

    for (int p = 1; p <= h; ++p) {
        const FreeModule& P = Pres.terms[p];
        const FreeModule& Pprev = Pres.terms[p - 1];
        const std::vector<int>& prev_shifts = Pprev.shifts;
        for (size_t i = 0; i < m; ++i) theta[i][p].resize(P.rank() * m);

        for (size_t alpha = 0; alpha < P.rank(); ++alpha) {
            int deg = P.shifts[alpha];
            ScalarMatrix E = twisted_expansion(A, phi, prev_shifts, deg);
            RrefSolver esolver(E);
            const RrefSolver& dsolver = Pres.solver(size_t(p), deg);

            for (size_t j = 0; j < m; ++j) {
                // plain coordinates of d_P(e_alpha) (x) u_j
                ScalarVec plain(E.rows(), Scalar::zero(f));
                size_t off = 0;
                for (size_t beta = 0; beta < Pprev.rank(); ++beta) {
                    long n = A.dim(deg - prev_shifts[beta]);
                    const NcPoly& e = Pres.diffs[p - 1].entry(beta, alpha);
                    if (!e.is_zero())
                        for (const auto& [w, c] : e.terms())
                            plain[off + j * size_t(n) +
                                  A.index_of(deg - prev_shifts[beta], w)] = c;
                    off += size_t(m) * size_t(n);
                }
                auto free_coords = esolver.solve(plain);
                if (!free_coords) throw Error("hdet: twisted module is not free here");

                for (size_t i = 0; i < m; ++i) {
                    PolyVec rhs = Pprev.zero_elem();
                    size_t col = 0;
                    for (size_t beta = 0; beta < Pprev.rank(); ++beta) {
                        long n = A.dim(deg - prev_shifts[beta]);
                        for (size_t l = 0; l < m; ++l)
                            for (long widx = 0; widx < n; ++widx, ++col) {
                                const Scalar& c = (*free_coords)[col];
                                if (c.is_zero()) continue;
                                const Word& w =
                                    A.basis(deg - prev_shifts[beta])[size_t(widx)];
                                const PolyVec& img = theta[i][p - 1][beta * m + l];
                                for (size_t r = 0; r < rhs.size(); ++r) {
                                    if (img[r].is_zero()) continue;
                                    rhs[r] += A.nf(sandwich(c, w, img[r], Word{},
                                                            deg - prev_shifts[beta], 0));
                                }
                            }
                    }
                    auto sol = dsolver.solve(Pprev.coords(deg, rhs));
                    if (!sol) throw Error("hdet: lifting inconsistency");
                    theta[i][p][alpha * m + j] = P.from_coords(deg, *sol);
                }
            }
        }
    }

    ScalarMatrix H(m, m, f);
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) H.at(i, j) = theta[i][h][j][0].constant_coeff();
    return H;
}

// ---------------------------------------------------------------------------
// Ext algebra
// ---------------------------------------------------------------------------

ExtAlgebra::ExtAlgebra(const FreeResolution* res) : res_(res) {}

size_t ExtAlgebra::dim(int i) const {
    if (i < 0) return 0;
    if (size_t(i) < res_->terms.size()) return res_->terms[i].rank();
    if (res_->terminated) return 0;
    throw Error("ext: position " + std::to_string(i) + " beyond the computed range");
}

std::map<int, long> ExtAlgebra::bigraded_dims(int i) const {
    std::map<int, long> out;
    if (i >= 0 && size_t(i) < res_->terms.size())
        for (int s : res_->terms[i].shifts) ++out[s];
    return out;
}

ScalarVec ExtAlgebra::product(int i, size_t a, int j, size_t b) const {
    return product_impl(i, a, j, b, Scalar::zero(res_->alg->field()), true);
}

ScalarVec ExtAlgebra::product_perturbed(int i, size_t a, int j, size_t b,
                                        const Scalar& fv) const {
    return product_impl(i, a, j, b, fv, false);
}

ScalarVec ExtAlgebra::product_impl(int i, size_t a, int j, size_t b, const Scalar& fv,
                                   bool use_cache) const {
    const GradedAlgebra& A = *res_->alg;
    Field f = A.field();
    size_t out_dim = dim(i + j);
    ScalarVec out(out_dim, Scalar::zero(f));
    if (out_dim == 0) return out;

    const CocycleLift* lift = nullptr;
    CocycleLift scratch;
    if (use_cache) {
        auto key = std::make_pair(j, b);
        auto it = lifts_.find(key);
        if (it == lifts_.end())
            it = lifts_.emplace(key, lift_cocycle(*res_, j, b, res_->length, fv)).first;
        lift = &it->second;
    } else {
        scratch = lift_cocycle(*res_, j, b, i + j, fv);
        lift = &scratch;
    }

    int ta = gen_degree(i, a), tb = gen_degree(j, b);
    const auto& comp = lift->comps[size_t(i + j)];
    for (size_t gamma = 0; gamma < out_dim; ++gamma) {
        if (gen_degree(i + j, gamma) != ta + tb) continue;
        out[gamma] = comp[gamma][a].constant_coeff();
    }
    return out;
}

ScalarVec ExtAlgebra::product_vec(int i, const ScalarVec& u, int j,
                                  const ScalarVec& v) const {
    Field f = res_->alg->field();
    ScalarVec out(dim(i + j), Scalar::zero(f));
    for (size_t a = 0; a < u.size(); ++a) {
        if (u[a].is_zero()) continue;
        for (size_t b = 0; b < v.size(); ++b) {
            if (v[b].is_zero()) continue;
            ScalarVec p = product(i, a, j, b);
            Scalar c = u[a] * v[b];
            for (size_t g = 0; g < out.size(); ++g)
                if (!p[g].is_zero()) out[g] += c * p[g];
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Frobenius data
// ---------------------------------------------------------------------------

Scalar FrobeniusData::pairing(int i, size_t a, size_t b) const {
    ScalarVec p = ext->product(i, a, h - i, b);
    Field f = ext->resolution().alg->field();
    if (p.empty()) return Scalar::zero(f);
    return p[0];
}

FrobeniusData frobenius_data(const ExtAlgebra& ext) {
    const FreeResolution& res = ext.resolution();
    Field f = res.alg->field();
    if (!res.terminated) throw Error("frobenius: resolution does not terminate in bounds");
    int h = res.length;
    if (ext.dim(h) != 1) throw Error("frobenius: dim E^top != 1");
    int l = ext.gen_degree(h, 0);

    FrobeniusData out;
    out.ext = &ext;
    out.h = h;
    out.l = l;

    for (int i = 0; i <= h; ++i) {
        if (ext.dim(i) != ext.dim(h - i))
            throw Error("frobenius: dim E^" + std::to_string(i) + " != dim E^" +
                        std::to_string(h - i) + ", pairing degenerate");
        auto upper = ext.bigraded_dims(i);
        auto lower = ext.bigraded_dims(h - i);
        for (const auto& [s, cnt] : upper)
            if (lower.count(l - s) == 0 || lower.at(l - s) != cnt)
                throw Error("frobenius: bidegree mismatch at E^" + std::to_string(i));
    }

    for (int i = 0; i <= h; ++i) {
        size_t n = ext.dim(i);
        ScalarMatrix N(n, n, f);
        Scalar sign = ((size_t(h - i) * size_t(i)) % 2 == 0) ? Scalar::one(f)
                                                             : -Scalar::one(f);
        // <a, b> = sign . sum_{b'} N[b'][b] <b', a>  for every a in E^{h-i}
        ScalarMatrix G(n, n, f), K(n, n, f);
        for (size_t a = 0; a < n; ++a)
            for (size_t b = 0; b < n; ++b) {
                ScalarVec ab = ext.product(h - i, a, i, b);
                G.at(a, b) = ab.empty() ? Scalar::zero(f) : ab[0];
                ScalarVec ba = ext.product(i, b, h - i, a);
                K.at(a, b) = ba.empty() ? Scalar::zero(f) : ba[0];  // K[a][b] = <b, a>
            }
        RrefSolver solver(K);
        if (solver.rank() != n)
            throw Error("frobenius: degenerate pairing at position " + std::to_string(i));
        for (size_t b = 0; b < n; ++b) {
            ScalarVec col(n, Scalar::zero(f));
            for (size_t a = 0; a < n; ++a) col[a] = sign * G.at(a, b);
            auto x = solver.solve(col);
            if (!x) throw Error("frobenius: inconsistent Nakayama system");
            for (size_t bp = 0; bp < n; ++bp) N.at(bp, b) = (*x)[bp];
        }
        out.nakayama.push_back(std::move(N));
    }
    return out;
}

// ---------------------------------------------------------------------------
// AS-regularity within bounds
// ---------------------------------------------------------------------------

namespace {

// degree-d matrix of Hom(P_i, A) -> Hom(P_{i+1}, A), f -> f . d_{i+1};
// Hom(P_i, A) at degree d has coordinates (j, word of A_{d + s_j})
ScalarMatrix dual_degree_matrix(const FreeResolution& res, size_t i, int d) {
    const GradedAlgebra& A = *res.alg;
    Field f = A.field();
    const auto& src_shifts = res.terms[i].shifts;
    const auto& tgt_shifts = res.terms[i + 1].shifts;
    auto dim_at = [&](const std::vector<int>& shifts) {
        long n = 0;
        for (int s : shifts) n += (d + s < 0) ? 0 : A.dim(d + s);
        return n;
    };
    ScalarMatrix M(size_t(dim_at(tgt_shifts)), size_t(dim_at(src_shifts)), f);
    size_t col = 0;
    for (size_t j = 0; j < src_shifts.size(); ++j) {
        int sd = d + src_shifts[j];
        if (sd < 0) continue;
        for (const Word& w : A.basis(sd)) {
            size_t row_off = 0;
            for (size_t gamma = 0; gamma < tgt_shifts.size(); ++gamma) {
                int td = d + tgt_shifts[gamma];
                if (td < 0) continue;
                const NcPoly& e = res.diffs[i].entry(j, gamma);
                if (!e.is_zero()) {
                    NcPoly img = A.nf(mul(e, NcPoly::term(w, Scalar::one(f), sd)));
                    for (const auto& [u, c] : img.terms())
                        M.at(row_off + A.index_of(td, u), col) = c;
                }
                row_off += size_t(A.dim(td));
            }
            ++col;
        }
    }
    return M;
}

}  // namespace

ASRegReport as_regular_report(const GradedAlgebra& A, const FreeResolution& res) {
    ASRegReport rep;
    rep.caveat = "within bounds (H=" + std::to_string(res.hom_bound) +
                 ", D=" + std::to_string(res.deg_bound) + ")";
    if (!res.terminated) {
        rep.caveat = "undetermined at bound: resolution does not terminate " + rep.caveat;
        return rep;
    }
    int h = res.length;
    if (res.terms[h].rank() != 1) {
        rep.determined = true;
        rep.as_regular = false;
        rep.caveat = "top Betti number != 1 " + rep.caveat;
        return rep;
    }
    rep.h = h;
    rep.l = res.terms[h].shifts[0];

    int max_shift = 0;
    for (const auto& t : res.terms)
        for (int s : t.shifts) max_shift = std::max(max_shift, s);
    int dmin = -rep.l, dmax = res.deg_bound - max_shift;

    rep.determined = true;
    rep.as_regular = true;
    for (int d = dmin; d <= dmax; ++d) {
        std::vector<long> ranks;  // rank of Dual_i at degree d, i = 0..h-1
        for (int i = 0; i < h; ++i)
            ranks.push_back(long(rref(dual_degree_matrix(res, size_t(i), d)).rank));
        for (int i = 0; i <= h; ++i) {
            long dim_i = 0;
            for (int s : res.terms[i].shifts) dim_i += (d + s < 0) ? 0 : A.dim(d + s);
            long rank_out = (i < h) ? ranks[size_t(i)] : 0;
            long rank_in = (i > 0) ? ranks[size_t(i - 1)] : 0;
            long hom = dim_i - rank_out - rank_in;
            long want = (i == h && d == -rep.l) ? 1 : 0;
            if (hom != want) {
                rep.as_regular = false;
                rep.caveat = "dual homology " + std::to_string(hom) + " at position " +
                             std::to_string(i) + ", degree " + std::to_string(d) + " " +
                             rep.caveat;
                return rep;
            }
        }
    }
    rep.caveat += "; dual complex checked for degrees " + std::to_string(dmin) + ".." +
                  std::to_string(dmax);
    return rep;
}

// ---------------------------------------------------------------------------
// Assembled tensor resolution
// ---------------------------------------------------------------------------

size_t TensorResolution::index_of(int n, size_t p, size_t j, size_t q,
                                  size_t alpha) const {
    const auto& blk = blocks[size_t(n)];
    for (size_t k = 0; k < blk.size(); ++k)
        if (blk[k][0] == p && blk[k][1] == j && blk[k][2] == q && blk[k][3] == alpha)
            return k;
    throw Error("tensor resolution: generator not found");
}

TensorResolution tensor_resolution(const PhiTower& tower, const FreeResolution& Pres) {
    const TwistedTensorAlgebra& Cb = *tower.Cbar;
    const GradedAlgebra& C = *Cb.C;
    const FreeResolution& Q = *tower.Qres;
    Field f = C.field();

    TensorResolution out;
    out.res.alg = &C;
    out.res.deg_bound = C.bound();

    int plen = Pres.length, qlen = Q.length;
    out.res.hom_bound = plen + qlen;

    for (int n = 0; n <= plen + qlen; ++n) {
        std::vector<std::array<size_t, 4>> blk;
        std::vector<int> shifts;
        for (int p = 0; p <= n; ++p) {
            int q = n - p;
            if (p > qlen || q > plen) continue;
            for (size_t j = 0; j < Q.terms[p].rank(); ++j)
                for (size_t alpha = 0; alpha < Pres.terms[q].rank(); ++alpha) {
                    blk.push_back({size_t(p), j, size_t(q), alpha});
                    shifts.push_back(Q.terms[p].shifts[j] + Pres.terms[q].shifts[alpha]);
                }
        }
        out.blocks.push_back(std::move(blk));
        out.res.terms.push_back(FreeModule{&C, std::move(shifts)});
    }

    for (int n = 1; n <= plen + qlen; ++n) {
        const auto& src_blk = out.blocks[size_t(n)];
        const auto& tgt_blk = out.blocks[size_t(n - 1)];
        std::vector<PolyVec> entries(tgt_blk.size());
        for (size_t r = 0; r < tgt_blk.size(); ++r) entries[r].resize(src_blk.size());
        for (size_t cidx = 0; cidx < src_blk.size(); ++cidx) {
            auto [p, j, q, alpha] = src_blk[cidx];
            Scalar sign = (p % 2 == 0) ? Scalar::one(f) : -Scalar::one(f);
            for (size_t ridx = 0; ridx < tgt_blk.size(); ++ridx) {
                auto [pp, t, qq, beta] = tgt_blk[ridx];
                NcPoly entry(out.res.terms[n].shifts[cidx] -
                             out.res.terms[n - 1].shifts[ridx]);
                if (pp + 1 == p && qq == q && beta == alpha) {
                    // F-part: d_Q entry embedded into C
                    entry += Cb.embed_B(Q.diffs[p - 1].entry(t, j));
                } else if (pp == p && qq + 1 == q) {
                    // P-part: Koszul sign and the phi_p right twist
                    const NcPoly& dpe = Pres.diffs[q - 1].entry(beta, alpha);
                    if (!dpe.is_zero()) {
                        NcPoly tw = tower.phis[p].apply(dpe)[j][t];
                        if (!tw.is_zero()) entry += Cb.embed_A(tw).scaled(sign);
                    }
                }
                entries[ridx][cidx] = std::move(entry);
            }
        }
        out.res.diffs.emplace_back(out.res.terms[n], out.res.terms[n - 1],
                                   std::move(entries));
    }

    out.res.terminated = Pres.terminated && Q.terminated;
    out.res.length = 0;
    for (size_t i = 0; i < out.res.terms.size(); ++i)
        if (out.res.terms[i].rank() > 0) out.res.length = int(i);
    return out;
}

// ---------------------------------------------------------------------------
// Projection lifts and E(pi) images
// ---------------------------------------------------------------------------

std::vector<std::vector<PolyVec>> lift_projection(
    const FreeResolution& resC, const FreeResolution& resTgt,
    const std::function<NcPoly(const NcPoly&)>& coefmap, int pmax) {
    const GradedAlgebra& T = *resTgt.alg;
    std::vector<std::vector<PolyVec>> comps(size_t(pmax) + 1);
    comps[0].resize(resC.terms[0].rank());
    {
        PolyVec v = resTgt.terms[0].zero_elem();
        v[0] = T.one();
        comps[0][0] = std::move(v);
    }
    for (int p = 1; p <= pmax; ++p) {
        if (size_t(p) >= resC.positions()) break;
        size_t tgt_rank = size_t(p) < resTgt.positions() ? resTgt.terms[p].rank() : 0;
        comps[p].resize(resC.terms[p].rank());
        for (size_t gamma = 0; gamma < resC.terms[p].rank(); ++gamma) {
            int deg = resC.terms[p].shifts[gamma];
            PolyVec rhs = resTgt.terms[p - 1].zero_elem();
            PolyVec dcol = resC.diffs[p - 1].column(gamma);
            for (size_t beta = 0; beta < dcol.size(); ++beta) {
                if (dcol[beta].is_zero()) continue;
                NcPoly c = coefmap(dcol[beta]);
                if (c.is_zero()) continue;
                const PolyVec& img = comps[p - 1][beta];
                for (size_t r = 0; r < img.size(); ++r) {
                    if (img[r].is_zero()) continue;
                    rhs[r] += T.mul(c, img[r]);
                }
            }
            if (tgt_rank == 0) {
                for (const NcPoly& e : rhs)
                    if (!e.is_zero())
                        throw Error("lift_projection: nonzero residue past the target");
                comps[p][gamma] = PolyVec{};
                continue;
            }
            auto sol = resTgt.solver(size_t(p), deg).solve(
                resTgt.terms[p - 1].coords(deg, rhs));
            if (!sol) throw Error("lift_projection: inconsistent system");
            comps[p][gamma] = resTgt.terms[p].from_coords(deg, *sol);
        }
    }
    return comps;
}

ScalarVec e_image(const FreeResolution& resC,
                  const std::vector<std::vector<PolyVec>>& proj_lift, int i, size_t a,
                  int gen_deg) {
    Field f = resC.alg->field();
    size_t n = resC.terms[i].rank();
    ScalarVec out(n, Scalar::zero(f));
    if (size_t(i) >= proj_lift.size()) return out;
    for (size_t gamma = 0; gamma < n; ++gamma) {
        if (resC.terms[i].shifts[gamma] != gen_deg) continue;
        const PolyVec& img = proj_lift[i][gamma];
        if (img.size() > a) out[gamma] = img[a].constant_coeff();
    }
    return out;
}

// ---------------------------------------------------------------------------
// tau_E restrictions
// ---------------------------------------------------------------------------

TauEReport tau_e_restrictions(const PhiTower& tower, const FreeResolution& Pres,
                              const TensorResolution& tres,
                              const GradedAutomorphism& det_sig,
                              const ScalarMatrix& hdet_sig,
                              const FreeResolution* independent_resC) {
    TauEReport rep;
    const FreeResolution& Q = *tower.Qres;
    const FreeResolution& resC = tres.res;
    const GradedAlgebra& A = *Pres.alg;
    Field f = A.field();
    ExtAlgebra extC(&resC);

    auto fail = [&](bool& flag, const std::string& msg) {
        flag = false;
        if (rep.first_violation.empty()) rep.first_violation = msg;
    };

    // (i) bigraded dimensions, against an independently computed resolution
    if (independent_resC) {
        for (int n = 0; n <= resC.length; ++n) {
            std::map<int, long> asm_dims = extC.bigraded_dims(n);
            std::map<int, long> ind_dims;
            if (size_t(n) < independent_resC->terms.size())
                for (int s : independent_resC->terms[n].shifts) ++ind_dims[s];
            if (asm_dims != ind_dims) {
                fail(rep.dims_factorize,
                     "dim E(C) differs from the independent resolution at position " +
                         std::to_string(n));
                break;
            }
        }
    }

    const TwistedTensorAlgebra& Cb = *tower.Cbar;
    auto liftA = lift_projection(
        resC, Pres, [&](const NcPoly& c) { return Cb.project_A(c); }, resC.length);
    auto liftB = lift_projection(
        resC, Q, [&](const NcPoly& c) { return Cb.project_B(c); }, resC.length);

    auto basis_vec = [&](int n, size_t p, size_t j, size_t q, size_t alpha) {
        ScalarVec v(tres.res.terms[n].rank(), Scalar::zero(f));
        v[tres.index_of(n, p, j, q, alpha)] = Scalar::one(f);
        return v;
    };

    std::map<std::pair<int, size_t>, ScalarVec> eA, eB;
    for (int q = 0; q <= Pres.length; ++q)
        for (size_t alpha = 0; alpha < Pres.terms[q].rank(); ++alpha) {
            ScalarVec img = e_image(resC, liftA, q, alpha, Pres.terms[q].shifts[alpha]);
            if (!(img == basis_vec(q, 0, 0, size_t(q), alpha)))
                fail(rep.projections_are_tensor_basis,
                     "E(pi_A) image is not the tensor basis vector at (" +
                         std::to_string(q) + "," + std::to_string(alpha) + ")");
            eA[{q, alpha}] = std::move(img);
        }
    for (int p = 0; p <= Q.length; ++p)
        for (size_t j = 0; j < Q.terms[p].rank(); ++j) {
            ScalarVec img = e_image(resC, liftB, p, j, Q.terms[p].shifts[j]);
            if (!(img == basis_vec(p, size_t(p), j, 0, 0)))
                fail(rep.projections_are_tensor_basis,
                     "E(pi_B) image is not the tensor basis vector at (" +
                         std::to_string(p) + "," + std::to_string(j) + ")");
            eB[{p, j}] = std::move(img);
        }

    // (ii) sign law (g (x) 1)(1 (x) f) = (-1)^{pq} g (x) f on every basis pair
    for (int p = 0; p <= Q.length && rep.sign_law; ++p)
        for (size_t j = 0; j < Q.terms[p].rank() && rep.sign_law; ++j)
            for (int q = 0; q <= Pres.length && rep.sign_law; ++q) {
                if (p + q > resC.length) continue;
                for (size_t alpha = 0; alpha < Pres.terms[q].rank(); ++alpha) {
                    ScalarVec prod = extC.product_vec(p, eB[{p, j}], q, eA[{q, alpha}]);
                    ScalarVec want = basis_vec(p + q, size_t(p), j, size_t(q), alpha);
                    if ((p * q) % 2 == 1)
                        for (auto& e : want) e = -e;
                    if (!(prod == want)) {
                        fail(rep.sign_law, "sign law fails at ((" + std::to_string(p) +
                                               "," + std::to_string(j) + "),(" +
                                               std::to_string(q) + "," +
                                               std::to_string(alpha) + "))");
                        break;
                    }
                }
            }

    // (iii a) (1 (x) f_1)(g_top (x) 1) = g_top (x) (f_1 . det sigma|_{V_1})
    if (Q.terminated && Q.terms[Q.length].rank() == 1 && Pres.length >= 1 &&
        1 + Q.length <= resC.length) {
        int hb = Q.length;
        size_t n1 = Pres.terms[1].rank();
        bool deg1 = Pres.terms[1].shifts == std::vector<int>(n1, 1);
        if (deg1 && A.num_generators() == n1) {
            ScalarMatrix M(n1, n1, f);  // nu(x_u) = sum_v M[u][v] x_v
            for (size_t u = 0; u < n1; ++u) {
                ScalarVec row = A.coords(det_sig.images[u]);
                for (size_t v = 0; v < n1; ++v) M.at(u, v) = row[v];
            }
            for (size_t a = 0; a < n1; ++a) {
                ScalarVec lhs = extC.product_vec(1, eA[{1, a}], hb, eB[{hb, 0}]);
                ScalarVec want(resC.terms[1 + hb].rank(), Scalar::zero(f));
                for (size_t u = 0; u < n1; ++u)
                    if (!M.at(u, a).is_zero())
                        want[tres.index_of(1 + hb, size_t(hb), 0, 1, u)] += M.at(u, a);
                if (!(lhs == want)) {
                    fail(rep.boundary_detsigma,
                         "det-sigma boundary formula fails at generator " +
                             std::to_string(a));
                    break;
                }
            }
        }
    }

    // (iii b) (1 (x) f_top)(e_i* (x) 1) = sum_j hdet_ij (e_j* (x) f_top)
    if (Pres.terminated && Pres.terms[Pres.length].rank() == 1 && Q.length >= 1 &&
        Pres.length + 1 <= resC.length) {
        int ha = Pres.length;
        size_t m = Q.terms[1].rank();
        for (size_t i = 0; i < m; ++i) {
            ScalarVec lhs = extC.product_vec(ha, eA[{ha, 0}], 1, eB[{1, i}]);
            ScalarVec want(resC.terms[ha + 1].rank(), Scalar::zero(f));
            for (size_t j = 0; j < m; ++j)
                if (!hdet_sig.at(i, j).is_zero())
                    want[tres.index_of(ha + 1, 1, j, size_t(ha), 0)] += hdet_sig.at(i, j);
            if (!(lhs == want)) {
                fail(rep.boundary_hdet,
                     "hdet boundary formula fails at projection " + std::to_string(i));
                break;
            }
        }
    }

    return rep;
}

}  // namespace gforge

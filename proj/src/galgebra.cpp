#include "gforge/galgebra.hpp"

#include <set>

namespace gforge {

GradedAlgebra::GradedAlgebra(TruncatedGB gb, Field field)
    : gb_(std::move(gb)), field_(field) {
    bases_.resize(gb_.bound + 1);
    index_.resize(gb_.bound + 1);
    for (int d = 0; d <= gb_.bound; ++d) {
        bases_[d] = monomial_basis(gb_, d);
        for (size_t i = 0; i < bases_[d].size(); ++i) index_[d].emplace(bases_[d][i], i);
    }
    if (dim(0) != 1) throw Error("algebra not connected: dim A_0 != 1");
}

const std::vector<Word>& GradedAlgebra::basis(int d) const {
    if (d < 0 || d > gb_.bound) {
        static const std::vector<Word> empty;
        if (d < 0) return empty;
        throw Error("basis: degree " + std::to_string(d) + " exceeds bound");
    }
    return bases_[d];
}

long GradedAlgebra::dim(int d) const {
    if (d < 0) return 0;
    if (d > gb_.bound) throw Error("dim: degree " + std::to_string(d) + " exceeds bound");
    return long(bases_[d].size());
}

size_t GradedAlgebra::index_of(int d, const Word& w) const {
    auto it = index_[d].find(w);
    if (it == index_[d].end()) throw Error("index_of: word not in basis");
    return it->second;
}

NcPoly GradedAlgebra::gen_poly(size_t i) const {
    return NcPoly::term(Word(1, Gen(i)), Scalar::one(field_), gb_.alphabet.degrees[i]);
}

ScalarVec GradedAlgebra::coords(const NcPoly& p) const {
    int d = p.degree();
    ScalarVec v(dim(d), Scalar::zero(field_));
    for (const auto& [w, c] : p.terms()) v[index_of(d, w)] = c;
    return v;
}

NcPoly GradedAlgebra::from_coords(int d, std::span<const Scalar> v) const {
    const auto& b = basis(d);
    if (v.size() != b.size()) throw Error("from_coords: coordinate length mismatch");
    NcPoly p(d);
    for (size_t i = 0; i < b.size(); ++i) p.add_term(b[i], v[i]);
    return p;
}

std::vector<long> GradedAlgebra::hilbert() const {
    std::vector<long> h;
    for (int d = 0; d <= bound(); ++d) h.push_back(dim(d));
    return h;
}

NcPoly GradedAutomorphism::apply(const NcPoly& p) const {
    return alg->nf(apply_generator_map(p, images, alg->alphabet()));
}

GradedAutomorphism GradedAutomorphism::compose(const GradedAutomorphism& inner) const {
    if (alg != inner.alg) throw Error("composing automorphisms of different algebras");
    GradedAutomorphism out{alg, {}};
    for (const NcPoly& im : inner.images) out.images.push_back(apply(im));
    return out;
}

GradedAutomorphism GradedAutomorphism::inverse() const {
    GradedAutomorphism out{alg, PolyVec(alg->num_generators())};
    // per degree: matrix of this map on A_d, then solve for each generator
    std::map<int, std::vector<size_t>> by_degree;
    for (size_t i = 0; i < alg->num_generators(); ++i)
        by_degree[alg->alphabet().degrees[i]].push_back(i);
    for (const auto& [d, gens] : by_degree) {
        const auto& b = alg->basis(d);
        ScalarMatrix m(b.size(), b.size(), alg->field());
        for (size_t j = 0; j < b.size(); ++j) {
            NcPoly img = apply(NcPoly::term(b[j], Scalar::one(alg->field()), d));
            ScalarVec col = alg->coords(img);
            for (size_t i = 0; i < b.size(); ++i) m.at(i, j) = col[i];
        }
        RrefSolver solver(m);
        for (size_t g : gens) {
            ScalarVec e = alg->coords(alg->gen_poly(g));
            auto sol = solver.solve(e);
            if (!sol) throw Error("automorphism not invertible on degree " + std::to_string(d));
            out.images[g] = alg->from_coords(d, *sol);
        }
    }
    return out;
}

bool GradedAutomorphism::operator==(const GradedAutomorphism& o) const {
    return alg == o.alg && images == o.images;
}

void validate_automorphism(const GradedAutomorphism& f) {
    const GradedAlgebra& A = *f.alg;
    if (f.images.size() != A.num_generators())
        throw Error("automorphism: wrong number of generator images");
    for (size_t i = 0; i < f.images.size(); ++i)
        if (!f.images[i].is_zero() && f.images[i].degree() != A.alphabet().degrees[i])
            throw Error("automorphism: image of '" + A.alphabet().names[i] +
                        "' has wrong degree");
    for (size_t r = 0; r < A.gb().relations.size(); ++r) {
        NcPoly img = A.nf(apply_generator_map(A.gb().relations[r], f.images, A.alphabet()));
        if (!img.is_zero())
            throw Error("automorphism does not kill relation #" + std::to_string(r) + ": " +
                        pretty_print(A.gb().relations[r], A.alphabet()));
    }
    // invertibility on each generator degree
    std::set<int> degs(A.alphabet().degrees.begin(), A.alphabet().degrees.end());
    for (int d : degs) {
        const auto& b = A.basis(d);
        ScalarMatrix m(b.size(), b.size(), A.field());
        for (size_t j = 0; j < b.size(); ++j) {
            ScalarVec col = A.coords(f.apply(NcPoly::term(b[j], Scalar::one(A.field()), d)));
            for (size_t i = 0; i < b.size(); ++i) m.at(i, j) = col[i];
        }
        if (RrefSolver(m).rank() != b.size())
            throw Error("automorphism not invertible in degree " + std::to_string(d));
    }
}

long FreeModule::dim(int d) const {
    long n = 0;
    for (int s : shifts) n += alg->dim(d - s);
    return n;
}

std::vector<FreeModule::BasisItem> FreeModule::basis(int d) const {
    std::vector<BasisItem> out;
    for (size_t j = 0; j < shifts.size(); ++j)
        for (const Word& w : alg->basis(d - shifts[j])) out.push_back({j, w});
    return out;
}

size_t FreeModule::offset(int d, size_t summand) const {
    size_t off = 0;
    for (size_t j = 0; j < summand; ++j) off += size_t(alg->dim(d - shifts[j]));
    return off;
}

ScalarVec FreeModule::coords(int d, const PolyVec& elem) const {
    if (elem.size() != shifts.size()) throw Error("module coords: rank mismatch");
    ScalarVec v(dim(d), Scalar::zero(alg->field()));
    for (size_t j = 0; j < shifts.size(); ++j) {
        if (elem[j].is_zero()) continue;
        if (elem[j].degree() != d - shifts[j])
            throw Error("module coords: component degree mismatch");
        size_t off = offset(d, j);
        for (const auto& [w, c] : elem[j].terms())
            v[off + alg->index_of(d - shifts[j], w)] = c;
    }
    return v;
}

PolyVec FreeModule::from_coords(int d, std::span<const Scalar> v) const {
    if (long(v.size()) != dim(d)) throw Error("module from_coords: length mismatch");
    PolyVec out;
    size_t pos = 0;
    for (size_t j = 0; j < shifts.size(); ++j) {
        int cd = d - shifts[j];
        long n = alg->dim(cd);
        NcPoly p(cd < 0 ? 0 : cd);
        for (long i = 0; i < n; ++i) p.add_term(alg->basis(cd)[i], v[pos + i]);
        out.push_back(std::move(p));
        pos += size_t(n);
    }
    return out;
}

PolyVec FreeModule::zero_elem() const { return PolyVec(shifts.size()); }

ModuleMap::ModuleMap(FreeModule src, FreeModule tgt, std::vector<PolyVec> entries)
    : src_(std::move(src)), tgt_(std::move(tgt)), m_(std::move(entries)) {
    if (m_.size() != tgt_.rank()) throw Error("module map: row count mismatch");
    for (size_t i = 0; i < m_.size(); ++i) {
        if (m_[i].size() != src_.rank()) throw Error("module map: column count mismatch");
        for (size_t j = 0; j < m_[i].size(); ++j) {
            int want = src_.shifts[j] - tgt_.shifts[i];
            if (m_[i][j].is_zero()) {
                m_[i][j] = NcPoly(want);
            } else {
                m_[i][j] = src_.alg->nf(m_[i][j]);
                if (!m_[i][j].is_zero() && m_[i][j].degree() != want)
                    throw Error("module map: entry degree mismatch at (" +
                                std::to_string(i) + "," + std::to_string(j) + ")");
            }
        }
    }
}

ModuleMap ModuleMap::zero(FreeModule src, FreeModule tgt) {
    std::vector<PolyVec> entries(tgt.rank());
    for (size_t i = 0; i < tgt.rank(); ++i) {
        for (size_t j = 0; j < src.rank(); ++j)
            entries[i].push_back(NcPoly(src.shifts[j] - tgt.shifts[i]));
    }
    return ModuleMap(std::move(src), std::move(tgt), std::move(entries));
}

ModuleMap ModuleMap::identity(const FreeModule& mod) {
    std::vector<PolyVec> entries(mod.rank());
    for (size_t i = 0; i < mod.rank(); ++i)
        for (size_t j = 0; j < mod.rank(); ++j)
            entries[i].push_back(i == j ? mod.alg->one() : NcPoly(0));
    return ModuleMap(mod, mod, std::move(entries));
}

ScalarMatrix ModuleMap::degree_matrix(int d) const {
    const GradedAlgebra& A = *src_.alg;
    ScalarMatrix out(tgt_.dim(d), src_.dim(d), A.field());
    size_t col = 0;
    for (size_t j = 0; j < src_.rank(); ++j) {
        int cd = d - src_.shifts[j];
        for (const Word& w : A.basis(cd)) {
            for (size_t i = 0; i < tgt_.rank(); ++i) {
                const NcPoly& p = m_[i][j];
                if (p.is_zero()) continue;
                NcPoly img = A.nf(sandwich(Scalar::one(A.field()), w, p, Word{}, cd, 0));
                if (img.is_zero()) continue;
                size_t off = tgt_.offset(d, i);
                int td = d - tgt_.shifts[i];
                for (const auto& [u, c] : img.terms()) out.at(off + A.index_of(td, u), col) = c;
            }
            ++col;
        }
    }
    return out;
}

PolyVec ModuleMap::apply(const PolyVec& elem) const {
    if (elem.size() != src_.rank()) throw Error("module map apply: rank mismatch");
    const GradedAlgebra& A = *src_.alg;
    PolyVec out(tgt_.rank());
    for (size_t i = 0; i < tgt_.rank(); ++i)
        for (size_t j = 0; j < src_.rank(); ++j) {
            if (elem[j].is_zero() || m_[i][j].is_zero()) continue;
            out[i] += A.mul(elem[j], m_[i][j]);
        }
    return out;
}

PolyVec ModuleMap::column(size_t j) const {
    PolyVec out;
    for (size_t i = 0; i < tgt_.rank(); ++i) out.push_back(m_[i][j]);
    return out;
}

bool ModuleMap::is_zero() const {
    for (const auto& row : m_)
        for (const auto& e : row)
            if (!e.is_zero()) return false;
    return true;
}

ModuleMap compose(const ModuleMap& f, const ModuleMap& g) {
    if (!(g.tgt_ == f.src_)) throw Error("compose: shape mismatch");
    const GradedAlgebra& A = *f.src_.alg;
    std::vector<PolyVec> entries(f.tgt_.rank());
    for (size_t i = 0; i < f.tgt_.rank(); ++i) {
        entries[i].resize(g.src_.rank());
        for (size_t j = 0; j < g.src_.rank(); ++j) {
            NcPoly acc(g.src_.shifts[j] - f.tgt_.shifts[i]);
            for (size_t k = 0; k < f.src_.rank(); ++k) {
                if (g.m_[k][j].is_zero() || f.m_[i][k].is_zero()) continue;
                acc += A.mul(g.m_[k][j], f.m_[i][k]);
            }
            entries[i][j] = std::move(acc);
        }
    }
    return ModuleMap(g.src_, f.tgt_, std::move(entries));
}

}  // namespace gforge

#include "gforge/resolution.hpp"

namespace gforge {

const ScalarMatrix& FreeResolution::matrix(size_t pos, int d) const {
    auto key = std::make_pair(pos, d);
    auto it = matrix_cache_.find(key);
    if (it != matrix_cache_.end()) return it->second;
    if (pos == 0 || pos >= terms.size()) throw Error("resolution matrix: bad position");
    auto m = diffs[pos - 1].degree_matrix(d);
    return matrix_cache_.emplace(key, std::move(m)).first->second;
}

const RrefSolver& FreeResolution::solver(size_t pos, int d) const {
    auto key = std::make_pair(pos, d);
    auto it = solver_cache_.find(key);
    if (it != solver_cache_.end()) return *it->second;
    auto s = std::make_unique<RrefSolver>(matrix(pos, d));
    return *solver_cache_.emplace(key, std::move(s)).first->second;
}

namespace {

// online reduced row span, kept in mutually reduced form so one pass decides
// membership regardless of insertion order
class SpanReducer {
public:
    explicit SpanReducer(size_t width) : width_(width) {}

    ScalarVec reduce(ScalarVec v) const {
        for (const auto& [piv, row] : rows_) {
            if (v[piv].is_zero()) continue;
            Scalar c = v[piv];
            for (size_t j = 0; j < width_; ++j)
                if (!row[j].is_zero()) v[j] -= c * row[j];
        }
        return v;
    }

    // reduce, normalize, and eliminate the new pivot from the stored rows
    void insert(ScalarVec v) {
        v = reduce(std::move(v));
        size_t piv = width_;
        for (size_t j = 0; j < width_; ++j)
            if (!v[j].is_zero()) {
                piv = j;
                break;
            }
        if (piv == width_) return;
        Scalar inv = v[piv].inv();
        for (auto& e : v) e *= inv;
        for (auto& [p, row] : rows_) {
            if (row[piv].is_zero()) continue;
            Scalar c = row[piv];
            for (size_t j = 0; j < width_; ++j)
                if (!v[j].is_zero()) row[j] -= c * v[j];
        }
        rows_.emplace_back(piv, std::move(v));
    }

private:
    size_t width_;
    std::vector<std::pair<size_t, ScalarVec>> rows_;
};

}  // namespace

FreeResolution minimal_resolution(const GradedAlgebra& A, int H, int D) {
    for (const NcPoly& r : A.gb().relations)
        if (!r.is_zero() && r.degree() > D)
            throw Error("resolution bound too small: relation of degree " +
                        std::to_string(r.degree()) + " exceeds D = " + std::to_string(D));
    if (D > A.bound()) throw Error("resolution bound exceeds the algebra truncation");

    FreeResolution res;
    res.alg = &A;
    res.hom_bound = H;
    res.deg_bound = D;
    res.terms.push_back(FreeModule{&A, {0}});

    Field f = A.field();
    for (int i = 1; i <= H; ++i) {
        const FreeModule& prev = res.terms[i - 1];
        std::vector<int> gen_degrees;
        std::vector<std::pair<int, PolyVec>> gens;

        for (int d = 1; d <= D; ++d) {
            std::vector<ScalarVec> kernel;
            if (i == 1) {
                // kernel of the augmentation is all of A_d for d >= 1
                long n = A.dim(d);
                for (long k = 0; k < n; ++k) {
                    ScalarVec v(n, Scalar::zero(f));
                    v[k] = Scalar::one(f);
                    kernel.push_back(std::move(v));
                }
            } else {
                kernel = res.solver(i - 1, d).kernel();
            }
            if (kernel.empty()) continue;

            SpanReducer span(kernel[0].size());
            for (const auto& [e, g] : gens) {
                for (const Word& w : A.basis(d - e)) {
                    PolyVec shifted(g.size());
                    for (size_t j = 0; j < g.size(); ++j) {
                        if (g[j].is_zero()) {
                            shifted[j] = NcPoly(g[j].degree() + (d - e));
                            continue;
                        }
                        shifted[j] =
                            A.nf(sandwich(Scalar::one(f), w, g[j], Word{}, d - e, 0));
                    }
                    span.insert(prev.coords(d, shifted));
                }
            }
            for (ScalarVec& kv : kernel) {
                ScalarVec r = span.reduce(std::move(kv));
                bool zero = true;
                for (const auto& e : r)
                    if (!e.is_zero()) {
                        zero = false;
                        break;
                    }
                if (zero) continue;
                for (const auto& e : r)
                    if (!e.is_zero()) {
                        Scalar inv = e.inv();
                        for (auto& x : r) x *= inv;
                        break;
                    }
                gens.emplace_back(d, prev.from_coords(d, r));
                gen_degrees.push_back(d);
                span.insert(std::move(r));
            }
        }

        FreeModule next{&A, gen_degrees};
        std::vector<PolyVec> entries(prev.rank());
        for (size_t row = 0; row < prev.rank(); ++row) {
            entries[row].resize(gens.size());
            for (size_t col = 0; col < gens.size(); ++col)
                entries[row][col] = gens[col].second[row];
        }
        res.diffs.emplace_back(next, prev, std::move(entries));
        res.terms.push_back(std::move(next));
        if (gen_degrees.empty()) {
            res.terminated = true;
            break;
        }
    }

    res.length = 0;
    for (size_t i = 0; i < res.terms.size(); ++i)
        if (res.terms[i].rank() > 0) res.length = int(i);
    return res;
}

Purity is_pure(const FreeResolution& res) {
    for (size_t i = 1; i < res.terms.size(); ++i) {
        const auto& s = res.terms[i].shifts;
        for (size_t j = 1; j < s.size(); ++j)
            if (s[j] != s[0]) return Purity{false, i};
    }
    return Purity{};
}

bool complex_property(const FreeResolution& res) {
    for (size_t i = 0; i + 1 < res.diffs.size(); ++i)
        if (!compose(res.diffs[i], res.diffs[i + 1]).is_zero()) return false;
    return true;
}

bool minimality_property(const FreeResolution& res) {
    for (const auto& dmap : res.diffs)
        for (size_t i = 0; i < dmap.target().rank(); ++i)
            for (size_t j = 0; j < dmap.source().rank(); ++j) {
                const NcPoly& e = dmap.entry(i, j);
                if (!e.is_zero() && e.degree() <= 0) return false;
            }
    return true;
}

bool exactness_property(const FreeResolution& res) {
    const GradedAlgebra& A = *res.alg;
    if (res.positions() > 1)
        for (int d = 1; d <= res.deg_bound; ++d)
            if (long(res.solver(1, d).rank()) != A.dim(d)) return false;
    for (size_t i = 1; i + 1 < res.positions(); ++i)
        for (int d = 1; d <= res.deg_bound; ++d) {
            long mid = res.terms[i].dim(d);
            long r1 = long(res.solver(i, d).rank());
            long r2 = long(res.solver(i + 1, d).rank());
            if (r1 + r2 != mid) return false;
        }
    return true;
}

CocycleLift lift_cocycle(const FreeResolution& res, int i, size_t gen, int pmax,
                         const Scalar& free_val) {
    const GradedAlgebra& A = *res.alg;
    Field f = A.field();
    if (i < 0 || size_t(i) >= res.positions()) throw Error("lift_cocycle: bad position");
    if (gen >= res.terms[i].rank()) throw Error("lift_cocycle: bad generator");
    const int t = res.terms[i].shifts[gen];

    CocycleLift lift;
    lift.hom_shift = i;
    lift.int_shift = t;
    lift.gen = gen;
    lift.comps.resize(size_t(pmax) + 1);

    Scalar sign = (i % 2 == 0) ? Scalar::one(f) : -Scalar::one(f);

    for (int p = i; p <= pmax; ++p) {
        if (size_t(p) >= res.positions()) break;
        const FreeModule& src = res.terms[p];
        const FreeModule& tgt = res.terms[p - i];
        auto& comp = lift.comps[p];
        comp.resize(src.rank());
        for (size_t gamma = 0; gamma < src.rank(); ++gamma) {
            int deg = src.shifts[gamma] - t;  // internal degree inside the target
            if (deg < 0) {
                comp[gamma] = tgt.zero_elem();
                continue;
            }
            if (deg > res.deg_bound)
                throw Error("lift_cocycle: bound exhausted at degree " +
                            std::to_string(deg));
            if (p == i) {
                PolyVec v = tgt.zero_elem();
                if (gamma == gen) v[0] = A.one();
                comp[gamma] = std::move(v);
                continue;
            }
            // solve d(v) = (-1)^i comps[p-1](d_p(e_gamma))
            PolyVec dcol = res.diffs[p - 1].column(gamma);
            PolyVec rhs_elem = res.terms[p - 1 - i].zero_elem();
            for (size_t beta = 0; beta < dcol.size(); ++beta) {
                if (dcol[beta].is_zero()) continue;
                const PolyVec& img = lift.comps[p - 1][beta];
                for (size_t row = 0; row < img.size(); ++row) {
                    if (img[row].is_zero()) continue;
                    rhs_elem[row] += A.mul(dcol[beta], img[row]);
                }
            }
            for (auto& e : rhs_elem)
                if (!e.is_zero()) e = e.scaled(sign);
            ScalarVec rhs = res.terms[p - 1 - i].coords(deg, rhs_elem);
            auto sol = res.solver(size_t(p - i), deg).solve(rhs, free_val);
            if (!sol)
                throw Error("lift_cocycle: inconsistent system at position " +
                            std::to_string(p));
            comp[gamma] = tgt.from_coords(deg, *sol);
        }
    }
    return lift;
}

}  // namespace gforge

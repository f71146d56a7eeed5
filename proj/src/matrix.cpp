#include "gforge/matrix.hpp"

#include <algorithm>

namespace gforge {

ScalarMatrix ScalarMatrix::identity(size_t n, Field f) {
    ScalarMatrix m(n, n, f);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
    return m;
}

ScalarVec ScalarMatrix::apply(std::span<const Scalar> v) const {
    if (v.size() != cols_) throw Error("matrix/vector dimension mismatch");
    ScalarVec out(rows_, Scalar::zero(field_));
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) {
            const Scalar& a = at(i, j);
            if (!a.is_zero() && !v[j].is_zero()) out[i] += a * v[j];
        }
    return out;
}

ScalarMatrix ScalarMatrix::operator*(const ScalarMatrix& o) const {
    if (cols_ != o.rows_) throw Error("matrix product shape mismatch");
    ScalarMatrix r(rows_, o.cols_, field_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t k = 0; k < cols_; ++k) {
            const Scalar& a = at(i, k);
            if (a.is_zero()) continue;
            for (size_t j = 0; j < o.cols_; ++j) {
                const Scalar& b = o.at(k, j);
                if (!b.is_zero()) r.at(i, j) += a * b;
            }
        }
    return r;
}

ScalarMatrix ScalarMatrix::operator+(const ScalarMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix sum shape mismatch");
    ScalarMatrix r = *this;
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
    return r;
}

bool ScalarMatrix::operator==(const ScalarMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

bool ScalarMatrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j)
            if (i == j ? !at(i, j).is_one() : !at(i, j).is_zero()) return false;
    return true;
}

double ScalarMatrix::density() const {
    if (a_.empty()) return 0.0;
    size_t nnz = 0;
    for (const Scalar& s : a_)
        if (!s.is_zero()) ++nnz;
    return double(nnz) / double(a_.size());
}

namespace {

using SparseRow = std::vector<std::pair<size_t, Scalar>>;

SparseRow to_sparse(const ScalarMatrix& m, size_t row) {
    SparseRow r;
    for (size_t j = 0; j < m.cols(); ++j)
        if (!m.at(row, j).is_zero()) r.emplace_back(j, m.at(row, j));
    return r;
}

const Scalar* find_col(const SparseRow& r, size_t col) {
    auto it = std::lower_bound(r.begin(), r.end(), col,
                               [](const auto& e, size_t c) { return e.first < c; });
    if (it != r.end() && it->first == col) return &it->second;
    return nullptr;
}

// dst -= c * src, sparse merge
void axpy(SparseRow& dst, const Scalar& c, const SparseRow& src) {
    SparseRow out;
    out.reserve(dst.size() + src.size());
    auto a = dst.begin();
    auto b = src.begin();
    while (a != dst.end() || b != src.end()) {
        if (b == src.end() || (a != dst.end() && a->first < b->first)) {
            out.push_back(std::move(*a++));
        } else if (a == dst.end() || b->first < a->first) {
            out.emplace_back(b->first, -(c * b->second));
            ++b;
        } else {
            Scalar v = a->second - c * b->second;
            if (!v.is_zero()) out.emplace_back(a->first, std::move(v));
            ++a;
            ++b;
        }
    }
    dst = std::move(out);
}

void scale_row(SparseRow& r, const Scalar& c) {
    for (auto& e : r) e.second *= c;
}

}  // namespace

RrefSolver::RrefSolver(const ScalarMatrix& m)
    : rows_(m.rows()), cols_(m.cols()), field_(m.field()) {
    std::vector<SparseRow> rows(rows_);
    std::vector<SparseRow> tr(rows_);
    for (size_t i = 0; i < rows_; ++i) {
        rows[i] = to_sparse(m, i);
        tr[i].emplace_back(i, Scalar::one(field_));
    }
    std::vector<bool> is_pivot(rows_, false);
    std::vector<size_t> pivot_rows;

    for (size_t col = 0; col < cols_; ++col) {
        size_t best = rows_;
        for (size_t i = 0; i < rows_; ++i) {
            if (is_pivot[i] || rows[i].empty() || rows[i].front().first != col) continue;
            if (best == rows_ || rows[i].size() < rows[best].size()) best = i;
        }
        if (best == rows_) continue;
        Scalar lead_inv = rows[best].front().second.inv();
        scale_row(rows[best], lead_inv);
        scale_row(tr[best], lead_inv);
        for (size_t i = 0; i < rows_; ++i) {
            if (i == best) continue;
            const Scalar* c = find_col(rows[i], col);
            if (!c) continue;
            Scalar cc = *c;
            axpy(rows[i], cc, rows[best]);
            axpy(tr[i], cc, tr[best]);
        }
        is_pivot[best] = true;
        pivot_rows.push_back(best);
        pivots_.push_back(col);
    }

    for (size_t idx : pivot_rows) {
        reduced_.push_back(std::move(rows[idx]));
        transform_.push_back(std::move(tr[idx]));
    }
    for (size_t i = 0; i < rows_; ++i)
        if (!is_pivot[i]) transform_.push_back(std::move(tr[i]));
}

std::optional<ScalarVec> RrefSolver::solve(std::span<const Scalar> b) const {
    return solve(b, Scalar::zero(field_));
}

std::optional<ScalarVec> RrefSolver::solve(std::span<const Scalar> b,
                                           const Scalar& free_val) const {
    if (b.size() != rows_) throw Error("solve: rhs length mismatch");
    auto dot = [&](const SparseRow& r) {
        Scalar s = Scalar::zero(field_);
        for (const auto& [j, v] : r)
            if (!b[j].is_zero()) s += v * b[j];
        return s;
    };
    for (size_t i = rank(); i < rows_; ++i)
        if (!dot(transform_[i]).is_zero()) return std::nullopt;

    ScalarVec x(cols_, free_val);
    for (size_t i = 0; i < rank(); ++i) x[pivots_[i]] = dot(transform_[i]);
    if (!free_val.is_zero()) {
        for (size_t i = 0; i < rank(); ++i) {
            Scalar adj = Scalar::zero(field_);
            for (const auto& [j, v] : reduced_[i])
                if (j != pivots_[i]) adj += v;
            x[pivots_[i]] -= adj * free_val;
        }
    }
    return x;
}

std::vector<ScalarVec> RrefSolver::kernel() const {
    std::vector<bool> piv(cols_, false);
    for (size_t p : pivots_) piv[p] = true;
    std::vector<ScalarVec> basis;
    for (size_t f = 0; f < cols_; ++f) {
        if (piv[f]) continue;
        ScalarVec v(cols_, Scalar::zero(field_));
        v[f] = Scalar::one(field_);
        for (size_t i = 0; i < rank(); ++i) {
            const Scalar* c = find_col(reduced_[i], f);
            if (c) v[pivots_[i]] = -*c;
        }
        for (auto& e : v) {
            if (e.is_zero()) continue;
            if (!e.is_one()) {
                Scalar s = e.inv();
                for (auto& x : v) x *= s;
            }
            break;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

ScalarMatrix RrefSolver::reduced_matrix() const {
    ScalarMatrix out(rows_, cols_, field_);
    for (size_t i = 0; i < reduced_.size(); ++i)
        for (const auto& [j, v] : reduced_[i]) out.at(i, j) = v;
    return out;
}

RrefResult rref(const ScalarMatrix& m) {
    RrefSolver s(m);
    return RrefResult{s.rank(), s.pivots(), s.reduced_matrix()};
}

std::vector<ScalarVec> kernel_basis(const ScalarMatrix& m) {
    return RrefSolver(m).kernel();
}

std::optional<SolveResult> solve(const ScalarMatrix& m, std::span<const Scalar> b) {
    if (b.size() != m.rows()) throw Error("solve: dimension mismatch");
    RrefSolver s(m);
    auto x = s.solve(b);
    if (!x) return std::nullopt;
    return SolveResult{std::move(*x), s.kernel()};
}

std::optional<ScalarMatrix> invert(const ScalarMatrix& m) {
    if (m.rows() != m.cols()) throw Error("invert: matrix not square");
    size_t n = m.rows();
    RrefSolver s(m);
    if (s.rank() != n) return std::nullopt;
    ScalarMatrix inv(n, n, m.field());
    ScalarVec e(n, Scalar::zero(m.field()));
    for (size_t j = 0; j < n; ++j) {
        e[j] = Scalar::one(m.field());
        auto col = s.solve(e);
        e[j] = Scalar::zero(m.field());
        for (size_t i = 0; i < n; ++i) inv.at(i, j) = (*col)[i];
    }
    return inv;
}

}  // namespace gforge

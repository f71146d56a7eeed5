#pragma once

#include <optional>
#include <span>
#include <vector>

#include "gforge/scalar.hpp"

namespace gforge {

using ScalarVec = std::vector<Scalar>;

class ScalarMatrix {
public:
    ScalarMatrix() = default;
    ScalarMatrix(size_t rows, size_t cols, Field f = Field{})
        : rows_(rows), cols_(cols), field_(f), a_(rows * cols, Scalar::zero(f)) {}

    static ScalarMatrix identity(size_t n, Field f = Field{});

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    Field field() const { return field_; }

    const Scalar& at(size_t i, size_t j) const { return a_[i * cols_ + j]; }
    Scalar& at(size_t i, size_t j) { return a_[i * cols_ + j]; }

    ScalarVec apply(std::span<const Scalar> v) const;          // this * v
    ScalarMatrix operator*(const ScalarMatrix& o) const;
    ScalarMatrix operator+(const ScalarMatrix& o) const;
    bool operator==(const ScalarMatrix& o) const;
    bool is_identity() const;
    double density() const;

private:
    size_t rows_ = 0, cols_ = 0;
    Field field_;
    std::vector<Scalar> a_;
};

struct RrefResult {
    size_t rank = 0;
    std::vector<size_t> pivots;  // pivot column per pivot row, ascending
    ScalarMatrix reduced;
};

struct SolveResult {
    ScalarVec particular;
    std::vector<ScalarVec> nullspace;
};

RrefResult rref(const ScalarMatrix& m);

// Basis of {v : m v = 0}; each vector scaled so its first nonzero entry is 1.
std::vector<ScalarVec> kernel_basis(const ScalarMatrix& m);

std::optional<SolveResult> solve(const ScalarMatrix& m, std::span<const Scalar> b);

std::optional<ScalarMatrix> invert(const ScalarMatrix& m);

// Reusable echelon factorization: keeps the reduced rows together with the
// transform U (U * m = reduced), so many right-hand sides can be solved
// against one elimination. Row elimination runs on sparse rows; matrices at
// or below 25% density skip the dense staging copy entirely.
class RrefSolver {
public:
    explicit RrefSolver(const ScalarMatrix& m);

    size_t rank() const { return pivots_.size(); }
    const std::vector<size_t>& pivots() const { return pivots_; }

    // Particular solution of m x = b with every free variable set to free_val.
    std::optional<ScalarVec> solve(std::span<const Scalar> b, const Scalar& free_val) const;
    std::optional<ScalarVec> solve(std::span<const Scalar> b) const;

    std::vector<ScalarVec> kernel() const;

    // The RREF rows (pivot rows first, zero rows at the bottom), densified.
    ScalarMatrix reduced_matrix() const;

private:
    using SparseRow = std::vector<std::pair<size_t, Scalar>>;
    size_t rows_, cols_;
    Field field_;
    std::vector<size_t> pivots_;
    std::vector<SparseRow> reduced_;    // rank many rows, unit pivots
    std::vector<SparseRow> transform_;  // rows_ many rows of U
};

}  // namespace gforge

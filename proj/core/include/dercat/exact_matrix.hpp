#ifndef DERCAT_EXACT_MATRIX_HPP
#define DERCAT_EXACT_MATRIX_HPP

#include "dercat/scalar.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dercat {

using Vector = std::vector<Scalar>;

/// Dense row-major matrix over the active field.
class ExactMatrix {
public:
    ExactMatrix() = default;
    ExactMatrix(std::size_t rows, std::size_t cols);
    static ExactMatrix identity(std::size_t n);
    static ExactMatrix from_rows(const std::vector<std::vector<Scalar>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Vector column(std::size_t c) const;
    ExactMatrix transpose() const;
    bool is_zero() const;

    friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
    friend Vector operator*(const ExactMatrix& a, std::span<const Scalar> v);
    friend bool operator==(const ExactMatrix&, const ExactMatrix&) = default;

    std::string to_string() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

struct RankKernel {
    std::size_t rank = 0;
    std::vector<Vector> kernel;  // basis of {x : M x = 0}
};

/// Exact rank and right-kernel basis by Gaussian elimination with the first
/// nonzero entry as pivot (deterministic). The kernel basis is the standard
/// one read off the reduced row echelon form: one vector per free column.
RankKernel rank_kernel(const ExactMatrix& m);

/// Rank only; same elimination without the back substitution.
std::size_t rank(const ExactMatrix& m);

/// Reusable solver for M x = y. Factors once; each solve returns the
/// particular solution with zero free variables, or nullopt if y is not in
/// the column space.
class LinearSolver {
public:
    explicit LinearSolver(const ExactMatrix& m);

    std::size_t rank() const { return pivot_cols_.size(); }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::optional<Vector> solve(std::span<const Scalar> y) const;

private:
    struct SparseRow {
        std::vector<std::size_t> idx;
        std::vector<Scalar> val;
        Scalar dot(std::span<const Scalar> y) const;
    };

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::size_t> pivot_cols_;
    std::vector<SparseRow> transform_;  // first rank() rows give pivot values,
                                        // the rest must vanish on the image
};

}  // namespace dercat

#endif  // DERCAT_EXACT_MATRIX_HPP

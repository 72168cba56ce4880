#include "dercat/exact_matrix.hpp"

#include "dercat/errors.hpp"

#include <sstream>
#include <utility>

namespace dercat {

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

ExactMatrix ExactMatrix::identity(std::size_t n) {
    ExactMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
    return m;
}

ExactMatrix ExactMatrix::from_rows(const std::vector<std::vector<Scalar>>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    ExactMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw std::invalid_argument("ragged matrix rows");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

Vector ExactMatrix::column(std::size_t c) const {
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

ExactMatrix ExactMatrix::transpose() const {
    ExactMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    }
    return t;
}

bool ExactMatrix::is_zero() const {
    for (const auto& s : data_) {
        if (!s.is_zero()) return false;
    }
    return true;
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
    ExactMatrix p(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Scalar& aik = a(i, k);
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) {
                if (!b(k, j).is_zero()) p(i, j) += aik * b(k, j);
            }
        }
    }
    return p;
}

Vector operator*(const ExactMatrix& a, std::span<const Scalar> v) {
    if (a.cols_ != v.size()) throw std::invalid_argument("matrix-vector shape mismatch");
    Vector out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            if (!a(i, k).is_zero() && !v[k].is_zero()) out[i] += a(i, k) * v[k];
        }
    }
    return out;
}

std::string ExactMatrix::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t r = 0; r < rows_; ++r) {
        os << (r ? ", [" : "[");
        for (std::size_t c = 0; c < cols_; ++c) os << (c ? ", " : "") << (*this)(r, c);
        os << ']';
    }
    os << ']';
    return os.str();
}

namespace {

// Row operations on a row-major buffer. `companion`, when non-null, receives
// the same row operations (used to accumulate the transformation matrix).
class Eliminator {
public:
    Eliminator(ExactMatrix& a, ExactMatrix* companion) : a_(a), e_(companion) {}

    /// Reduces to row echelon form (full RREF when `reduce_above`).
    /// Returns pivot columns, one per pivot row in order.
    std::vector<std::size_t> run(bool reduce_above) {
        std::vector<std::size_t> pivots;
        std::size_t row = 0;
        for (std::size_t col = 0; col < a_.cols() && row < a_.rows(); ++col) {
            std::size_t p = row;
            while (p < a_.rows() && a_(p, col).is_zero()) ++p;
            if (p == a_.rows()) continue;
            swap_rows(p, row);
            Scalar inv = a_(row, col).inverse();
            scale_row(row, inv, col);
            const std::size_t first = reduce_above ? 0 : row + 1;
            for (std::size_t r = first; r < a_.rows(); ++r) {
                if (r == row || a_(r, col).is_zero()) continue;
                Scalar factor = a_(r, col);
                subtract_row(r, row, factor, col);
            }
            pivots.push_back(col);
            ++row;
        }
        return pivots;
    }

private:
    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < a_.cols(); ++c) std::swap(a_(i, c), a_(j, c));
        if (e_) {
            for (std::size_t c = 0; c < e_->cols(); ++c) std::swap((*e_)(i, c), (*e_)(j, c));
        }
    }

    void scale_row(std::size_t r, const Scalar& s, std::size_t from_col) {
        if (s.is_one()) return;
        for (std::size_t c = from_col; c < a_.cols(); ++c) {
            if (!a_(r, c).is_zero()) a_(r, c) *= s;
        }
        if (e_) {
            for (std::size_t c = 0; c < e_->cols(); ++c) {
                if (!(*e_)(r, c).is_zero()) (*e_)(r, c) *= s;
            }
        }
    }

    // row_r -= factor * row_src
    void subtract_row(std::size_t r, std::size_t src, const Scalar& factor, std::size_t from_col) {
        for (std::size_t c = from_col; c < a_.cols(); ++c) {
            if (!a_(src, c).is_zero()) a_(r, c) -= factor * a_(src, c);
        }
        if (e_) {
            for (std::size_t c = 0; c < e_->cols(); ++c) {
                if (!(*e_)(src, c).is_zero()) (*e_)(r, c) -= factor * (*e_)(src, c);
            }
        }
    }

    ExactMatrix& a_;
    ExactMatrix* e_;
};

}  // namespace

RankKernel rank_kernel(const ExactMatrix& m) {
    ExactMatrix a = m;
    auto pivots = Eliminator(a, nullptr).run(true);
    RankKernel out;
    out.rank = pivots.size();
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        Vector x(m.cols());
        x[f] = Scalar(1);
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            if (!a(r, f).is_zero()) x[pivots[r]] = -a(r, f);
        }
        out.kernel.push_back(std::move(x));
    }
    return out;
}

std::size_t rank(const ExactMatrix& m) {
    ExactMatrix a = m;
    return Eliminator(a, nullptr).run(false).size();
}

Scalar LinearSolver::SparseRow::dot(std::span<const Scalar> y) const {
    Scalar s(0);
    for (std::size_t k = 0; k < idx.size(); ++k) {
        const Scalar& yk = y[idx[k]];
        if (!yk.is_zero()) s += val[k] * yk;
    }
    return s;
}

LinearSolver::LinearSolver(const ExactMatrix& m) : rows_(m.rows()), cols_(m.cols()) {
    ExactMatrix a = m;
    ExactMatrix e = ExactMatrix::identity(m.rows());
    pivot_cols_ = Eliminator(a, &e).run(true);
    // Rows beyond the rank span the left kernel: y is in the image iff they vanish on y.
    transform_.resize(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < rows_; ++c) {
            if (!e(r, c).is_zero()) {
                transform_[r].idx.push_back(c);
                transform_[r].val.push_back(e(r, c));
            }
        }
    }
}

std::optional<Vector> LinearSolver::solve(std::span<const Scalar> y) const {
    if (y.size() != rows_) throw std::invalid_argument("right-hand side has wrong length");
    for (std::size_t r = pivot_cols_.size(); r < rows_; ++r) {
        if (!transform_[r].dot(y).is_zero()) return std::nullopt;
    }
    Vector x(cols_);
    for (std::size_t r = 0; r < pivot_cols_.size(); ++r) x[pivot_cols_[r]] = transform_[r].dot(y);
    return x;
}

}  // namespace dercat

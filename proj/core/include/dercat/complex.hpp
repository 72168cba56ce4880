#ifndef DERCAT_COMPLEX_HPP
#define DERCAT_COMPLEX_HPP

#include "dercat/homog_poly.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dercat {

/// Formal direct sum O(d_0) + O(d_1) + ... ; the order indexes matrix rows
/// and columns. Empty means the zero object.
using FreeTerm = std::vector<int>;

/// Matrix of homogeneous polynomials representing a map between free terms.
/// Entry (r, c) maps source summand c to target summand r, so matrices act
/// on column vectors and compose as B * A.
class PolyMatrix {
public:
    PolyMatrix() = default;
    PolyMatrix(int nvars, std::size_t rows, std::size_t cols);
    /// Zero map source -> target with each entry placed in its proper degree.
    static PolyMatrix zero(int nvars, const FreeTerm& target, const FreeTerm& source);
    static PolyMatrix identity(int nvars, const FreeTerm& term);

    int num_variables() const { return nvars_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    HomogPoly& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const HomogPoly& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool is_zero() const;
    PolyMatrix transpose() const;
    /// Copy without the listed rows and columns (indices need not be sorted).
    PolyMatrix without(const std::vector<std::size_t>& drop_rows, const std::vector<std::size_t>& drop_cols) const;

    PolyMatrix& operator*=(const Scalar& s);
    friend PolyMatrix operator*(PolyMatrix m, const Scalar& s) { return m *= s; }
    friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
    friend PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b);
    friend PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b);
    friend bool operator==(const PolyMatrix& a, const PolyMatrix& b);

private:
    int nvars_ = 1;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<HomogPoly> data_;
};

/// Bounded complex of free terms on P^n with differential d^i: C^i -> C^{i+1}.
///
/// Conventions (all constructors below keep them):
///   * differentials raise degree;
///   * entry (r, c) of d^i has degree term(i+1)[r] - term(i)[c]; entries that
///     would need negative degree are zero;
///   * an absent differential is zero.
/// The constructor only normalizes storage (drops empty terms and all-zero
/// differentials); use validate() to check the invariants.
class LineBundleComplex {
public:
    explicit LineBundleComplex(int n);
    LineBundleComplex(int n, std::map<int, FreeTerm> terms, std::map<int, PolyMatrix> diffs = {});

    /// O(twist) placed in cohomological degree `degree`.
    static LineBundleComplex line_bundle(int n, int twist, int degree = 0);

    int ambient_dim() const { return n_; }
    int num_variables() const { return n_ + 1; }

    const FreeTerm& term(int i) const;
    /// Stored differential, or the properly shaped zero map.
    PolyMatrix differential(int i) const;
    const std::map<int, FreeTerm>& terms() const { return terms_; }
    const std::map<int, PolyMatrix>& differentials() const { return diffs_; }

    bool is_empty() const { return terms_.empty(); }
    /// [min, max] cohomological degrees carrying nonzero terms.
    std::optional<std::pair<int, int>> support() const;
    std::optional<std::pair<int, int>> twist_range() const;
    std::size_t total_rank() const;

    friend bool operator==(const LineBundleComplex& a, const LineBundleComplex& b);

    std::string to_string() const;

private:
    void normalize();

    int n_;
    std::map<int, FreeTerm> terms_;
    std::map<int, PolyMatrix> diffs_;
};

/// Degreewise map f^i: A^i -> B^i.
class ChainMap {
public:
    ChainMap(LineBundleComplex source, LineBundleComplex target, std::map<int, PolyMatrix> components = {});

    static ChainMap zero(const LineBundleComplex& source, const LineBundleComplex& target);
    static ChainMap identity(const LineBundleComplex& c);

    const LineBundleComplex& source() const { return source_; }
    const LineBundleComplex& target() const { return target_; }
    /// Stored component, or the properly shaped zero map.
    PolyMatrix component(int i) const;
    const std::map<int, PolyMatrix>& components() const { return components_; }

private:
    LineBundleComplex source_;
    LineBundleComplex target_;
    std::map<int, PolyMatrix> components_;
};

struct ValidationReport {
    bool ok = true;
    std::string message;
    std::optional<int> degree;
    std::optional<std::pair<std::size_t, std::size_t>> entry;

    explicit operator bool() const { return ok; }
};

/// Checks shapes, entry degrees and d^{i+1} d^i = 0. Reports the first
/// violation (lowest degree, then row-major entry); never throws.
ValidationReport validate(const LineBundleComplex& c);
/// Checks both ends, component shapes and degrees, and f d_A = d_B f.
ValidationReport validate(const ChainMap& f);

/// Throws ValidationError carrying the report message.
void require_valid(const LineBundleComplex& c, const std::string& what = "complex");
void require_valid(const ChainMap& f, const std::string& what = "chain map");

/// term'(i) = term(i+k), d'^i = (-1)^k d^{i+k}.
LineBundleComplex shift(const LineBundleComplex& c, int k);

/// C^i = A^{i+1} + B^i with differential [[-d_A^{i+1}, 0], [f^{i+1}, d_B^i]].
/// Throws ValidationError if f is not a chain map.
LineBundleComplex cone(const ChainMap& f);

/// Degreewise concatenation with block-diagonal differentials.
LineBundleComplex direct_sum(const LineBundleComplex& a, const LineBundleComplex& b);

/// Total complex of A (x) B: degree k collects A^i (x) B^j, i + j = k, ordered
/// by i and then row-major in (a-summand, b-summand). Differential
/// d(x (x) y) = d_A x (x) y + (-1)^i x (x) d_B y.
LineBundleComplex tensor(const LineBundleComplex& a, const LineBundleComplex& b);

/// Term -i dualized (O(d) -> O(-d)) in degree i; d'^i = (d^{-i-1})^T.
/// Exact involution: dual(dual(C)) == C.
LineBundleComplex dual(const LineBundleComplex& c);

/// C (x) O(d): every twist raised by d, differentials unchanged.
LineBundleComplex twist(const LineBundleComplex& c, int d);

/// Cancels contractible summands [O(a) --u--> O(a)] (u a nonzero constant)
/// by Gaussian elimination until no such entry remains. Homotopy equivalent
/// to the input. Pivot order: lowest degree first, then row-major.
LineBundleComplex prune(const LineBundleComplex& c);

}  // namespace dercat

#endif  // DERCAT_COMPLEX_HPP

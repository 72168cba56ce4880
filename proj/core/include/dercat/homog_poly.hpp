#ifndef DERCAT_HOMOG_POLY_HPP
#define DERCAT_HOMOG_POLY_HPP

#include "dercat/scalar.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace dercat {

inline constexpr int kMaxVariables = 16;

/// Exponent vector x0^e0 * ... * x_{k-1}^e_{k-1}. Unused slots are zero.
class Monomial {
public:
    Monomial() { exps_.fill(0); }
    static Monomial variable(int i);

    int operator[](int i) const { return exps_[static_cast<std::size_t>(i)]; }
    void set(int i, int e);
    int total_degree() const;

    Monomial operator*(const Monomial& o) const;
    /// True if every exponent of this is >= the matching exponent of o.
    bool divisible_by(const Monomial& o) const;
    Monomial divided_by(const Monomial& o) const;

    friend bool operator==(const Monomial&, const Monomial&) = default;

    std::size_t hash() const;
    std::string to_string(int nvars) const;

private:
    std::array<std::uint8_t, kMaxVariables> exps_{};
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const;
};

/// Graded reverse-lexicographic order, descending. For monomials of equal
/// degree, a precedes b when the last nonzero entry of a - b is negative,
/// so x0 > x1 > ... > xn and x0^2 > x0*x1 > x1^2 > x0*x2 > x1*x2 > x2^2.
struct GrevlexBefore {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

/// All monomials of degree d in n+1 variables, in GrevlexBefore order.
/// Empty when d < 0; size C(n+d, n) otherwise.
std::vector<Monomial> monomial_basis(int n, int d);

/// Cached basis with reverse lookup. Thread-safe.
class MonomialBasis {
public:
    static std::shared_ptr<const MonomialBasis> get(int nvars, int degree);

    int num_variables() const { return nvars_; }
    int degree() const { return degree_; }
    std::size_t size() const { return monomials_.size(); }
    const Monomial& operator[](std::size_t i) const { return monomials_[i]; }
    const std::vector<Monomial>& monomials() const { return monomials_; }
    /// Position of m in the basis; m must have the basis degree.
    std::size_t index_of(const Monomial& m) const;

    MonomialBasis(int nvars, int degree);

private:
    int nvars_;
    int degree_;
    std::vector<Monomial> monomials_;
    std::unordered_map<Monomial, std::size_t, MonomialHash> index_;
};

/// Homogeneous polynomial of fixed degree. The zero polynomial exists at
/// every degree, including negative ones (the zero map O(a) -> O(b), b < a).
class HomogPoly {
public:
    using Term = std::pair<Monomial, Scalar>;

    HomogPoly(int nvars, int degree);
    static HomogPoly constant(int nvars, const Scalar& c);
    static HomogPoly variable(int nvars, int i);
    static HomogPoly term(int nvars, const Monomial& m, const Scalar& c);
    /// Coefficients listed against MonomialBasis::get(nvars, degree).
    static HomogPoly from_coefficients(int nvars, int degree, std::span<const Scalar> coeffs);

    /// Parses text like "3/2*x0^2*x1 - x1^3 + 2". The result must be
    /// homogeneous; when `degree` is given the result must have that degree
    /// (needed to place the zero polynomial).
    static HomogPoly parse(std::string_view text, int nvars, std::optional<int> degree = std::nullopt);

    int num_variables() const { return nvars_; }
    int degree() const { return degree_; }
    bool is_zero() const { return terms_.empty(); }
    const std::vector<Term>& terms() const { return terms_; }
    Scalar coefficient(const Monomial& m) const;
    /// Degree-0 value; zero for polynomials of nonzero degree.
    Scalar constant_value() const;

    /// Dense coefficient vector against MonomialBasis::get(nvars, degree).
    std::vector<Scalar> coefficients() const;

    HomogPoly& operator+=(const HomogPoly& o);
    HomogPoly& operator-=(const HomogPoly& o);
    HomogPoly& operator*=(const Scalar& c);
    friend HomogPoly operator+(HomogPoly a, const HomogPoly& b) { return a += b; }
    friend HomogPoly operator-(HomogPoly a, const HomogPoly& b) { return a -= b; }
    friend HomogPoly operator*(HomogPoly a, const Scalar& c) { return a *= c; }
    friend HomogPoly operator*(const Scalar& c, HomogPoly a) { return a *= c; }
    friend HomogPoly operator*(const HomogPoly& a, const HomogPoly& b);
    HomogPoly operator-() const;

    /// Value at a point; coordinates must number num_variables().
    Scalar evaluate(std::span<const Scalar> point) const;

    friend bool operator==(const HomogPoly& a, const HomogPoly& b);

    std::string to_string() const;

private:
    void add_scaled(const HomogPoly& o, const Scalar& c);

    int nvars_;
    int degree_;
    std::vector<Term> terms_;  // GrevlexBefore order, nonzero coefficients
};

class ExactMatrix;

/// Matrix of "multiply by f" from degree d to degree d + deg f, against the
/// monomial bases of both degrees. Zero-sized when a side has negative degree.
ExactMatrix multiplication_matrix(const HomogPoly& f, int d);

}  // namespace dercat

#endif  // DERCAT_HOMOG_POLY_HPP

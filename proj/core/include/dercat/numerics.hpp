#ifndef DERCAT_NUMERICS_HPP
#define DERCAT_NUMERICS_HPP

#include "dercat/complex.hpp"
#include "dercat/window.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace dercat {

// Every routine here computes over the rationals regardless of the field
// selected for Ext computations.

/// Class sum_k c_k h^k in Q[h]/(h^{n+1}), h the hyperplane class of P^n.
class ChernPolynomial {
public:
    explicit ChernPolynomial(int n);
    ChernPolynomial(int n, std::vector<Scalar> coeffs);  // missing top coefficients are zero
    static ChernPolynomial one(int n);
    /// ch(O(d)) = exp(d h), truncated.
    static ChernPolynomial exponential(int n, int d);

    int dim() const { return n_; }
    const Scalar& operator[](int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }
    const std::vector<Scalar>& coefficients() const { return coeffs_; }

    /// Negates odd-degree components (the class of the dual).
    ChernPolynomial dual() const;

    ChernPolynomial& operator+=(const ChernPolynomial& o);
    ChernPolynomial& operator-=(const ChernPolynomial& o);
    friend ChernPolynomial operator+(ChernPolynomial a, const ChernPolynomial& b) { return a += b; }
    friend ChernPolynomial operator-(ChernPolynomial a, const ChernPolynomial& b) { return a -= b; }
    friend ChernPolynomial operator*(const ChernPolynomial& a, const ChernPolynomial& b);
    friend ChernPolynomial operator*(const Scalar& s, ChernPolynomial a);
    friend bool operator==(const ChernPolynomial&, const ChernPolynomial&) = default;

    /// "1 + h + 1/2*h^2"
    std::string to_string() const;

private:
    void check_same(const ChernPolynomial& o) const;
    int n_;
    std::vector<Scalar> coeffs_;
};

/// sum_i (-1)^i sum_{O(d) in C^i} exp(d h).
ChernPolynomial chern_character(const LineBundleComplex& c);

/// (h / (1 - e^{-h}))^{n+1}, truncated.
ChernPolynomial todd_class(int n);

/// <v, w> = coefficient of h^n in v^dual * w * td.
Scalar mukai_pairing(const ChernPolynomial& v, const ChernPolynomial& w);

/// chi(A, B) = <ch A, ch B>. Throws InternalError if not an integer.
Scalar euler_pairing_hrr(const LineBundleComplex& a, const LineBundleComplex& b);

/// chi(A, B) = sum_k (-1)^k dim Ext^k(A, B).
Scalar euler_pairing_ext(const LineBundleComplex& a, const LineBundleComplex& b, const WindowOptions& opts = {});

/// Sum over (i, k) of (-1)^(i+k) m[i][k] ch(O(-i)), the K-class of the
/// Beilinson monad assembled from the multiplicities.
ChernPolynomial beilinson_k_class(const BeilinsonTable& table);

// ------------------------------------------------------------- Hochschild

/// h[p][q]; for homology mode h[p][q] = dim H^p(Omega^q), for
/// cohomology-polyvector mode h[p][q] = dim H^p(L^q T).
class HodgeTable {
public:
    explicit HodgeTable(std::vector<std::vector<long>> grid);
    static HodgeTable projective_space(int n);
    static HodgeTable curve(int genus);

    int dim() const { return static_cast<int>(grid_.size()) - 1; }
    long operator()(int p, int q) const { return grid_[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)]; }
    const std::vector<std::vector<long>>& grid() const { return grid_; }

private:
    std::vector<std::vector<long>> grid_;
};

enum class HkrMode { homology, cohomology };

/// homology: HH_i = sum_{q-p=i} h[p][q], i in [-dim, dim];
/// cohomology: HH^i = sum_{p+q=i} h[p][q], i in [0, 2 dim]. Zeros kept.
std::map<int, long> hkr_aggregate(const HodgeTable& table, HkrMode mode);

struct HochschildTables {
    std::map<int, long> cohomology;  // HH^i, i in [0, 2 dim]
    std::map<int, long> homology;    // HH_i, i in [-dim, dim]

    friend bool operator==(const HochschildTables&, const HochschildTables&) = default;
};

/// Hochschild (co)homology of P^n through HKR, with every sheaf cohomology
/// group computed by the window engine. Throws ResourceError for n > max_n.
HochschildTables hh_pn(int n, int max_n = 3, const WindowOptions& opts = {});

/// Closed form for a smooth projective curve of genus g >= 0.
HochschildTables hh_curve(int genus);

// ------------------------------------------------- Fourier-Mukai lattices

/// (rank, degree) of an object on an elliptic curve.
struct LatticeClass {
    long rank = 0;
    long degree = 0;
    friend bool operator==(const LatticeClass&, const LatticeClass&) = default;
};

/// Poincare-bundle transform on K-classes: (r, d) -> (d, -r).
LatticeClass fm_elliptic_apply(const LatticeClass& v);

/// chi((r, d), (r', d')) = r d' - d r'.
long elliptic_euler_form(const LatticeClass& v, const LatticeClass& w);

/// Class sum a[i][j] h1^i h2^j on P^m x P^n.
class CorrespondenceClass {
public:
    CorrespondenceClass(int m, int n);
    CorrespondenceClass(int m, int n, std::vector<std::vector<Scalar>> grid);
    /// sum_i h1^i h2^{n-i} on P^n x P^n.
    static CorrespondenceClass diagonal(int n);

    int source_dim() const { return m_; }
    int target_dim() const { return n_; }
    const Scalar& operator()(int i, int j) const;
    Scalar& operator()(int i, int j);

    friend bool operator==(const CorrespondenceClass&, const CorrespondenceClass&) = default;

private:
    int m_;
    int n_;
    std::vector<std::vector<Scalar>> grid_;
};

/// pi_2*(pi_1^* a . K): the h1^m coefficient of the product.
ChernPolynomial corr_apply(const CorrespondenceClass& k, const ChernPolynomial& a);

/// pi_13*(pi_12^* K1 . pi_23^* K2): extracts the top class of the middle factor.
CorrespondenceClass corr_compose(const CorrespondenceClass& k1, const CorrespondenceClass& k2);

}  // namespace dercat

#endif  // DERCAT_NUMERICS_HPP

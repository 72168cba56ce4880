#ifndef DERCAT_EXT_HPP
#define DERCAT_EXT_HPP

#include "dercat/complex.hpp"
#include "dercat/exact_matrix.hpp"
#include "dercat/window.hpp"

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dercat {

/// Degree -> dimension, finite support; zero entries are not stored.
class ExtTable {
public:
    ExtTable() = default;
    explicit ExtTable(const std::map<int, std::size_t>& dims);
    ExtTable(std::initializer_list<std::pair<const int, std::size_t>> dims) : ExtTable(std::map<int, std::size_t>(dims)) {}

    std::size_t operator[](int k) const;
    const std::map<int, std::size_t>& entries() const { return dims_; }
    bool is_zero() const { return dims_.empty(); }
    std::optional<int> min_degree() const;
    std::optional<int> max_degree() const;
    /// result[i] = (*this)[i + k]
    ExtTable shifted(int k) const;
    long euler_characteristic() const;

    friend bool operator==(const ExtTable&, const ExtTable&) = default;
    friend ExtTable operator+(const ExtTable& a, const ExtTable& b);

    /// "{0: 1, 1: 2}"; "{}" when zero.
    std::string to_string() const;

private:
    std::map<int, std::size_t> dims_;
};

/// Graded Hom complex Hom^k = sum_j Hom(A^j, B^{j+k}), each Hom(O(a), O(b))
/// with basis the degree-(b-a) monomials, differential
/// D(phi) = d_B phi - (-1)^k phi d_A. Its cohomology is Ext only when every
/// twist difference has no higher cohomology, e.g. both sides in the window.
class HomComplex {
public:
    HomComplex(const LineBundleComplex& a, const LineBundleComplex& b);

    int min_degree() const { return kmin_; }
    int max_degree() const { return kmax_; }
    std::size_t dimension(int k) const;
    ExactMatrix differential(int k) const;  // Hom^k -> Hom^{k+1}
    ExtTable cohomology() const;

    /// Basis of degree-0 cycles, i.e. the chain maps A -> B.
    std::vector<Vector> chain_map_basis() const;
    ChainMap to_chain_map(const Vector& coords) const;

private:
    struct Block {
        int source_degree;  // j: the block is Hom(A^j, B^{j+k})
        std::size_t offset;
        // per (r, c): start offset and monomial degree, row-major over (r, c)
        std::vector<std::size_t> entry_offset;
        std::vector<int> entry_degree;
        std::size_t rows, cols;
    };
    const std::vector<Block>& blocks(int k) const;
    const Block* find_block(int k, int j) const;

    LineBundleComplex a_;
    LineBundleComplex b_;
    int kmin_ = 0;
    int kmax_ = -1;
    std::map<int, std::vector<Block>> blocks_;
    std::map<int, std::size_t> dims_;
};

/// Ext between complexes whose twists already lie in [-n, 0]; no pruning or
/// rewriting. Throws ValidationError outside the window.
ExtTable ext_table_in_window(const LineBundleComplex& a, const LineBundleComplex& b);

/// dim Ext^k(A, B) for all k; both inputs are first reduced to the window.
ExtTable ext_table(const LineBundleComplex& a, const LineBundleComplex& b, const WindowOptions& opts = {});

/// Hypercohomology H^k(P^n, C) = Ext^k(O, C).
ExtTable sheaf_cohomology(const LineBundleComplex& c, const WindowOptions& opts = {});

/// S(C) = C (x) O(-n-1) [n].
LineBundleComplex serre_functor(const LineBundleComplex& c);

struct SerreDualityReport {
    bool holds = false;
    ExtTable ext_ab;       // Ext^k(A, B)
    ExtTable ext_b_sa;     // Ext^k(B, S A)
};

/// Compares Ext^k(A, B) against Ext^{-k}(B, S A) for every k.
SerreDualityReport serre_duality_check(const LineBundleComplex& a, const LineBundleComplex& b,
                                       const WindowOptions& opts = {});

/// Koszul complex on n independent linear forms: O(-m)^{C(n,m)} in degree -m.
/// Throws ValidationError for the wrong count, non-linear or dependent forms.
WindowComplex koszul_point(int n, const std::vector<HomogPoly>& forms);

/// n linear forms cutting out the point with the given homogeneous
/// coordinates (a kernel basis of the coordinate row).
std::vector<HomogPoly> point_forms(int n, const std::vector<Scalar>& coordinates);

/// Forms {x_j : j != k} cutting out the k-th coordinate point.
std::vector<HomogPoly> coordinate_point_forms(int n, int k);

enum class Verdict { yes, no, indeterminate };
std::string to_string(Verdict v);

struct PointCandidateReport {
    Verdict serre_fixed = Verdict::indeterminate;  // E ~ S(E)[-n]
    bool simple = false;                          // Hom(E, E) = k
    bool no_negative_self_ext = false;            // Ext^{<0}(E, E) = 0
    /// "exact" when an isomorphism was found (or ruled out by Hom = 0 or
    /// differing self-Ext tables), "dimension" when only the dimension
    /// comparison is available.
    std::string mode;
    bool self_ext_tables_agree = false;
    ExtTable self_ext;
    std::size_t candidates_tried = 0;
};

struct PointCheckOptions {
    WindowOptions window;
    std::size_t random_draws = 64;
    std::uint64_t seed = 0;
};

/// Point-object flags for c. Any complex is accepted; on P^n the canonical
/// class is antiample, which is where the flags characterize skyscrapers.
PointCandidateReport point_object_check(const LineBundleComplex& c, const PointCheckOptions& opts = {});

struct LineBundleCheckReport {
    struct Sample {
        ExtTable ext;  // Ext^*(C, O_x)
        bool pass = false;
        std::optional<int> degree;  // s with Ext = {s: 1}
    };
    std::vector<Sample> samples;
    bool pass = false;
    std::optional<int> common_degree;
};

/// For each sampled point x (given by its defining forms), checks that
/// Ext^*(C, O_x) is one-dimensional in a single degree s, the same for all.
LineBundleCheckReport line_bundle_object_check(const LineBundleComplex& c,
                                               const std::vector<std::vector<HomogPoly>>& sample,
                                               const WindowOptions& opts = {});

/// Coordinate points plus `random_points` seeded random points with small
/// integer coordinates.
std::vector<std::vector<HomogPoly>> default_point_sample(int n, std::size_t random_points, std::uint64_t seed);

/// i -> dim H^0(P^n, omega^i) for i in [from, to].
std::map<int, std::size_t> pluricanonical_dimensions(int n, int from, int to, const WindowOptions& opts = {});

}  // namespace dercat

#endif  // DERCAT_EXT_HPP

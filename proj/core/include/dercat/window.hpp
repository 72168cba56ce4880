#ifndef DERCAT_WINDOW_HPP
#define DERCAT_WINDOW_HPP

#include "dercat/complex.hpp"
#include "dercat/exact_matrix.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <vector>

namespace dercat {

struct WindowOptions {
    /// Abort with ResourceError once an intermediate complex has more
    /// summands than this.
    std::size_t max_terms = 20000;
};

/// A complex whose twists all lie in [-n, 0]. Between such twists the line
/// bundles have no higher cohomology, so graded Hom complexes compute Ext.
class WindowComplex {
public:
    /// Throws ValidationError if a twist falls outside [-n, 0].
    explicit WindowComplex(LineBundleComplex c);

    const LineBundleComplex& complex() const { return c_; }
    int ambient_dim() const { return c_.ambient_dim(); }

private:
    LineBundleComplex c_;
};

bool in_window(const LineBundleComplex& c);

/// Koszul complex on `forms` (k linear forms): degree top_degree - m carries
/// C(k, m) copies of O(top_twist - m), indexed by m-subsets in lexicographic
/// order, for m = 0..min(k, max_m). The differential sends e_I to
/// sum_p (-1)^p forms[I_p] e_{I \ I_p}.
LineBundleComplex koszul_complex(int n, const std::vector<HomogPoly>& forms, int top_twist, int top_degree,
                                 int max_m);

/// The coordinate forms x0..xn.
std::vector<HomogPoly> coordinate_forms(int n);

/// Exact twisted Koszul complex used to move a summand O(d) into the window.
///   lower: O(d-n-1) -> ... -> O(d-1)^{n+1} resolves O(d) (degrees -n..0)
///   raise: O(d+1)^{n+1} -> ... -> O(d+n+1) resolves O(d) (degrees 0..n)
/// Built for d = 0; shift twists by d to use. Exactness of the augmented
/// complex is verified once per (n, direction, field) by graded rank counts.
struct KoszulRewriteRule {
    enum class Direction { lower, raise };
    int n = 1;
    Direction direction = Direction::lower;
    LineBundleComplex augmented{1};    // the exact complex, O(0) itself in degree 0
    LineBundleComplex replacement{1};  // augmented without O(0), resolving it

    static std::shared_ptr<const KoszulRewriteRule> get(int n, Direction direction);
};

/// Quasi-isomorphic window representative. Pipeline: prune, then lower the
/// largest positive twist, then raise the most negative twist below -n,
/// pruning after each twist level. Checks validity, the twist bound and the
/// Chern character on the way out (InternalError on failure).
WindowComplex reduce_to_window(const LineBundleComplex& c, const WindowOptions& opts = {});

/// True iff Ext^*(O(-i), C) = 0 for i = 0..n.
bool is_zero_object(const WindowComplex& c);

/// f is a quasi-isomorphism iff its cone is zero. Both ends must be in the
/// window; throws ValidationError otherwise or if f is not a chain map.
bool is_quasi_iso(const ChainMap& f);

/// m[i][k] = dim H^k(P^n, C (x) Omega^i(i)), i = 0..n. Zero entries omitted.
struct BeilinsonTable {
    int n = 1;
    std::vector<std::map<int, std::size_t>> multiplicities;

    std::size_t at(int i, int k) const;
};

/// Right resolution [L^i V (x) O -> L^{i-1} V (x) O(1) -> ... -> O(i)] of
/// Omega^i(i) in degrees 0..i.
LineBundleComplex omega_resolution(int n, int i);

BeilinsonTable beilinson_multiplicities(const LineBundleComplex& c, const WindowOptions& opts = {});

namespace detail {

/// Replaces every summand of twist d (listed in `indices`, all at degree i)
/// by the lowering Koszul resolution, lifting the incoming differentials.
/// Requires no unit entries into those summands (prune first).
LineBundleComplex lower_summands(const LineBundleComplex& c, int degree, const std::vector<std::size_t>& indices);

}  // namespace detail

}  // namespace dercat

#endif  // DERCAT_WINDOW_HPP

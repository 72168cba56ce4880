#ifndef DERCAT_TESTS_ORACLE_HPP
#define DERCAT_TESTS_ORACLE_HPP

// Reference computations that share no code with the library: their own
// binomials, monomial enumeration, polynomial products and exact elimination
// over mpq_class. Slow and simple on purpose.

#include "dercat/complex.hpp"

#include <gmpxx.h>

#include <map>
#include <tuple>
#include <vector>

namespace oracle {

inline long choose(long n, long k) {
    if (n < 0 || k < 0 || k > n) return 0;
    long r = 1;
    for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// h^q(P^n, O(d)) by the closed form.
inline std::map<int, long> bott(int n, int d) {
    std::map<int, long> out;
    if (d >= 0) out[0] = choose(n + d, n);
    if (d <= -n - 1) out[n] = choose(-d - 1, n);
    return out;
}

using Exps = std::vector<int>;
using Poly = std::map<Exps, mpq_class>;

inline void enumerate(int vars, int degree, Exps& cur, std::vector<Exps>& out) {
    if (vars == 1) {
        cur.push_back(degree);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int e = degree; e >= 0; --e) {
        cur.push_back(e);
        enumerate(vars - 1, degree - e, cur, out);
        cur.pop_back();
    }
}

inline std::vector<Exps> monomials(int vars, int degree) {
    std::vector<Exps> out;
    if (degree < 0) return out;
    Exps cur;
    enumerate(vars, degree, cur, out);
    return out;
}

inline Poly to_poly(const dercat::HomogPoly& p) {
    Poly out;
    for (const auto& [m, c] : p.terms()) {
        Exps e(static_cast<std::size_t>(p.num_variables()));
        for (int i = 0; i < p.num_variables(); ++i) e[static_cast<std::size_t>(i)] = m[i];
        out[e] = c.value();
    }
    return out;
}

inline Exps add(const Exps& a, const Exps& b) {
    Exps r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline std::size_t rank(std::vector<std::vector<mpq_class>> m) {
    std::size_t r = 0;
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            const mpq_class f = m[i][c] / m[r][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return r;
}

/// dim H^k of the graded Hom complex between two complexes, built from
/// scratch: unknowns are (j, r, c, monomial) coefficients of phi: A^j -> B^{j+k},
/// D(phi) = d_B phi - (-1)^k phi d_A.
inline std::map<int, long> hom_cohomology(const dercat::LineBundleComplex& a, const dercat::LineBundleComplex& b) {
    std::map<int, long> out;
    auto sa = a.support();
    auto sb = b.support();
    if (!sa || !sb) return out;
    const int vars = a.num_variables();
    const int kmin = sb->first - sa->second;
    const int kmax = sb->second - sa->first;

    struct Coord {
        int j;
        std::size_t r, c;
        Exps mono;
        bool operator<(const Coord& o) const {
            return std::tie(j, r, c, mono) < std::tie(o.j, o.r, o.c, o.mono);
        }
    };
    auto coords = [&](int k) {
        std::map<Coord, std::size_t> idx;
        for (const auto& [j, src] : a.terms()) {
            const auto& tgt = b.term(j + k);
            for (std::size_t r = 0; r < tgt.size(); ++r) {
                for (std::size_t c = 0; c < src.size(); ++c) {
                    for (const auto& m : monomials(vars, tgt[r] - src[c])) {
                        const std::size_t next = idx.size();
                        idx[{j, r, c, m}] = next;
                    }
                }
            }
        }
        return idx;
    };
    std::map<int, std::map<Coord, std::size_t>> space;
    for (int k = kmin - 1; k <= kmax + 1; ++k) space[k] = coords(k);

    auto diff_rank = [&](int k) -> std::size_t {
        const auto& src = space[k];
        const auto& dst = space[k + 1];
        if (src.empty() || dst.empty()) return 0;
        std::vector<std::vector<mpq_class>> m(dst.size(), std::vector<mpq_class>(src.size(), 0));
        const mpq_class sign = (k % 2 == 0) ? -1 : 1;
        for (const auto& [co, col] : src) {
            const auto db = b.differential(co.j + k);
            for (std::size_t r2 = 0; r2 < db.rows(); ++r2) {
                for (const auto& [e, v] : to_poly(db(r2, co.r))) {
                    m[dst.at({co.j, r2, co.c, add(e, co.mono)})][col] += v;
                }
            }
            const auto da = a.differential(co.j - 1);
            for (std::size_t c2 = 0; c2 < da.cols(); ++c2) {
                for (const auto& [e, v] : to_poly(da(co.c, c2))) {
                    m[dst.at({co.j - 1, co.r, c2, add(e, co.mono)})][col] += sign * v;
                }
            }
        }
        return rank(std::move(m));
    };
    std::map<int, std::size_t> ranks;
    for (int k = kmin - 1; k <= kmax; ++k) ranks[k] = diff_rank(k);
    for (int k = kmin; k <= kmax; ++k) {
        const long dim = static_cast<long>(space[k].size()) - static_cast<long>(ranks[k]) -
                         static_cast<long>(ranks[k - 1]);
        if (dim != 0) out[k] = dim;
    }
    return out;
}

}  // namespace oracle

#endif  // DERCAT_TESTS_ORACLE_HPP

#include "dercat/sampling.hpp"

#include "dercat/exact_matrix.hpp"
#include "dercat/ext.hpp"

#include <stdexcept>

namespace dercat {

namespace {

long draw(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

std::size_t basis_size(int nvars, int degree) {
    return degree < 0 ? 0 : MonomialBasis::get(nvars, degree)->size();
}

// Random row vector X (over `mid`) into target twist `t` with X d = 0.
std::vector<HomogPoly> random_annihilating_row(int nvars, int t, const FreeTerm& mid, const FreeTerm& src,
                                               const PolyMatrix& d, Rng& rng, long bound) {
    std::vector<std::size_t> col_off;
    std::size_t ncols = 0;
    for (int m : mid) {
        col_off.push_back(ncols);
        ncols += basis_size(nvars, t - m);
    }
    std::vector<std::size_t> row_off;
    std::size_t nrows = 0;
    for (int s : src) {
        row_off.push_back(nrows);
        nrows += basis_size(nvars, t - s);
    }
    std::vector<HomogPoly> row;
    for (int m : mid) row.emplace_back(nvars, t - m);
    if (ncols == 0) return row;

    ExactMatrix a(nrows, ncols);
    for (std::size_t s = 0; s < src.size(); ++s) {
        for (std::size_t c = 0; c < mid.size(); ++c) {
            const HomogPoly& p = d(c, s);
            if (p.is_zero() || t - mid[c] < 0) continue;
            const ExactMatrix blk = multiplication_matrix(p, t - mid[c]);
            for (std::size_t i = 0; i < blk.rows(); ++i) {
                for (std::size_t j = 0; j < blk.cols(); ++j) a(row_off[s] + i, col_off[c] + j) = blk(i, j);
            }
        }
    }
    const std::vector<Vector> kernel = nrows == 0 ? std::vector<Vector>{} : rank_kernel(a).kernel;
    Vector x(ncols);
    if (nrows == 0) {
        for (auto& v : x) v = Scalar(draw(rng, -bound, bound));
    } else {
        for (const Vector& k : kernel) {
            const Scalar s(draw(rng, -bound, bound));
            for (std::size_t i = 0; i < ncols; ++i) x[i] += s * k[i];
        }
    }
    for (std::size_t c = 0; c < mid.size(); ++c) {
        const int deg = t - mid[c];
        if (deg < 0) continue;
        row[c] = HomogPoly::from_coefficients(nvars, deg,
                                              std::span<const Scalar>(x.data() + col_off[c], basis_size(nvars, deg)));
    }
    return row;
}

}  // namespace

HomogPoly random_poly(int nvars, int degree, Rng& rng, long bound) {
    const std::size_t size = basis_size(nvars, degree);
    std::vector<Scalar> coeffs;
    for (std::size_t i = 0; i < size; ++i) coeffs.emplace_back(draw(rng, -bound, bound));
    if (degree < 0) return HomogPoly(nvars, degree);
    return HomogPoly::from_coefficients(nvars, degree, coeffs);
}

LineBundleComplex random_complex(int n, Rng& rng, const RandomComplexOptions& opts) {
    if (opts.min_degree > opts.max_degree) throw std::invalid_argument("random_complex: empty degree range");
    if (opts.max_rank == 0) throw std::invalid_argument("random_complex: max_rank must be positive");
    const int tmin = opts.min_twist.value_or(-n);
    const int tmax = opts.max_twist.value_or(0);
    if (tmin > tmax) throw std::invalid_argument("random_complex: empty twist range");
    const int nvars = n + 1;

    std::map<int, FreeTerm> terms;
    for (int i = opts.min_degree; i <= opts.max_degree; ++i) {
        const auto r = static_cast<std::size_t>(draw(rng, 1, static_cast<long>(opts.max_rank)));
        FreeTerm t;
        for (std::size_t j = 0; j < r; ++j) t.push_back(static_cast<int>(draw(rng, tmin, tmax)));
        terms[i] = std::move(t);
    }
    std::map<int, PolyMatrix> diffs;
    for (int i = opts.min_degree; i < opts.max_degree; ++i) {
        const FreeTerm& src = terms[i];
        const FreeTerm& tgt = terms[i + 1];
        PolyMatrix d = PolyMatrix::zero(nvars, tgt, src);
        auto prev = diffs.find(i - 1);
        for (std::size_t r = 0; r < tgt.size(); ++r) {
            if (prev == diffs.end()) {
                for (std::size_t c = 0; c < src.size(); ++c) {
                    d(r, c) = random_poly(nvars, tgt[r] - src[c], rng, opts.coefficient_bound);
                }
            } else {
                auto row = random_annihilating_row(nvars, tgt[r], src, terms[i - 1], prev->second, rng,
                                                   opts.coefficient_bound);
                for (std::size_t c = 0; c < src.size(); ++c) d(r, c) = std::move(row[c]);
            }
        }
        diffs.emplace(i, std::move(d));
    }
    return LineBundleComplex(n, std::move(terms), std::move(diffs));
}

ChainMap random_chain_map(const LineBundleComplex& a, const LineBundleComplex& b, Rng& rng, long bound) {
    HomComplex hom(a, b);
    const std::vector<Vector> basis = hom.chain_map_basis();
    if (basis.empty()) return ChainMap::zero(a, b);
    Vector x(hom.dimension(0));
    for (const Vector& k : basis) {
        const Scalar s(draw(rng, -bound, bound));
        for (std::size_t i = 0; i < x.size(); ++i) x[i] += s * k[i];
    }
    return hom.to_chain_map(x);
}

}  // namespace dercat

#include "dercat/window.hpp"

#include "dercat/errors.hpp"
#include "dercat/ext.hpp"
#include "dercat/numerics.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <tuple>

namespace dercat {

namespace {

// m-subsets of {0..k-1} in lexicographic order, as sorted index lists.
struct SubsetIndex {
    std::vector<std::vector<int>> subsets;
    std::map<std::uint32_t, std::size_t> by_mask;

    std::size_t index_of(const std::vector<int>& s) const {
        std::uint32_t mask = 0;
        for (int v : s) mask |= 1u << v;
        return by_mask.at(mask);
    }
};

void collect_subsets(int k, int m, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == m) {
        out.push_back(cur);
        return;
    }
    for (int v = start; v < k; ++v) {
        cur.push_back(v);
        collect_subsets(k, m, v + 1, cur, out);
        cur.pop_back();
    }
}

const SubsetIndex& subset_index(int k, int m) {
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::unique_ptr<SubsetIndex>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[{k, m}];
    if (!slot) {
        slot = std::make_unique<SubsetIndex>();
        std::vector<int> cur;
        if (m >= 0 && m <= k) collect_subsets(k, m, 0, cur, slot->subsets);
        for (std::size_t i = 0; i < slot->subsets.size(); ++i) {
            std::uint32_t mask = 0;
            for (int v : slot->subsets[i]) mask |= 1u << v;
            slot->by_mask[mask] = i;
        }
    }
    return *slot;
}

// Koszul differential from the m-subsets block to the (m-1)-subsets block.
PolyMatrix koszul_map(int nvars, const std::vector<HomogPoly>& forms, int m, int source_twist) {
    const int k = static_cast<int>(forms.size());
    const auto& src = subset_index(k, m);
    const auto& dst = subset_index(k, m - 1);
    PolyMatrix d = PolyMatrix::zero(nvars, FreeTerm(dst.subsets.size(), source_twist + 1),
                                    FreeTerm(src.subsets.size(), source_twist));
    for (std::size_t col = 0; col < src.subsets.size(); ++col) {
        const auto& s = src.subsets[col];
        for (std::size_t p = 0; p < s.size(); ++p) {
            std::vector<int> rest = s;
            rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(p));
            HomogPoly entry = forms[static_cast<std::size_t>(s[p])];
            if (p % 2 == 1) entry = -entry;
            d(dst.index_of(rest), col) = entry;
        }
    }
    return d;
}

// Solver for the Koszul map on x0..xn restricted to Hom(O(a), -) with
// t = (twist of the resolved summand) - a. Source layout: m-subsets times
// monomials of degree t - m; target: (m-1)-subsets times degree t - m + 1.
std::shared_ptr<const LinearSolver> koszul_solver(int n, int m, int t) {
    static std::mutex mutex;
    static std::map<std::tuple<std::uint64_t, int, int, int>, std::shared_ptr<const LinearSolver>> cache;
    const auto key = std::tuple{active_field().modulus(), n, m, t};
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    const int k = n + 1;
    const auto& src = subset_index(k, m);
    const auto& dst = subset_index(k, m - 1);
    auto src_basis = MonomialBasis::get(k, t - m);
    auto dst_basis = MonomialBasis::get(k, t - m + 1);
    ExactMatrix a(dst.subsets.size() * dst_basis->size(), src.subsets.size() * src_basis->size());
    for (std::size_t si = 0; si < src.subsets.size(); ++si) {
        const auto& s = src.subsets[si];
        for (std::size_t mi = 0; mi < src_basis->size(); ++mi) {
            const std::size_t col = si * src_basis->size() + mi;
            for (std::size_t p = 0; p < s.size(); ++p) {
                std::vector<int> rest = s;
                rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(p));
                const Monomial prod = (*src_basis)[mi] * Monomial::variable(s[p]);
                const std::size_t row = dst.index_of(rest) * dst_basis->size() + dst_basis->index_of(prod);
                a(row, col) = Scalar(p % 2 == 0 ? 1 : -1);
            }
        }
    }
    auto solver = std::make_shared<const LinearSolver>(a);
    std::lock_guard lock(mutex);
    return cache.emplace(key, std::move(solver)).first->second;
}

void check_size(const LineBundleComplex& c, const WindowOptions& opts) {
    if (c.total_rank() > opts.max_terms) {
        throw ResourceError("window reduction exceeded the size cap: " + std::to_string(c.total_rank()) +
                            " summands > max_terms " + std::to_string(opts.max_terms));
    }
}

std::map<int, std::vector<std::size_t>> summands_with_twist(const LineBundleComplex& c, int d) {
    std::map<int, std::vector<std::size_t>> out;
    for (const auto& [i, t] : c.terms()) {
        for (std::size_t j = 0; j < t.size(); ++j) {
            if (t[j] == d) out[i].push_back(j);
        }
    }
    return out;
}

void place(PolyMatrix& dst, const PolyMatrix& src, std::size_t r0, std::size_t c0) {
    for (std::size_t r = 0; r < src.rows(); ++r) {
        for (std::size_t c = 0; c < src.cols(); ++c) {
            if (!src(r, c).is_zero()) dst(r0 + r, c0 + c) = src(r, c);
        }
    }
}

}  // namespace

WindowComplex::WindowComplex(LineBundleComplex c) : c_(std::move(c)) {
    if (!in_window(c_)) {
        throw ValidationError("complex has twists outside the window [-" + std::to_string(c_.ambient_dim()) + ", 0]");
    }
}

bool in_window(const LineBundleComplex& c) {
    auto r = c.twist_range();
    return !r || (r->first >= -c.ambient_dim() && r->second <= 0);
}

std::vector<HomogPoly> coordinate_forms(int n) {
    std::vector<HomogPoly> forms;
    for (int i = 0; i <= n; ++i) forms.push_back(HomogPoly::variable(n + 1, i));
    return forms;
}

LineBundleComplex koszul_complex(int n, const std::vector<HomogPoly>& forms, int top_twist, int top_degree,
                                 int max_m) {
    const int k = static_cast<int>(forms.size());
    const int top_m = std::min(k, max_m);
    std::map<int, FreeTerm> terms;
    std::map<int, PolyMatrix> diffs;
    for (int m = 0; m <= top_m; ++m) {
        terms[top_degree - m] = FreeTerm(static_cast<std::size_t>(binomial(k, m)), top_twist - m);
        if (m >= 1) diffs.emplace(top_degree - m, koszul_map(n + 1, forms, m, top_twist - m));
    }
    return LineBundleComplex(n, std::move(terms), std::move(diffs));
}

std::shared_ptr<const KoszulRewriteRule> KoszulRewriteRule::get(int n, Direction direction) {
    static std::mutex mutex;
    static std::map<std::tuple<std::uint64_t, int, Direction>, std::shared_ptr<const KoszulRewriteRule>> cache;
    const auto key = std::tuple{active_field().modulus(), n, direction};
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    auto rule = std::make_shared<KoszulRewriteRule>();
    rule->n = n;
    rule->direction = direction;
    const auto forms = coordinate_forms(n);
    LineBundleComplex aug = koszul_complex(n, forms, 0, 0, n + 1);
    std::map<int, FreeTerm> rest_terms;
    std::map<int, PolyMatrix> rest_diffs;
    for (const auto& [q, t] : aug.terms()) {
        if (q < 0) rest_terms[q] = t;
    }
    for (const auto& [q, m] : aug.differentials()) {
        if (q < -1) rest_diffs.emplace(q, m);
    }
    LineBundleComplex repl = shift(LineBundleComplex(n, std::move(rest_terms), std::move(rest_diffs)), -1);
    if (direction == Direction::raise) {
        aug = dual(aug);
        repl = dual(repl);
    }
    // exactness on every graded piece that the rewriting touches
    const int lo = direction == Direction::lower ? 1 : 0;
    for (int t = lo; t <= n + 2; ++t) {
        HomComplex hom(LineBundleComplex::line_bundle(n, -t), aug);
        if (!hom.cohomology().is_zero()) {
            throw InternalError("Koszul rewrite complex is not exact in internal degree " + std::to_string(t));
        }
    }
    rule->augmented = std::move(aug);
    rule->replacement = std::move(repl);
    std::lock_guard lock(mutex);
    return cache.emplace(key, std::move(rule)).first->second;
}

namespace detail {

LineBundleComplex lower_summands(const LineBundleComplex& c, int degree, const std::vector<std::size_t>& indices) {
    const int n = c.ambient_dim();
    const int nvars = n + 1;
    const int k = n + 1;
    const int i = degree;
    const FreeTerm& here = c.term(i);
    if (indices.empty()) return c;
    const int d = here.at(indices.front());
    for (auto j : indices) {
        if (here.at(j) != d) throw InternalError("lower_summands: summands of different twists");
    }
    KoszulRewriteRule::get(n, KoszulRewriteRule::Direction::lower);
    const auto forms = coordinate_forms(n);

    // Lifts g_p: C^p -> A^{-(i-p)} with eps g_{i-1} = (row j of d^{i-1}) and
    // d_K g_p + g_{p+1} d^p = 0 below.
    std::vector<std::map<int, PolyMatrix>> lifts(indices.size());
    for (std::size_t jj = 0; jj < indices.size(); ++jj) {
        const std::size_t j = indices[jj];
        for (int p = i - 1; p >= i - n - 1; --p) {
            const FreeTerm& src = c.term(p);
            const int m = i - p;
            const auto& tgt_subsets = subset_index(k, m - 1);
            const auto& out_subsets = subset_index(k, m);
            PolyMatrix rhs;
            if (p == i - 1) {
                PolyMatrix dp = c.differential(p);
                rhs = PolyMatrix(nvars, 1, src.size());
                for (std::size_t col = 0; col < src.size(); ++col) rhs(0, col) = dp(j, col);
            } else {
                auto prev = lifts[jj].find(p + 1);
                if (prev == lifts[jj].end() || src.empty()) continue;
                rhs = prev->second * c.differential(p) * Scalar(-1);
            }
            if (rhs.is_zero()) continue;

            PolyMatrix g = PolyMatrix::zero(nvars, FreeTerm(out_subsets.subsets.size(), d - m), src);
            for (std::size_t col = 0; col < src.size(); ++col) {
                const int t = d - src[col];
                bool zero_col = true;
                for (std::size_t s = 0; s < rhs.rows(); ++s) zero_col = zero_col && rhs(s, col).is_zero();
                if (zero_col) continue;
                if (t - m < 0) {
                    throw InternalError("cannot lift through the Koszul resolution at degree " + std::to_string(p) +
                                        " (unpruned unit entry?)");
                }
                auto in_basis = MonomialBasis::get(nvars, t - m + 1);
                Vector y(tgt_subsets.subsets.size() * in_basis->size());
                for (std::size_t s = 0; s < rhs.rows(); ++s) {
                    for (const auto& [mono, coeff] : rhs(s, col).terms()) {
                        y[s * in_basis->size() + in_basis->index_of(mono)] = coeff;
                    }
                }
                auto x = koszul_solver(n, m, t)->solve(y);
                if (!x) {
                    throw InternalError("Koszul lifting system unsolvable at degree " + std::to_string(p) +
                                        ", column " + std::to_string(col));
                }
                const std::size_t block = MonomialBasis::get(nvars, t - m)->size();
                for (std::size_t s = 0; s < out_subsets.subsets.size(); ++s) {
                    g(s, col) = HomogPoly::from_coefficients(
                        nvars, t - m, std::span<const Scalar>(x->data() + s * block, block));
                }
            }
            lifts[jj][p] = std::move(g);
        }
        // below the resolution the lift must die: g_{i-n-1} d^{i-n-2} = 0
        if (auto last = lifts[jj].find(i - n - 1); last != lifts[jj].end()) {
            if (!(last->second * c.differential(i - n - 2)).is_zero()) {
                throw InternalError("Koszul lift does not terminate");
            }
        }
    }

    // assemble
    std::set<int> degrees;
    for (const auto& [q, t] : c.terms()) degrees.insert(q);
    for (int q = i - n; q <= i; ++q) degrees.insert(q);

    auto block_m = [&](int q) { return i - q + 1; };  // subset size of the K block at degree q
    auto has_block = [&](int q) { return q >= i - n && q <= i; };
    auto block_size = [&](int q) { return static_cast<std::size_t>(binomial(k, block_m(q))); };

    std::map<int, FreeTerm> base;
    std::map<int, FreeTerm> terms;
    for (int q : degrees) {
        FreeTerm b = c.term(q);
        if (q == i) {
            std::vector<bool> drop(b.size(), false);
            for (auto j : indices) drop[j] = true;
            FreeTerm kept;
            for (std::size_t x = 0; x < b.size(); ++x) {
                if (!drop[x]) kept.push_back(b[x]);
            }
            b = std::move(kept);
        }
        FreeTerm full = b;
        if (has_block(q)) {
            for (std::size_t jj = 0; jj < indices.size(); ++jj) {
                full.insert(full.end(), block_size(q), d - block_m(q));
            }
        }
        base[q] = std::move(b);
        terms[q] = std::move(full);
    }

    std::map<int, PolyMatrix> diffs;
    for (int q : degrees) {
        if (!terms.count(q + 1)) continue;
        const FreeTerm& tgt = terms[q + 1];
        const FreeTerm& src = terms[q];
        PolyMatrix m = PolyMatrix::zero(nvars, tgt, src);
        PolyMatrix dq = c.differential(q);
        std::vector<std::size_t> drop_rows = (q + 1 == i) ? indices : std::vector<std::size_t>{};
        std::vector<std::size_t> drop_cols = (q == i) ? indices : std::vector<std::size_t>{};
        place(m, dq.without(drop_rows, drop_cols), 0, 0);

        const std::size_t tgt_base = base[q + 1].size();
        const std::size_t src_base = base[q].size();
        for (std::size_t jj = 0; jj < indices.size(); ++jj) {
            if (has_block(q + 1)) {
                const std::size_t row0 = tgt_base + jj * block_size(q + 1);
                if (auto g = lifts[jj].find(q); g != lifts[jj].end()) place(m, g->second, row0, 0);
                if (has_block(q)) {
                    place(m, koszul_map(nvars, forms, block_m(q), d - block_m(q)), row0,
                          src_base + jj * block_size(q));
                }
            }
            if (q == i) {
                // K^0 -> C^{i+1}: (column j of d^i) composed with the augmentation
                const std::size_t col0 = src_base + jj * block_size(q);
                for (std::size_t r = 0; r < base[q + 1].size(); ++r) {
                    const HomogPoly& psi = dq(r, indices[jj]);
                    if (psi.is_zero()) continue;
                    for (int v = 0; v <= n; ++v) {
                        m(r, col0 + static_cast<std::size_t>(v)) = psi * forms[static_cast<std::size_t>(v)];
                    }
                }
            }
        }
        diffs.emplace(q, std::move(m));
    }
    return LineBundleComplex(n, std::move(terms), std::move(diffs));
}

}  // namespace detail

WindowComplex reduce_to_window(const LineBundleComplex& c, const WindowOptions& opts) {
    require_valid(c, "reduce_to_window input");
    const int n = c.ambient_dim();
    LineBundleComplex x = prune(c);
    check_size(x, opts);

    while (true) {
        auto range = x.twist_range();
        if (!range || range->second <= 0) break;
        for (const auto& [deg, idx] : summands_with_twist(x, range->second)) {
            x = detail::lower_summands(x, deg, idx);
            check_size(x, opts);
        }
        x = prune(x);
        check_size(x, opts);
    }
    while (true) {
        auto range = x.twist_range();
        if (!range || range->first >= -n) break;
        LineBundleComplex y = dual(x);
        for (const auto& [deg, idx] : summands_with_twist(y, -range->first)) {
            y = detail::lower_summands(y, deg, idx);
            check_size(y, opts);
        }
        x = prune(dual(y));
        check_size(x, opts);
    }

    if (auto r = validate(x); !r) throw InternalError("window reduction produced an invalid complex: " + r.message);
    if (chern_character(x) != chern_character(c)) {
        throw InternalError("window reduction changed the Chern character");
    }
    return WindowComplex(std::move(x));
}

bool is_zero_object(const WindowComplex& c) {
    const int n = c.ambient_dim();
    for (int i = 0; i <= n; ++i) {
        if (!ext_table_in_window(LineBundleComplex::line_bundle(n, -i), c.complex()).is_zero()) return false;
    }
    return true;
}

bool is_quasi_iso(const ChainMap& f) {
    require_valid(f, "is_quasi_iso");
    if (!in_window(f.source()) || !in_window(f.target())) {
        throw ValidationError("is_quasi_iso: both complexes must lie in the window");
    }
    return is_zero_object(WindowComplex(cone(f)));
}

std::size_t BeilinsonTable::at(int i, int k) const {
    if (i < 0 || i >= static_cast<int>(multiplicities.size())) return 0;
    const auto& row = multiplicities[static_cast<std::size_t>(i)];
    auto it = row.find(k);
    return it == row.end() ? 0 : it->second;
}

LineBundleComplex omega_resolution(int n, int i) {
    if (i < 0 || i > n) throw std::invalid_argument("omega_resolution: need 0 <= i <= n");
    return koszul_complex(n, coordinate_forms(n), i, i, i);
}

BeilinsonTable beilinson_multiplicities(const LineBundleComplex& c, const WindowOptions& opts) {
    require_valid(c, "beilinson_multiplicities input");
    BeilinsonTable table;
    table.n = c.ambient_dim();
    for (int i = 0; i <= table.n; ++i) {
        table.multiplicities.push_back(
            sheaf_cohomology(tensor(c, omega_resolution(table.n, i)), opts).entries());
    }
    return table;
}

}  // namespace dercat

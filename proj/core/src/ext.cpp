#include "dercat/ext.hpp"

#include "dercat/errors.hpp"

#include <random>
#include <sstream>
#include <stdexcept>

namespace dercat {

// ---------------------------------------------------------------- ExtTable

ExtTable::ExtTable(const std::map<int, std::size_t>& dims) {
    for (const auto& [k, v] : dims) {
        if (v != 0) dims_[k] = v;
    }
}

std::size_t ExtTable::operator[](int k) const {
    auto it = dims_.find(k);
    return it == dims_.end() ? 0 : it->second;
}

std::optional<int> ExtTable::min_degree() const {
    if (dims_.empty()) return std::nullopt;
    return dims_.begin()->first;
}

std::optional<int> ExtTable::max_degree() const {
    if (dims_.empty()) return std::nullopt;
    return dims_.rbegin()->first;
}

ExtTable ExtTable::shifted(int k) const {
    std::map<int, std::size_t> out;
    for (const auto& [i, v] : dims_) out[i - k] = v;
    return ExtTable(out);
}

long ExtTable::euler_characteristic() const {
    long chi = 0;
    for (const auto& [k, v] : dims_) chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(v);
    return chi;
}

ExtTable operator+(const ExtTable& a, const ExtTable& b) {
    std::map<int, std::size_t> out = a.dims_;
    for (const auto& [k, v] : b.dims_) out[k] += v;
    return ExtTable(out);
}

std::string ExtTable::to_string() const {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (const auto& [k, v] : dims_) {
        if (!first) os << ", ";
        first = false;
        os << k << ": " << v;
    }
    os << '}';
    return os.str();
}

// -------------------------------------------------------------- HomComplex

namespace {

std::size_t basis_size(int nvars, int degree) {
    return degree < 0 ? 0 : MonomialBasis::get(nvars, degree)->size();
}

}  // namespace

HomComplex::HomComplex(const LineBundleComplex& a, const LineBundleComplex& b) : a_(a), b_(b) {
    if (a.ambient_dim() != b.ambient_dim()) {
        throw ValidationError("ambient dimension mismatch: P^" + std::to_string(a.ambient_dim()) + " vs P^" +
                              std::to_string(b.ambient_dim()));
    }
    auto sa = a.support();
    auto sb = b.support();
    if (!sa || !sb) return;
    kmin_ = sb->first - sa->second;
    kmax_ = sb->second - sa->first;
    const int nvars = a.num_variables();
    for (int k = kmin_; k <= kmax_; ++k) {
        std::vector<Block> blocks;
        std::size_t offset = 0;
        for (const auto& [j, src] : a.terms()) {
            const FreeTerm& tgt = b.term(j + k);
            if (tgt.empty()) continue;
            Block blk{j, offset, {}, {}, tgt.size(), src.size()};
            std::size_t size = 0;
            for (std::size_t r = 0; r < tgt.size(); ++r) {
                for (std::size_t c = 0; c < src.size(); ++c) {
                    const int deg = tgt[r] - src[c];
                    blk.entry_offset.push_back(offset + size);
                    blk.entry_degree.push_back(deg);
                    size += basis_size(nvars, deg);
                }
            }
            offset += size;
            blocks.push_back(std::move(blk));
        }
        dims_[k] = offset;
        blocks_[k] = std::move(blocks);
    }
}

std::size_t HomComplex::dimension(int k) const {
    auto it = dims_.find(k);
    return it == dims_.end() ? 0 : it->second;
}

const std::vector<HomComplex::Block>& HomComplex::blocks(int k) const {
    static const std::vector<Block> none;
    auto it = blocks_.find(k);
    return it == blocks_.end() ? none : it->second;
}

const HomComplex::Block* HomComplex::find_block(int k, int j) const {
    for (const auto& blk : blocks(k)) {
        if (blk.source_degree == j) return &blk;
    }
    return nullptr;
}

ExactMatrix HomComplex::differential(int k) const {
    ExactMatrix out(dimension(k + 1), dimension(k));
    if (out.rows() == 0 || out.cols() == 0) return out;
    const int nvars = a_.num_variables();
    const Scalar phi_sign = (k % 2 == 0) ? Scalar(-1) : Scalar(1);  // -(-1)^k

    for (const auto& blk : blocks(k)) {
        const int j = blk.source_degree;
        const PolyMatrix db = b_.differential(j + k);
        const PolyMatrix da = a_.differential(j - 1);
        const Block* via_b = find_block(k + 1, j);
        const Block* via_a = find_block(k + 1, j - 1);
        for (std::size_t r = 0; r < blk.rows; ++r) {
            for (std::size_t c = 0; c < blk.cols; ++c) {
                const std::size_t e = r * blk.cols + c;
                const int deg = blk.entry_degree[e];
                if (deg < 0) continue;
                auto basis = MonomialBasis::get(nvars, deg);
                for (std::size_t mi = 0; mi < basis->size(); ++mi) {
                    const std::size_t col = blk.entry_offset[e] + mi;
                    const Monomial& mu = (*basis)[mi];
                    // d_B phi: entry (r', c) += d_B(r', r) mu
                    if (via_b) {
                        for (std::size_t r2 = 0; r2 < db.rows(); ++r2) {
                            const HomogPoly& p = db(r2, r);
                            if (p.is_zero()) continue;
                            const std::size_t e2 = r2 * via_b->cols + c;
                            auto tb = MonomialBasis::get(nvars, via_b->entry_degree[e2]);
                            for (const auto& [nu, coeff] : p.terms()) {
                                out(via_b->entry_offset[e2] + tb->index_of(nu * mu), col) += coeff;
                            }
                        }
                    }
                    // phi d_A: entry (r, c'') += mu d_A(c, c'')
                    if (via_a) {
                        for (std::size_t c2 = 0; c2 < da.cols(); ++c2) {
                            const HomogPoly& p = da(c, c2);
                            if (p.is_zero()) continue;
                            const std::size_t e2 = r * via_a->cols + c2;
                            auto tb = MonomialBasis::get(nvars, via_a->entry_degree[e2]);
                            for (const auto& [nu, coeff] : p.terms()) {
                                out(via_a->entry_offset[e2] + tb->index_of(nu * mu), col) += phi_sign * coeff;
                            }
                        }
                    }
                }
            }
        }
    }
    return out;
}

ExtTable HomComplex::cohomology() const {
    if (kmax_ < kmin_) return {};
    std::map<int, std::size_t> ranks;
    for (int k = kmin_ - 1; k <= kmax_; ++k) ranks[k] = rank(differential(k));
    std::map<int, std::size_t> out;
    for (int k = kmin_; k <= kmax_; ++k) out[k] = dimension(k) - ranks[k] - ranks[k - 1];
    return ExtTable(out);
}

std::vector<Vector> HomComplex::chain_map_basis() const {
    if (dimension(0) == 0) return {};
    return rank_kernel(differential(0)).kernel;
}

ChainMap HomComplex::to_chain_map(const Vector& coords) const {
    if (coords.size() != dimension(0)) throw std::invalid_argument("to_chain_map: coordinate vector has wrong size");
    const int nvars = a_.num_variables();
    std::map<int, PolyMatrix> comps;
    for (const auto& blk : blocks(0)) {
        const int j = blk.source_degree;
        PolyMatrix f = PolyMatrix::zero(nvars, b_.term(j), a_.term(j));
        for (std::size_t r = 0; r < blk.rows; ++r) {
            for (std::size_t c = 0; c < blk.cols; ++c) {
                const std::size_t e = r * blk.cols + c;
                const int deg = blk.entry_degree[e];
                if (deg < 0) continue;
                const std::size_t size = basis_size(nvars, deg);
                f(r, c) = HomogPoly::from_coefficients(nvars, deg,
                                                       std::span<const Scalar>(coords.data() + blk.entry_offset[e], size));
            }
        }
        comps.emplace(j, std::move(f));
    }
    return ChainMap(a_, b_, std::move(comps));
}

// ------------------------------------------------------------------- Ext

ExtTable ext_table_in_window(const LineBundleComplex& a, const LineBundleComplex& b) {
    if (a.ambient_dim() != b.ambient_dim()) {
        throw ValidationError("ambient dimension mismatch: P^" + std::to_string(a.ambient_dim()) + " vs P^" +
                              std::to_string(b.ambient_dim()));
    }
    if (!in_window(a) || !in_window(b)) {
        throw ValidationError("ext_table_in_window: twists must lie in [-n, 0]");
    }
    return HomComplex(a, b).cohomology();
}

ExtTable ext_table(const LineBundleComplex& a, const LineBundleComplex& b, const WindowOptions& opts) {
    if (a.ambient_dim() != b.ambient_dim()) {
        throw ValidationError("ambient dimension mismatch: P^" + std::to_string(a.ambient_dim()) + " vs P^" +
                              std::to_string(b.ambient_dim()));
    }
    const WindowComplex wa = reduce_to_window(a, opts);
    const WindowComplex wb = reduce_to_window(b, opts);
    return HomComplex(wa.complex(), wb.complex()).cohomology();
}

ExtTable sheaf_cohomology(const LineBundleComplex& c, const WindowOptions& opts) {
    return ext_table(LineBundleComplex::line_bundle(c.ambient_dim(), 0), c, opts);
}

LineBundleComplex serre_functor(const LineBundleComplex& c) {
    const int n = c.ambient_dim();
    return shift(twist(c, -n - 1), n);
}

SerreDualityReport serre_duality_check(const LineBundleComplex& a, const LineBundleComplex& b,
                                       const WindowOptions& opts) {
    SerreDualityReport rep;
    rep.ext_ab = ext_table(a, b, opts);
    rep.ext_b_sa = ext_table(b, serre_functor(a), opts);
    // Ext^k(A, B) against Ext^{-k}(B, S A)
    std::map<int, std::size_t> mirrored;
    for (const auto& [k, v] : rep.ext_b_sa.entries()) mirrored[-k] = v;
    rep.holds = rep.ext_ab == ExtTable(mirrored);
    return rep;
}

// ------------------------------------------------------------- skyscrapers

WindowComplex koszul_point(int n, const std::vector<HomogPoly>& forms) {
    if (static_cast<int>(forms.size()) != n) {
        throw ValidationError("koszul_point on P^" + std::to_string(n) + " needs " + std::to_string(n) +
                              " linear forms, got " + std::to_string(forms.size()));
    }
    ExactMatrix m(forms.size(), static_cast<std::size_t>(n + 1));
    for (std::size_t r = 0; r < forms.size(); ++r) {
        const HomogPoly& f = forms[r];
        if (f.num_variables() != n + 1 || f.degree() != 1) {
            throw ValidationError("koszul_point: form " + std::to_string(r) + " is not a linear form on P^" +
                                  std::to_string(n));
        }
        for (int v = 0; v <= n; ++v) m(r, static_cast<std::size_t>(v)) = f.coefficient(Monomial::variable(v));
    }
    if (rank(m) != static_cast<std::size_t>(n)) throw ValidationError("koszul_point: forms are linearly dependent");
    return WindowComplex(koszul_complex(n, forms, 0, 0, n));
}

std::vector<HomogPoly> point_forms(int n, const std::vector<Scalar>& coordinates) {
    if (static_cast<int>(coordinates.size()) != n + 1) {
        throw ValidationError("point_forms: expected " + std::to_string(n + 1) + " coordinates");
    }
    ExactMatrix row(1, coordinates.size());
    bool nonzero = false;
    for (std::size_t v = 0; v < coordinates.size(); ++v) {
        row(0, v) = coordinates[v];
        nonzero = nonzero || !coordinates[v].is_zero();
    }
    if (!nonzero) throw ValidationError("point_forms: all coordinates are zero");
    std::vector<HomogPoly> forms;
    for (const Vector& k : rank_kernel(row).kernel) forms.push_back(HomogPoly::from_coefficients(n + 1, 1, k));
    return forms;
}

std::vector<HomogPoly> coordinate_point_forms(int n, int k) {
    if (k < 0 || k > n) throw std::invalid_argument("coordinate_point_forms: index out of range");
    std::vector<HomogPoly> forms;
    for (int v = 0; v <= n; ++v) {
        if (v != k) forms.push_back(HomogPoly::variable(n + 1, v));
    }
    return forms;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::yes: return "yes";
        case Verdict::no: return "no";
        case Verdict::indeterminate: return "indeterminate";
    }
    return "indeterminate";
}

PointCandidateReport point_object_check(const LineBundleComplex& c, const PointCheckOptions& opts) {
    require_valid(c, "point_object_check input");
    const int n = c.ambient_dim();
    const LineBundleComplex cw = reduce_to_window(c, opts.window).complex();
    const LineBundleComplex sw = reduce_to_window(twist(c, -n - 1), opts.window).complex();

    PointCandidateReport rep;
    rep.self_ext = ext_table_in_window(cw, cw);
    rep.simple = rep.self_ext[0] == 1;
    rep.no_negative_self_ext = !rep.self_ext.min_degree() || *rep.self_ext.min_degree() >= 0;
    rep.self_ext_tables_agree = rep.self_ext == ext_table_in_window(cw, sw);
    rep.mode = "exact";

    if (!rep.self_ext_tables_agree) {
        rep.serre_fixed = Verdict::no;
        return rep;
    }
    if (is_zero_object(WindowComplex(cw))) {
        rep.serre_fixed = Verdict::yes;
        return rep;
    }
    HomComplex hom(cw, sw);
    const std::vector<Vector> basis = hom.chain_map_basis();
    if (basis.empty()) {
        rep.serre_fixed = Verdict::no;
        return rep;
    }
    for (const Vector& v : basis) {
        ++rep.candidates_tried;
        if (is_quasi_iso(hom.to_chain_map(v))) {
            rep.serre_fixed = Verdict::yes;
            return rep;
        }
    }
    if (basis.size() > 1) {
        std::mt19937_64 rng(opts.seed);
        std::uniform_int_distribution<long> coeff(-5, 5);
        for (std::size_t draw = 0; draw < opts.random_draws; ++draw) {
            Vector v(basis.front().size());
            for (const Vector& b : basis) {
                const Scalar s(coeff(rng));
                for (std::size_t x = 0; x < v.size(); ++x) v[x] += s * b[x];
            }
            ++rep.candidates_tried;
            if (is_quasi_iso(hom.to_chain_map(v))) {
                rep.serre_fixed = Verdict::yes;
                return rep;
            }
        }
    }
    rep.serre_fixed = Verdict::indeterminate;
    rep.mode = "dimension";
    return rep;
}

LineBundleCheckReport line_bundle_object_check(const LineBundleComplex& c,
                                               const std::vector<std::vector<HomogPoly>>& sample,
                                               const WindowOptions& opts) {
    require_valid(c, "line_bundle_object_check input");
    const int n = c.ambient_dim();
    const LineBundleComplex cw = reduce_to_window(c, opts).complex();
    LineBundleCheckReport rep;
    rep.pass = !sample.empty();
    for (const auto& forms : sample) {
        LineBundleCheckReport::Sample s;
        s.ext = ext_table_in_window(cw, koszul_point(n, forms).complex());
        if (s.ext.entries().size() == 1 && s.ext.entries().begin()->second == 1) {
            s.pass = true;
            s.degree = s.ext.entries().begin()->first;
        }
        rep.pass = rep.pass && s.pass;
        rep.samples.push_back(std::move(s));
    }
    if (rep.pass) {
        const int s0 = *rep.samples.front().degree;
        for (const auto& s : rep.samples) rep.pass = rep.pass && *s.degree == s0;
        if (rep.pass) rep.common_degree = s0;
    }
    return rep;
}

std::vector<std::vector<HomogPoly>> default_point_sample(int n, std::size_t random_points, std::uint64_t seed) {
    std::vector<std::vector<HomogPoly>> sample;
    for (int k = 0; k <= n; ++k) sample.push_back(coordinate_point_forms(n, k));
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> coord(-3, 3);
    while (sample.size() < static_cast<std::size_t>(n + 1) + random_points) {
        std::vector<Scalar> pt;
        bool nonzero = false;
        for (int v = 0; v <= n; ++v) {
            pt.emplace_back(coord(rng));
            nonzero = nonzero || !pt.back().is_zero();
        }
        if (nonzero) sample.push_back(point_forms(n, pt));
    }
    return sample;
}

std::map<int, std::size_t> pluricanonical_dimensions(int n, int from, int to, const WindowOptions& opts) {
    if (from > to) throw std::invalid_argument("pluricanonical_dimensions: empty range");
    std::map<int, std::size_t> out;
    for (int i = from; i <= to; ++i) {
        out[i] = sheaf_cohomology(LineBundleComplex::line_bundle(n, -i * (n + 1)), opts)[0];
    }
    return out;
}

}  // namespace dercat

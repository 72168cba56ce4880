#include "dercat/complex.hpp"

#include "dercat/errors.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace dercat {

namespace {

int sign_power(int k) { return (k % 2 == 0) ? 1 : -1; }

void place(PolyMatrix& dst, const PolyMatrix& src, std::size_t r0, std::size_t c0, int sign = 1) {
    for (std::size_t r = 0; r < src.rows(); ++r) {
        for (std::size_t c = 0; c < src.cols(); ++c) {
            const HomogPoly& e = src(r, c);
            if (e.is_zero()) continue;
            dst(r0 + r, c0 + c) = sign == 1 ? e : -e;
        }
    }
}

FreeTerm concat(const FreeTerm& a, const FreeTerm& b) {
    FreeTerm out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

ValidationReport violation(std::string msg, std::optional<int> degree = std::nullopt,
                           std::optional<std::pair<std::size_t, std::size_t>> entry = std::nullopt) {
    ValidationReport r;
    r.ok = false;
    r.message = std::move(msg);
    r.degree = degree;
    r.entry = entry;
    return r;
}

std::string entry_name(const std::string& what, int degree, std::size_t r, std::size_t c) {
    return what + "^" + std::to_string(degree) + "(" + std::to_string(r) + "," + std::to_string(c) + ")";
}

// Shape and per-entry degree check of a map between two free terms.
ValidationReport check_map(const PolyMatrix& m, const FreeTerm& target, const FreeTerm& source, int nvars,
                           const std::string& what, int degree) {
    if (m.rows() != target.size() || m.cols() != source.size()) {
        return violation(what + "^" + std::to_string(degree) + " has shape " + std::to_string(m.rows()) + "x" +
                             std::to_string(m.cols()) + ", expected " + std::to_string(target.size()) + "x" +
                             std::to_string(source.size()),
                         degree);
    }
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const HomogPoly& e = m(r, c);
            if (e.is_zero()) continue;
            if (e.num_variables() != nvars) {
                return violation(entry_name(what, degree, r, c) + " lives in the wrong polynomial ring", degree,
                                 std::pair{r, c});
            }
            const int want = target[r] - source[c];
            if (e.degree() != want) {
                return violation(entry_name(what, degree, r, c) + " = " + e.to_string() + " has degree " +
                                     std::to_string(e.degree()) + ", expected " + std::to_string(want),
                                 degree, std::pair{r, c});
            }
        }
    }
    return {};
}

std::optional<std::pair<std::size_t, std::size_t>> first_nonzero(const PolyMatrix& m) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (!m(r, c).is_zero()) return std::pair{r, c};
        }
    }
    return std::nullopt;
}

std::set<int> degrees_of(const LineBundleComplex& a) {
    std::set<int> ds;
    for (const auto& [i, t] : a.terms()) ds.insert(i);
    return ds;
}

}  // namespace

// ---------------------------------------------------------------- PolyMatrix

PolyMatrix::PolyMatrix(int nvars, std::size_t rows, std::size_t cols)
    : nvars_(nvars), rows_(rows), cols_(cols), data_(rows * cols, HomogPoly(nvars, 0)) {}

PolyMatrix PolyMatrix::zero(int nvars, const FreeTerm& target, const FreeTerm& source) {
    PolyMatrix m(nvars, target.size(), source.size());
    for (std::size_t r = 0; r < target.size(); ++r) {
        for (std::size_t c = 0; c < source.size(); ++c) m(r, c) = HomogPoly(nvars, target[r] - source[c]);
    }
    return m;
}

PolyMatrix PolyMatrix::identity(int nvars, const FreeTerm& term) {
    PolyMatrix m = zero(nvars, term, term);
    for (std::size_t i = 0; i < term.size(); ++i) m(i, i) = HomogPoly::constant(nvars, Scalar(1));
    return m;
}

bool PolyMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const HomogPoly& p) { return p.is_zero(); });
}

PolyMatrix PolyMatrix::transpose() const {
    PolyMatrix t(nvars_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    }
    return t;
}

PolyMatrix PolyMatrix::without(const std::vector<std::size_t>& drop_rows,
                               const std::vector<std::size_t>& drop_cols) const {
    std::vector<bool> dr(rows_, false), dc(cols_, false);
    for (auto r : drop_rows) dr.at(r) = true;
    for (auto c : drop_cols) dc.at(c) = true;
    std::vector<std::size_t> keep_r, keep_c;
    for (std::size_t r = 0; r < rows_; ++r) {
        if (!dr[r]) keep_r.push_back(r);
    }
    for (std::size_t c = 0; c < cols_; ++c) {
        if (!dc[c]) keep_c.push_back(c);
    }
    PolyMatrix out(nvars_, keep_r.size(), keep_c.size());
    for (std::size_t i = 0; i < keep_r.size(); ++i) {
        for (std::size_t j = 0; j < keep_c.size(); ++j) out(i, j) = (*this)(keep_r[i], keep_c[j]);
    }
    return out;
}

PolyMatrix& PolyMatrix::operator*=(const Scalar& s) {
    for (auto& p : data_) p *= s;
    return *this;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.cols_ != b.rows_) throw InternalError("polynomial matrix product shape mismatch");
    PolyMatrix p(a.nvars_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const HomogPoly& aik = a(i, k);
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) {
                const HomogPoly& bkj = b(k, j);
                if (!bkj.is_zero()) p(i, j) += aik * bkj;
            }
        }
    }
    return p;
}

PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InternalError("polynomial matrix sum shape mismatch");
    PolyMatrix s = a;
    for (std::size_t i = 0; i < s.data_.size(); ++i) s.data_[i] += b.data_[i];
    return s;
}

PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InternalError("polynomial matrix difference shape mismatch");
    PolyMatrix s = a;
    for (std::size_t i = 0; i < s.data_.size(); ++i) s.data_[i] -= b.data_[i];
    return s;
}

bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

// --------------------------------------------------------- LineBundleComplex

LineBundleComplex::LineBundleComplex(int n) : n_(n) {
    if (n < 1 || n + 1 > kMaxVariables) throw std::invalid_argument("ambient dimension must be in [1, 15]");
}

LineBundleComplex::LineBundleComplex(int n, std::map<int, FreeTerm> terms, std::map<int, PolyMatrix> diffs)
    : LineBundleComplex(n) {
    terms_ = std::move(terms);
    diffs_ = std::move(diffs);
    normalize();
}

LineBundleComplex LineBundleComplex::line_bundle(int n, int twist, int degree) {
    return LineBundleComplex(n, {{degree, FreeTerm{twist}}});
}

void LineBundleComplex::normalize() {
    std::erase_if(terms_, [](const auto& kv) { return kv.second.empty(); });
    std::erase_if(diffs_, [](const auto& kv) { return kv.second.is_zero(); });
}

const FreeTerm& LineBundleComplex::term(int i) const {
    static const FreeTerm empty;
    auto it = terms_.find(i);
    return it == terms_.end() ? empty : it->second;
}

PolyMatrix LineBundleComplex::differential(int i) const {
    auto it = diffs_.find(i);
    if (it != diffs_.end()) return it->second;
    return PolyMatrix::zero(num_variables(), term(i + 1), term(i));
}

std::optional<std::pair<int, int>> LineBundleComplex::support() const {
    if (terms_.empty()) return std::nullopt;
    return std::pair{terms_.begin()->first, terms_.rbegin()->first};
}

std::optional<std::pair<int, int>> LineBundleComplex::twist_range() const {
    std::optional<std::pair<int, int>> r;
    for (const auto& [i, t] : terms_) {
        for (int d : t) {
            if (!r) {
                r = std::pair{d, d};
            } else {
                r->first = std::min(r->first, d);
                r->second = std::max(r->second, d);
            }
        }
    }
    return r;
}

std::size_t LineBundleComplex::total_rank() const {
    std::size_t total = 0;
    for (const auto& [i, t] : terms_) total += t.size();
    return total;
}

bool operator==(const LineBundleComplex& a, const LineBundleComplex& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_ && a.diffs_ == b.diffs_;
}

std::string LineBundleComplex::to_string() const {
    std::ostringstream os;
    os << "complex on P^" << n_;
    for (const auto& [i, t] : terms_) {
        os << "\n  degree " << i << ":";
        for (int d : t) os << " O(" << d << ")";
    }
    for (const auto& [i, m] : diffs_) {
        os << "\n  d^" << i << " = [";
        for (std::size_t r = 0; r < m.rows(); ++r) {
            os << (r ? "; " : "");
            for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? ", " : "") << m(r, c).to_string();
        }
        os << "]";
    }
    return os.str();
}

// ------------------------------------------------------------------ ChainMap

ChainMap::ChainMap(LineBundleComplex source, LineBundleComplex target, std::map<int, PolyMatrix> components)
    : source_(std::move(source)), target_(std::move(target)), components_(std::move(components)) {
    if (source_.ambient_dim() != target_.ambient_dim()) {
        throw ValidationError("chain map between complexes on different projective spaces");
    }
    std::erase_if(components_, [](const auto& kv) { return kv.second.is_zero(); });
}

ChainMap ChainMap::zero(const LineBundleComplex& source, const LineBundleComplex& target) {
    return ChainMap(source, target);
}

ChainMap ChainMap::identity(const LineBundleComplex& c) {
    std::map<int, PolyMatrix> comps;
    for (const auto& [i, t] : c.terms()) comps.emplace(i, PolyMatrix::identity(c.num_variables(), t));
    return ChainMap(c, c, std::move(comps));
}

PolyMatrix ChainMap::component(int i) const {
    auto it = components_.find(i);
    if (it != components_.end()) return it->second;
    return PolyMatrix::zero(source_.num_variables(), target_.term(i), source_.term(i));
}

// ---------------------------------------------------------------- validation

ValidationReport validate(const LineBundleComplex& c) {
    const int nvars = c.num_variables();
    for (const auto& [i, m] : c.differentials()) {
        if (auto r = check_map(m, c.term(i + 1), c.term(i), nvars, "d", i); !r) return r;
    }
    for (const auto& [i, m] : c.differentials()) {
        auto next = c.differentials().find(i + 1);
        if (next == c.differentials().end()) continue;
        PolyMatrix sq = next->second * m;
        if (auto e = first_nonzero(sq)) {
            return violation("d^" + std::to_string(i + 1) + " * d^" + std::to_string(i) + " has nonzero entry (" +
                                 std::to_string(e->first) + "," + std::to_string(e->second) +
                                 ") = " + sq(e->first, e->second).to_string(),
                             i, e);
        }
    }
    return {};
}

ValidationReport validate(const ChainMap& f) {
    if (auto r = validate(f.source()); !r) return violation("source: " + r.message, r.degree, r.entry);
    if (auto r = validate(f.target()); !r) return violation("target: " + r.message, r.degree, r.entry);
    const int nvars = f.source().num_variables();
    for (const auto& [i, m] : f.components()) {
        if (auto r = check_map(m, f.target().term(i), f.source().term(i), nvars, "f", i); !r) return r;
    }
    std::set<int> ds = degrees_of(f.source());
    for (int i : degrees_of(f.target())) ds.insert(i);
    for (int i : ds) {
        PolyMatrix lhs = f.component(i + 1) * f.source().differential(i);
        PolyMatrix rhs = f.target().differential(i) * f.component(i);
        PolyMatrix diff = lhs - rhs;
        if (auto e = first_nonzero(diff)) {
            return violation("chain-map square at degree " + std::to_string(i) + " fails at entry (" +
                                 std::to_string(e->first) + "," + std::to_string(e->second) + ")",
                             i, e);
        }
    }
    return {};
}

void require_valid(const LineBundleComplex& c, const std::string& what) {
    if (auto r = validate(c); !r) throw ValidationError(what + ": " + r.message);
}

void require_valid(const ChainMap& f, const std::string& what) {
    if (auto r = validate(f); !r) throw ValidationError(what + ": " + r.message);
}

// ---------------------------------------------------------------- operations

LineBundleComplex shift(const LineBundleComplex& c, int k) {
    std::map<int, FreeTerm> terms;
    std::map<int, PolyMatrix> diffs;
    for (const auto& [i, t] : c.terms()) terms.emplace(i - k, t);
    const Scalar s(sign_power(k));
    for (const auto& [i, m] : c.differentials()) diffs.emplace(i - k, m * s);
    return LineBundleComplex(c.ambient_dim(), std::move(terms), std::move(diffs));
}

LineBundleComplex cone(const ChainMap& f) {
    require_valid(f, "cone");
    const auto& a = f.source();
    const auto& b = f.target();
    const int nvars = a.num_variables();
    std::set<int> ds;
    for (int i : degrees_of(a)) ds.insert(i - 1);
    for (int i : degrees_of(b)) ds.insert(i);

    std::map<int, FreeTerm> terms;
    for (int i : ds) terms[i] = concat(a.term(i + 1), b.term(i));
    std::map<int, PolyMatrix> diffs;
    for (int i : ds) {
        const FreeTerm& a1 = a.term(i + 1);
        const FreeTerm& a2 = a.term(i + 2);
        const FreeTerm& b0 = b.term(i);
        const FreeTerm& b1 = b.term(i + 1);
        PolyMatrix d(nvars, a2.size() + b1.size(), a1.size() + b0.size());
        place(d, a.differential(i + 1), 0, 0, -1);
        place(d, f.component(i + 1), a2.size(), 0);
        place(d, b.differential(i), a2.size(), a1.size());
        diffs.emplace(i, std::move(d));
    }
    return LineBundleComplex(a.ambient_dim(), std::move(terms), std::move(diffs));
}

LineBundleComplex direct_sum(const LineBundleComplex& a, const LineBundleComplex& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw ValidationError("direct sum of complexes on different spaces");
    const int nvars = a.num_variables();
    std::set<int> ds = degrees_of(a);
    for (int i : degrees_of(b)) ds.insert(i);
    std::map<int, FreeTerm> terms;
    std::map<int, PolyMatrix> diffs;
    for (int i : ds) terms[i] = concat(a.term(i), b.term(i));
    for (int i : ds) {
        PolyMatrix d(nvars, a.term(i + 1).size() + b.term(i + 1).size(), a.term(i).size() + b.term(i).size());
        place(d, a.differential(i), 0, 0);
        place(d, b.differential(i), a.term(i + 1).size(), a.term(i).size());
        diffs.emplace(i, std::move(d));
    }
    return LineBundleComplex(a.ambient_dim(), std::move(terms), std::move(diffs));
}

LineBundleComplex tensor(const LineBundleComplex& a, const LineBundleComplex& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw ValidationError("tensor of complexes on different spaces");
    const int nvars = a.num_variables();

    // offsets[k][i] = position of block A^i (x) B^{k-i} inside total term k
    std::map<int, std::map<int, std::size_t>> offsets;
    std::map<int, FreeTerm> terms;
    for (const auto& [i, ta] : a.terms()) {
        for (const auto& [j, tb] : b.terms()) {
            FreeTerm& t = terms[i + j];
            offsets[i + j][i] = t.size();
            for (int da : ta) {
                for (int db : tb) t.push_back(da + db);
            }
        }
    }

    std::map<int, PolyMatrix> diffs;
    for (const auto& [k, t] : terms) {
        auto next = terms.find(k + 1);
        if (next == terms.end()) continue;
        PolyMatrix d(nvars, next->second.size(), t.size());
        for (const auto& [i, off] : offsets[k]) {
            const int j = k - i;
            const FreeTerm& ai = a.term(i);
            const FreeTerm& bj = b.term(j);
            // d_A (x) id into block (i+1, j)
            if (auto it = offsets[k + 1].find(i + 1); it != offsets[k + 1].end()) {
                PolyMatrix da = a.differential(i);
                for (std::size_t ra = 0; ra < da.rows(); ++ra) {
                    for (std::size_t ca = 0; ca < da.cols(); ++ca) {
                        if (da(ra, ca).is_zero()) continue;
                        for (std::size_t ib = 0; ib < bj.size(); ++ib) {
                            d(it->second + ra * bj.size() + ib, off + ca * bj.size() + ib) = da(ra, ca);
                        }
                    }
                }
            }
            // (-1)^i id (x) d_B into block (i, j+1)
            if (auto it = offsets[k + 1].find(i); it != offsets[k + 1].end()) {
                PolyMatrix db = b.differential(j);
                const std::size_t bj1 = b.term(j + 1).size();
                const Scalar s(sign_power(i));
                for (std::size_t ia = 0; ia < ai.size(); ++ia) {
                    for (std::size_t rb = 0; rb < db.rows(); ++rb) {
                        for (std::size_t cb = 0; cb < db.cols(); ++cb) {
                            if (db(rb, cb).is_zero()) continue;
                            d(it->second + ia * bj1 + rb, off + ia * bj.size() + cb) = db(rb, cb) * s;
                        }
                    }
                }
            }
        }
        diffs.emplace(k, std::move(d));
    }
    return LineBundleComplex(a.ambient_dim(), std::move(terms), std::move(diffs));
}

LineBundleComplex dual(const LineBundleComplex& c) {
    std::map<int, FreeTerm> terms;
    for (const auto& [i, t] : c.terms()) {
        FreeTerm neg(t.size());
        std::transform(t.begin(), t.end(), neg.begin(), [](int d) { return -d; });
        terms.emplace(-i, std::move(neg));
    }
    std::map<int, PolyMatrix> diffs;
    for (const auto& [i, m] : c.differentials()) diffs.emplace(-i - 1, m.transpose());
    return LineBundleComplex(c.ambient_dim(), std::move(terms), std::move(diffs));
}

LineBundleComplex twist(const LineBundleComplex& c, int d) {
    std::map<int, FreeTerm> terms;
    for (const auto& [i, t] : c.terms()) {
        FreeTerm s(t.size());
        std::transform(t.begin(), t.end(), s.begin(), [d](int x) { return x + d; });
        terms.emplace(i, std::move(s));
    }
    return LineBundleComplex(c.ambient_dim(), std::move(terms), c.differentials());
}

LineBundleComplex prune(const LineBundleComplex& c) {
    std::map<int, FreeTerm> terms = c.terms();
    std::map<int, PolyMatrix> diffs;
    for (const auto& [i, t] : terms) {
        if (terms.count(i + 1)) diffs.emplace(i, c.differential(i));
    }

    auto find_unit = [&](const PolyMatrix& d, const FreeTerm& tgt, const FreeTerm& src)
        -> std::optional<std::pair<std::size_t, std::size_t>> {
        for (std::size_t r = 0; r < d.rows(); ++r) {
            for (std::size_t col = 0; col < d.cols(); ++col) {
                if (tgt[r] == src[col] && !d(r, col).is_zero()) return std::pair{r, col};
            }
        }
        return std::nullopt;
    };

    for (auto it = diffs.begin(); it != diffs.end();) {
        const int i = it->first;
        FreeTerm& src = terms[i];
        FreeTerm& tgt = terms[i + 1];
        auto pivot = find_unit(it->second, tgt, src);
        if (!pivot) {
            ++it;
            continue;
        }
        const auto [r, col] = *pivot;
        const PolyMatrix& d = it->second;
        const Scalar inv = d(r, col).constant_value().inverse();

        std::vector<std::size_t> beta_rows, gamma_cols;
        for (std::size_t rr = 0; rr < d.rows(); ++rr) {
            if (rr != r && !d(rr, col).is_zero()) beta_rows.push_back(rr);
        }
        for (std::size_t cc = 0; cc < d.cols(); ++cc) {
            if (cc != col && !d(r, cc).is_zero()) gamma_cols.push_back(cc);
        }
        PolyMatrix updated = d;
        for (auto rr : beta_rows) {
            HomogPoly beta = d(rr, col) * inv;
            for (auto cc : gamma_cols) updated(rr, cc) -= beta * d(r, cc);
        }
        it->second = updated.without({r}, {col});

        if (auto prev = diffs.find(i - 1); prev != diffs.end()) prev->second = prev->second.without({col}, {});
        if (auto next = diffs.find(i + 1); next != diffs.end()) next->second = next->second.without({}, {r});
        src.erase(src.begin() + static_cast<std::ptrdiff_t>(col));
        tgt.erase(tgt.begin() + static_cast<std::ptrdiff_t>(r));

        // the previous degree only lost a row, which cannot create a new unit,
        // so rescanning from the current degree suffices
    }
    return LineBundleComplex(c.ambient_dim(), std::move(terms), std::move(diffs));
}

}  // namespace dercat

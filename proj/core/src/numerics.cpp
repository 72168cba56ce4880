#include "dercat/numerics.hpp"

#include "dercat/errors.hpp"
#include "dercat/ext.hpp"

#include <sstream>
#include <stdexcept>

namespace dercat {

namespace {

Scalar factorial_inverse(int k) {
    mpq_class f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return Scalar(1 / f);
}

}  // namespace

// --------------------------------------------------------- ChernPolynomial

ChernPolynomial::ChernPolynomial(int n) : n_(n) {
    if (n < 0) throw std::invalid_argument("ChernPolynomial: negative dimension");
    FieldScope q(Field::rationals());
    coeffs_.assign(static_cast<std::size_t>(n + 1), Scalar(0));
}

ChernPolynomial::ChernPolynomial(int n, std::vector<Scalar> coeffs) : ChernPolynomial(n) {
    if (coeffs.size() > coeffs_.size()) {
        throw std::invalid_argument("ChernPolynomial: more than n+1 coefficients");
    }
    for (std::size_t k = 0; k < coeffs.size(); ++k) coeffs_[k] = std::move(coeffs[k]);
}

ChernPolynomial ChernPolynomial::one(int n) {
    ChernPolynomial p(n);
    p.coeffs_[0] = Scalar(1);
    return p;
}

ChernPolynomial ChernPolynomial::exponential(int n, int d) {
    FieldScope q(Field::rationals());
    ChernPolynomial p(n);
    Scalar power(1);
    for (int k = 0; k <= n; ++k) {
        p.coeffs_[static_cast<std::size_t>(k)] = power * factorial_inverse(k);
        power *= Scalar(d);
    }
    return p;
}

ChernPolynomial ChernPolynomial::dual() const {
    FieldScope q(Field::rationals());
    ChernPolynomial p = *this;
    for (std::size_t k = 1; k < p.coeffs_.size(); k += 2) p.coeffs_[k] = -p.coeffs_[k];
    return p;
}

void ChernPolynomial::check_same(const ChernPolynomial& o) const {
    if (o.n_ != n_) {
        throw ValidationError("Chern classes on P^" + std::to_string(n_) + " and P^" + std::to_string(o.n_));
    }
}

ChernPolynomial& ChernPolynomial::operator+=(const ChernPolynomial& o) {
    check_same(o);
    FieldScope q(Field::rationals());
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    return *this;
}

ChernPolynomial& ChernPolynomial::operator-=(const ChernPolynomial& o) {
    check_same(o);
    FieldScope q(Field::rationals());
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    return *this;
}

ChernPolynomial operator*(const ChernPolynomial& a, const ChernPolynomial& b) {
    a.check_same(b);
    FieldScope q(Field::rationals());
    ChernPolynomial p(a.n_);
    for (int i = 0; i <= a.n_; ++i) {
        for (int j = 0; i + j <= a.n_; ++j) {
            p.coeffs_[static_cast<std::size_t>(i + j)] +=
                a.coeffs_[static_cast<std::size_t>(i)] * b.coeffs_[static_cast<std::size_t>(j)];
        }
    }
    return p;
}

ChernPolynomial operator*(const Scalar& s, ChernPolynomial a) {
    FieldScope q(Field::rationals());
    for (auto& c : a.coeffs_) c *= s;
    return a;
}

std::string ChernPolynomial::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (int k = 0; k <= n_; ++k) {
        const Scalar& c = coeffs_[static_cast<std::size_t>(k)];
        if (c.is_zero()) continue;
        const bool negative = c.sign() < 0;
        const Scalar mag = negative ? -c : c;
        if (first) {
            if (negative) os << '-';
        } else {
            os << (negative ? " - " : " + ");
        }
        first = false;
        if (k == 0) {
            os << mag.to_string();
            continue;
        }
        if (!mag.is_one()) os << mag.to_string() << '*';
        os << 'h';
        if (k > 1) os << '^' << k;
    }
    return first ? "0" : os.str();
}

// ------------------------------------------------------------ HRR pieces

ChernPolynomial chern_character(const LineBundleComplex& c) {
    FieldScope q(Field::rationals());
    ChernPolynomial ch(c.ambient_dim());
    for (const auto& [i, term] : c.terms()) {
        for (int d : term) {
            if (i % 2 == 0) {
                ch += ChernPolynomial::exponential(c.ambient_dim(), d);
            } else {
                ch -= ChernPolynomial::exponential(c.ambient_dim(), d);
            }
        }
    }
    return ch;
}

ChernPolynomial todd_class(int n) {
    if (n < 1) throw std::invalid_argument("todd_class: need n >= 1");
    FieldScope q(Field::rationals());
    // (1 - e^{-h}) / h = sum_k (-1)^k h^k / (k+1)!
    std::vector<Scalar> f;
    for (int k = 0; k <= n; ++k) f.push_back(Scalar(k % 2 == 0 ? 1 : -1) * factorial_inverse(k + 1));
    // power-series inverse g with f g = 1
    std::vector<Scalar> g(f.size(), Scalar(0));
    g[0] = Scalar(1);
    for (std::size_t k = 1; k < g.size(); ++k) {
        Scalar acc(0);
        for (std::size_t j = 1; j <= k; ++j) acc += f[j] * g[k - j];
        g[k] = -acc;
    }
    const ChernPolynomial base(n, g);
    ChernPolynomial td = ChernPolynomial::one(n);
    for (int i = 0; i <= n; ++i) td = td * base;
    return td;
}

Scalar mukai_pairing(const ChernPolynomial& v, const ChernPolynomial& w) {
    FieldScope q(Field::rationals());
    return (v.dual() * w * todd_class(v.dim()))[v.dim()];
}

Scalar euler_pairing_hrr(const LineBundleComplex& a, const LineBundleComplex& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw ValidationError("ambient dimension mismatch");
    FieldScope q(Field::rationals());
    Scalar chi = mukai_pairing(chern_character(a), chern_character(b));
    if (!chi.is_integer()) throw InternalError("HRR pairing is not an integer: " + chi.to_string());
    return chi;
}

Scalar euler_pairing_ext(const LineBundleComplex& a, const LineBundleComplex& b, const WindowOptions& opts) {
    const long chi = ext_table(a, b, opts).euler_characteristic();
    FieldScope q(Field::rationals());
    return Scalar(chi);
}

ChernPolynomial beilinson_k_class(const BeilinsonTable& table) {
    FieldScope q(Field::rationals());
    ChernPolynomial out(table.n);
    for (int i = 0; i < static_cast<int>(table.multiplicities.size()); ++i) {
        for (const auto& [k, m] : table.multiplicities[static_cast<std::size_t>(i)]) {
            const long sign = (i + k) % 2 == 0 ? 1 : -1;
            out += Scalar(sign * static_cast<long>(m)) * ChernPolynomial::exponential(table.n, -i);
        }
    }
    return out;
}

// -------------------------------------------------------------- Hochschild

HodgeTable::HodgeTable(std::vector<std::vector<long>> grid) : grid_(std::move(grid)) {
    if (grid_.empty()) throw ValidationError("Hodge table is empty");
    for (const auto& row : grid_) {
        if (row.size() != grid_.size()) throw ValidationError("Hodge table is not square");
        for (long v : row) {
            if (v < 0) throw ValidationError("Hodge table has a negative entry");
        }
    }
}

HodgeTable HodgeTable::projective_space(int n) {
    std::vector<std::vector<long>> g(static_cast<std::size_t>(n + 1), std::vector<long>(static_cast<std::size_t>(n + 1), 0));
    for (std::size_t p = 0; p < g.size(); ++p) g[p][p] = 1;
    return HodgeTable(std::move(g));
}

HodgeTable HodgeTable::curve(int genus) {
    if (genus < 0) throw std::invalid_argument("negative genus");
    return HodgeTable({{1, genus}, {genus, 1}});
}

std::map<int, long> hkr_aggregate(const HodgeTable& table, HkrMode mode) {
    const int d = table.dim();
    std::map<int, long> out;
    if (mode == HkrMode::homology) {
        for (int i = -d; i <= d; ++i) out[i] = 0;
    } else {
        for (int i = 0; i <= 2 * d; ++i) out[i] = 0;
    }
    for (int p = 0; p <= d; ++p) {
        for (int q = 0; q <= d; ++q) out[mode == HkrMode::homology ? q - p : p + q] += table(p, q);
    }
    return out;
}

HochschildTables hh_pn(int n, int max_n, const WindowOptions& opts) {
    if (n < 1) throw std::invalid_argument("hh_pn: need n >= 1");
    if (n > max_n) {
        throw ResourceError("hh_pn: n = " + std::to_string(n) + " exceeds the cap " + std::to_string(max_n));
    }
    const auto idx = [](int v) { return static_cast<std::size_t>(v); };
    std::vector<std::vector<long>> poly(idx(n + 1), std::vector<long>(idx(n + 1), 0));
    std::vector<std::vector<long>> forms = poly;
    for (int q = 0; q <= n; ++q) {
        // L^q T = Omega^{n-q}(n-q) (x) O(q+1)
        const ExtTable t = sheaf_cohomology(twist(omega_resolution(n, n - q), q + 1), opts);
        // Omega^q = Omega^q(q) (x) O(-q)
        const ExtTable o = sheaf_cohomology(twist(omega_resolution(n, q), -q), opts);
        for (int p = 0; p <= n; ++p) {
            poly[idx(p)][idx(q)] = static_cast<long>(t[p]);
            forms[idx(p)][idx(q)] = static_cast<long>(o[p]);
        }
    }
    return {hkr_aggregate(HodgeTable(poly), HkrMode::cohomology), hkr_aggregate(HodgeTable(forms), HkrMode::homology)};
}

HochschildTables hh_curve(int genus) {
    if (genus < 0) throw std::invalid_argument("hh_curve: negative genus");
    const long g = genus;
    long h0t = 0;
    long h1t = 0;
    if (g == 0) {
        h0t = 3;
    } else if (g == 1) {
        h0t = 1;
        h1t = 1;
    } else {
        h1t = 3 * g - 3;
    }
    HochschildTables out;
    out.cohomology = {{0, 1}, {1, g + h0t}, {2, h1t}};
    out.homology = {{-1, g}, {0, 2}, {1, g}};
    return out;
}

// ---------------------------------------------------------------- lattices

LatticeClass fm_elliptic_apply(const LatticeClass& v) { return {v.degree, -v.rank}; }

long elliptic_euler_form(const LatticeClass& v, const LatticeClass& w) {
    return v.rank * w.degree - v.degree * w.rank;
}

CorrespondenceClass::CorrespondenceClass(int m, int n) : m_(m), n_(n) {
    if (m < 0 || n < 0) throw std::invalid_argument("CorrespondenceClass: negative dimension");
    FieldScope q(Field::rationals());
    grid_.assign(static_cast<std::size_t>(m + 1), std::vector<Scalar>(static_cast<std::size_t>(n + 1), Scalar(0)));
}

CorrespondenceClass::CorrespondenceClass(int m, int n, std::vector<std::vector<Scalar>> grid)
    : m_(m), n_(n), grid_(std::move(grid)) {
    if (grid_.size() != static_cast<std::size_t>(m + 1)) {
        throw ValidationError("correspondence grid needs " + std::to_string(m + 1) + " rows");
    }
    for (const auto& row : grid_) {
        if (row.size() != static_cast<std::size_t>(n + 1)) {
            throw ValidationError("correspondence grid rows need " + std::to_string(n + 1) + " entries");
        }
    }
}

CorrespondenceClass CorrespondenceClass::diagonal(int n) {
    CorrespondenceClass k(n, n);
    for (int i = 0; i <= n; ++i) k(i, n - i) = Scalar(1);
    return k;
}

const Scalar& CorrespondenceClass::operator()(int i, int j) const {
    return grid_.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(j));
}

Scalar& CorrespondenceClass::operator()(int i, int j) {
    return grid_.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(j));
}

ChernPolynomial corr_apply(const CorrespondenceClass& k, const ChernPolynomial& a) {
    if (a.dim() != k.source_dim()) {
        throw ValidationError("corr_apply: class on P^" + std::to_string(a.dim()) + " but kernel starts on P^" +
                              std::to_string(k.source_dim()));
    }
    FieldScope q(Field::rationals());
    const int m = k.source_dim();
    std::vector<Scalar> out(static_cast<std::size_t>(k.target_dim() + 1), Scalar(0));
    for (int j = 0; j <= k.target_dim(); ++j) {
        for (int i = 0; i <= m; ++i) out[static_cast<std::size_t>(j)] += a[m - i] * k(i, j);
    }
    return ChernPolynomial(k.target_dim(), std::move(out));
}

CorrespondenceClass corr_compose(const CorrespondenceClass& k1, const CorrespondenceClass& k2) {
    if (k1.target_dim() != k2.source_dim()) {
        throw ValidationError("corr_compose: middle factors P^" + std::to_string(k1.target_dim()) + " and P^" +
                              std::to_string(k2.source_dim()) + " differ");
    }
    FieldScope q(Field::rationals());
    const int b = k1.target_dim();
    CorrespondenceClass out(k1.source_dim(), k2.target_dim());
    for (int i = 0; i <= k1.source_dim(); ++i) {
        for (int l = 0; l <= k2.target_dim(); ++l) {
            for (int j = 0; j <= b; ++j) out(i, l) += k1(i, j) * k2(b - j, l);
        }
    }
    return out;
}

}  // namespace dercat

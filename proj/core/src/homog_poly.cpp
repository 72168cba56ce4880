#include "dercat/homog_poly.hpp"

#include "dercat/errors.hpp"
#include "dercat/exact_matrix.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <sstream>

namespace dercat {

Monomial Monomial::variable(int i) {
    Monomial m;
    m.set(i, 1);
    return m;
}

void Monomial::set(int i, int e) {
    if (i < 0 || i >= kMaxVariables) throw std::out_of_range("variable index out of range");
    if (e < 0 || e > 255) throw std::out_of_range("exponent out of range");
    exps_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(e);
}

int Monomial::total_degree() const {
    int d = 0;
    for (auto e : exps_) d += e;
    return d;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r;
    for (std::size_t i = 0; i < exps_.size(); ++i) {
        int e = exps_[i] + o.exps_[i];
        if (e > 255) throw std::out_of_range("exponent overflow");
        r.exps_[i] = static_cast<std::uint8_t>(e);
    }
    return r;
}

bool Monomial::divisible_by(const Monomial& o) const {
    for (std::size_t i = 0; i < exps_.size(); ++i) {
        if (exps_[i] < o.exps_[i]) return false;
    }
    return true;
}

Monomial Monomial::divided_by(const Monomial& o) const {
    if (!divisible_by(o)) throw std::domain_error("monomial not divisible");
    Monomial r;
    for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] = static_cast<std::uint8_t>(exps_[i] - o.exps_[i]);
    return r;
}

std::size_t Monomial::hash() const {
    std::size_t h = 1469598103934665603ULL;
    for (auto e : exps_) {
        h ^= e;
        h *= 1099511628211ULL;
    }
    return h;
}

std::size_t MonomialHash::operator()(const Monomial& m) const { return m.hash(); }

std::string Monomial::to_string(int nvars) const {
    std::string out;
    for (int i = 0; i < nvars; ++i) {
        int e = (*this)[i];
        if (e == 0) continue;
        if (!out.empty()) out += '*';
        out += 'x' + std::to_string(i);
        if (e > 1) out += '^' + std::to_string(e);
    }
    return out;
}

bool GrevlexBefore::operator()(const Monomial& a, const Monomial& b) const {
    const int da = a.total_degree();
    const int db = b.total_degree();
    if (da != db) return da > db;
    for (int i = kMaxVariables - 1; i >= 0; --i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

namespace {

void enumerate(int nvars, int var, int remaining, Monomial& cur, std::vector<Monomial>& out) {
    if (var == nvars - 1) {
        cur.set(var, remaining);
        out.push_back(cur);
        cur.set(var, 0);
        return;
    }
    for (int e = remaining; e >= 0; --e) {
        cur.set(var, e);
        enumerate(nvars, var + 1, remaining - e, cur, out);
    }
    cur.set(var, 0);
}

}  // namespace

std::vector<Monomial> monomial_basis(int n, int d) {
    if (n < 0) throw std::invalid_argument("monomial_basis: n must be >= 0");
    if (n + 1 > kMaxVariables) throw std::invalid_argument("too many variables");
    std::vector<Monomial> out;
    if (d < 0) return out;
    Monomial cur;
    enumerate(n + 1, 0, d, cur, out);
    std::sort(out.begin(), out.end(), GrevlexBefore{});
    return out;
}

MonomialBasis::MonomialBasis(int nvars, int degree)
    : nvars_(nvars), degree_(degree), monomials_(monomial_basis(nvars - 1, degree)) {
    index_.reserve(monomials_.size());
    for (std::size_t i = 0; i < monomials_.size(); ++i) index_.emplace(monomials_[i], i);
}

std::shared_ptr<const MonomialBasis> MonomialBasis::get(int nvars, int degree) {
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::shared_ptr<const MonomialBasis>> cache;
    if (degree < 0) degree = -1;  // all negative degrees share the empty basis
    std::lock_guard lock(mutex);
    auto& slot = cache[{nvars, degree}];
    if (!slot) slot = std::make_shared<const MonomialBasis>(nvars, degree);
    return slot;
}

std::size_t MonomialBasis::index_of(const Monomial& m) const {
    auto it = index_.find(m);
    if (it == index_.end()) throw InternalError("monomial " + m.to_string(nvars_) + " not in basis");
    return it->second;
}

HomogPoly::HomogPoly(int nvars, int degree) : nvars_(nvars), degree_(degree) {
    if (nvars < 1 || nvars > kMaxVariables) throw std::invalid_argument("unsupported number of variables");
}

HomogPoly HomogPoly::constant(int nvars, const Scalar& c) { return term(nvars, Monomial{}, c); }

HomogPoly HomogPoly::variable(int nvars, int i) {
    if (i < 0 || i >= nvars) throw std::out_of_range("variable index out of range");
    return term(nvars, Monomial::variable(i), Scalar(1));
}

HomogPoly HomogPoly::term(int nvars, const Monomial& m, const Scalar& c) {
    HomogPoly p(nvars, m.total_degree());
    if (!c.is_zero()) p.terms_.emplace_back(m, c);
    return p;
}

HomogPoly HomogPoly::from_coefficients(int nvars, int degree, std::span<const Scalar> coeffs) {
    HomogPoly p(nvars, degree);
    auto basis = MonomialBasis::get(nvars, degree);
    if (coeffs.size() != basis->size()) throw InternalError("coefficient vector has wrong length");
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (!coeffs[i].is_zero()) p.terms_.emplace_back((*basis)[i], coeffs[i]);
    }
    return p;
}

Scalar HomogPoly::coefficient(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Monomial& key) { return GrevlexBefore{}(t.first, key); });
    if (it != terms_.end() && it->first == m) return it->second;
    return Scalar(0);
}

Scalar HomogPoly::constant_value() const {
    if (degree_ != 0 || terms_.empty()) return Scalar(0);
    return terms_.front().second;
}

std::vector<Scalar> HomogPoly::coefficients() const {
    auto basis = MonomialBasis::get(nvars_, degree_);
    std::vector<Scalar> out(basis->size());
    for (const auto& [m, c] : terms_) out[basis->index_of(m)] = c;
    return out;
}

void HomogPoly::add_scaled(const HomogPoly& o, const Scalar& c) {
    if (o.is_zero() || c.is_zero()) return;
    if (o.nvars_ != nvars_) throw InternalError("polynomials in different rings");
    if (is_zero()) {
        degree_ = o.degree_;
    } else if (o.degree_ != degree_) {
        throw InternalError("adding polynomials of degrees " + std::to_string(degree_) + " and " +
                            std::to_string(o.degree_));
    }
    std::vector<Term> merged;
    merged.reserve(terms_.size() + o.terms_.size());
    GrevlexBefore before;
    auto a = terms_.begin();
    auto b = o.terms_.begin();
    while (a != terms_.end() || b != o.terms_.end()) {
        if (b == o.terms_.end() || (a != terms_.end() && before(a->first, b->first))) {
            merged.push_back(std::move(*a++));
        } else if (a == terms_.end() || before(b->first, a->first)) {
            merged.emplace_back(b->first, b->second * c);
            ++b;
        } else {
            Scalar s = a->second + b->second * c;
            if (!s.is_zero()) merged.emplace_back(a->first, std::move(s));
            ++a;
            ++b;
        }
    }
    terms_ = std::move(merged);
}

HomogPoly& HomogPoly::operator+=(const HomogPoly& o) {
    add_scaled(o, Scalar(1));
    return *this;
}

HomogPoly& HomogPoly::operator-=(const HomogPoly& o) {
    add_scaled(o, Scalar(-1));
    return *this;
}

HomogPoly& HomogPoly::operator*=(const Scalar& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.second *= c;
    return *this;
}

HomogPoly HomogPoly::operator-() const { return *this * Scalar(-1); }

HomogPoly operator*(const HomogPoly& a, const HomogPoly& b) {
    if (a.nvars_ != b.nvars_) throw InternalError("polynomials in different rings");
    HomogPoly r(a.nvars_, a.degree_ + b.degree_);
    if (a.is_zero() || b.is_zero()) return r;
    if (a.terms_.size() == 1 || b.terms_.size() == 1) {
        const HomogPoly& single = a.terms_.size() == 1 ? a : b;
        const HomogPoly& other = a.terms_.size() == 1 ? b : a;
        const auto& [m, c] = single.terms_.front();
        r.terms_.reserve(other.terms_.size());
        // multiplication by a monomial preserves grevlex order
        for (const auto& [om, oc] : other.terms_) r.terms_.emplace_back(om * m, oc * c);
        return r;
    }
    std::map<Monomial, Scalar, GrevlexBefore> acc;
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) acc[ma * mb] += ca * cb;
    }
    for (auto& [m, c] : acc) {
        if (!c.is_zero()) r.terms_.emplace_back(m, std::move(c));
    }
    return r;
}

Scalar HomogPoly::evaluate(std::span<const Scalar> point) const {
    if (point.size() != static_cast<std::size_t>(nvars_)) throw std::invalid_argument("point has wrong dimension");
    Scalar total(0);
    for (const auto& [m, c] : terms_) {
        Scalar v = c;
        for (int i = 0; i < nvars_; ++i) {
            for (int e = 0; e < m[i]; ++e) v *= point[static_cast<std::size_t>(i)];
        }
        total += v;
    }
    return total;
}

bool operator==(const HomogPoly& a, const HomogPoly& b) {
    if (a.is_zero() && b.is_zero()) return a.nvars_ == b.nvars_;
    return a.nvars_ == b.nvars_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
}

std::string HomogPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        std::string mono = m.to_string(nvars_);
        bool negative = c.sign() < 0;
        Scalar mag = negative ? -c : c;
        if (first) {
            if (negative) out += '-';
        } else {
            out += negative ? " - " : " + ";
        }
        first = false;
        if (mono.empty()) {
            out += mag.to_string();
        } else if (mag.is_one()) {
            out += mono;
        } else {
            out += mag.to_string() + '*' + mono;
        }
    }
    return out;
}

namespace {

class PolyParser {
public:
    PolyParser(std::string_view text, int nvars) : text_(text), nvars_(nvars) {}

    std::vector<std::pair<Monomial, Scalar>> parse_terms() {
        std::vector<std::pair<Monomial, Scalar>> terms;
        skip_ws();
        if (at_end()) fail("empty polynomial");
        bool negative = false;
        if (peek() == '+' || peek() == '-') {
            negative = get() == '-';
        }
        while (true) {
            auto [m, c] = parse_term();
            terms.emplace_back(m, negative ? -c : c);
            skip_ws();
            if (at_end()) break;
            char op = get();
            if (op != '+' && op != '-') fail(std::string("unexpected '") + op + "'");
            negative = op == '-';
        }
        return terms;
    }

private:
    std::pair<Monomial, Scalar> parse_term() {
        Monomial m;
        Scalar c(1);
        while (true) {
            skip_ws();
            if (at_end()) fail("expected a factor");
            char ch = peek();
            if (std::isdigit(static_cast<unsigned char>(ch))) {
                c *= parse_number();
            } else if (ch == 'x') {
                get();
                int var = static_cast<int>(parse_uint("variable index"));
                if (var >= nvars_) fail("variable x" + std::to_string(var) + " out of range (ring has x0..x" +
                                        std::to_string(nvars_ - 1) + ")");
                long exp = 1;
                skip_ws();
                if (!at_end() && peek() == '^') {
                    get();
                    skip_ws();
                    exp = parse_uint("exponent");
                }
                if (m[var] + exp > 255) fail("exponent too large");
                m.set(var, m[var] + static_cast<int>(exp));
            } else {
                fail(std::string("unexpected '") + ch + "'");
            }
            skip_ws();
            if (!at_end() && peek() == '*') {
                get();
                continue;
            }
            return {m, c};
        }
    }

    Scalar parse_number() {
        std::size_t start = pos_;
        parse_uint("number");
        skip_ws();
        if (!at_end() && peek() == '/') {
            get();
            skip_ws();
            parse_uint("denominator");
        }
        try {
            return Scalar::parse(text_.substr(start, pos_ - start));
        } catch (const ParseError& e) {
            fail(e.what());
        }
    }

    long parse_uint(const char* what) {
        std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (start == pos_) fail(std::string("expected ") + what);
        if (pos_ - start > 9) fail(std::string(what) + " too large");
        return std::stol(std::string(text_.substr(start, pos_ - start)));
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("polynomial '" + std::string(text_) + "' at column " + std::to_string(pos_ + 1) + ": " + msg);
    }

    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    char get() { return text_[pos_++]; }

    std::string_view text_;
    int nvars_;
    std::size_t pos_ = 0;
};

}  // namespace

HomogPoly HomogPoly::parse(std::string_view text, int nvars, std::optional<int> degree) {
    auto terms = PolyParser(text, nvars).parse_terms();
    std::optional<int> found;
    HomogPoly acc(nvars, degree.value_or(0));
    for (const auto& [m, c] : terms) {
        if (c.is_zero()) continue;
        int d = m.total_degree();
        if (found && *found != d) {
            throw ParseError("polynomial '" + std::string(text) + "' is not homogeneous");
        }
        found = d;
        acc += term(nvars, m, c);
    }
    if (degree && found && *found != *degree) {
        throw ParseError("polynomial '" + std::string(text) + "' has degree " + std::to_string(*found) +
                         ", expected " + std::to_string(*degree));
    }
    if (acc.is_zero()) return HomogPoly(nvars, degree.value_or(found.value_or(0)));
    return acc;
}

ExactMatrix multiplication_matrix(const HomogPoly& f, int d) {
    const int nvars = f.num_variables();
    auto src = MonomialBasis::get(nvars, d);
    auto dst = MonomialBasis::get(nvars, d + f.degree());
    ExactMatrix m(dst->size(), src->size());
    for (std::size_t c = 0; c < src->size(); ++c) {
        for (const auto& [mono, coeff] : f.terms()) {
            m(dst->index_of((*src)[c] * mono), c) += coeff;
        }
    }
    return m;
}

}  // namespace dercat

#include "dercat/scalar.hpp"

#include "dercat/errors.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace dercat {

namespace {

thread_local Field g_active_field = Field::rationals();

bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint64_t q = 2; q * q <= p; ++q) {
        if (p % q == 0) return false;
    }
    return true;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool is_integer_literal(std::string_view s) {
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

mpz_class parse_integer(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    return mpz_class(std::string(s), 10);
}

}  // namespace

Field Field::prime(std::uint64_t p) {
    if (p >= (std::uint64_t{1} << 31) || !is_prime(p)) {
        throw std::invalid_argument("field modulus " + std::to_string(p) + " is not a prime below 2^31");
    }
    return Field(p);
}

Field Field::parse(std::string_view text) {
    text = trim(text);
    if (text == "q" || text == "Q") return rationals();
    if (text.substr(0, 3) == "fp:") {
        auto digits = text.substr(3);
        if (!is_integer_literal(digits) || digits.front() == '-') {
            throw ParseError("invalid field '" + std::string(text) + "'");
        }
        try {
            return prime(std::stoull(std::string(digits)));
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what());
        } catch (const std::out_of_range&) {
            throw ParseError("field modulus out of range");
        }
    }
    throw ParseError("invalid field '" + std::string(text) + "', expected q or fp:<prime>");
}

std::string Field::name() const {
    return is_prime_field() ? "fp:" + std::to_string(modulus_) : "q";
}

Field active_field() { return g_active_field; }

FieldScope::FieldScope(Field field) : previous_(g_active_field) { g_active_field = field; }

FieldScope::~FieldScope() { g_active_field = previous_; }

Scalar::Scalar(long value) : value_(value) { reduce(); }

Scalar::Scalar(long num, long den) {
    if (den == 0) throw std::domain_error("zero denominator");
    value_ = mpq_class(num, den);
    value_.canonicalize();
    reduce();
}

Scalar::Scalar(mpq_class value) : value_(std::move(value)) {
    value_.canonicalize();
    reduce();
}

Scalar Scalar::parse(std::string_view text) {
    auto s = trim(text);
    auto slash = s.find('/');
    auto num_text = trim(s.substr(0, slash));
    if (!is_integer_literal(num_text)) {
        throw ParseError("invalid number '" + std::string(text) + "'");
    }
    mpz_class num = parse_integer(num_text);
    mpz_class den = 1;
    if (slash != std::string_view::npos) {
        auto den_text = trim(s.substr(slash + 1));
        if (!is_integer_literal(den_text) || den_text.front() == '-' || den_text.front() == '+') {
            throw ParseError("invalid denominator in '" + std::string(text) + "'");
        }
        den = parse_integer(den_text);
        if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    }
    return Scalar(mpq_class(num, den));
}

void Scalar::reduce() {
    const Field f = g_active_field;
    if (!f.is_prime_field()) return;
    if (value_.get_den() == 1 && value_.get_num() >= 0 && value_.get_num() < f.modulus()) return;
    mpz_class p(static_cast<unsigned long>(f.modulus()));
    mpz_class num = value_.get_num() % p;
    if (num < 0) num += p;
    mpz_class den = value_.get_den() % p;
    if (den == 0) {
        throw std::domain_error("denominator divisible by the field characteristic " + f.name());
    }
    if (den != 1) {
        mpz_class inv;
        mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
        num = (num * inv) % p;
    }
    value_ = mpq_class(num);
}

long Scalar::to_long() const {
    if (!is_integer() || !value_.get_num().fits_slong_p()) {
        throw InternalError("scalar " + to_string() + " is not a machine integer");
    }
    return value_.get_num().get_si();
}

std::string Scalar::to_string() const { return value_.get_str(); }

Scalar Scalar::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    Scalar r;
    r.value_ = 1 / value_;
    r.reduce();
    return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    value_ += o.value_;
    reduce();
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    value_ -= o.value_;
    reduce();
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    value_ *= o.value_;
    reduce();
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    value_ /= o.value_;
    reduce();
    return *this;
}

Scalar Scalar::operator-() const {
    Scalar r;
    r.value_ = -value_;
    r.reduce();
    return r;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

long binomial(long n, long k) {
    if (n < 0 || k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    long r = 1;
    for (long i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

}  // namespace dercat
